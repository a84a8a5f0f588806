#include "charsum/field.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace charsum {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::NotOddPrime: return "NotOddPrime";
        case ErrorKind::CapacityExceeded: return "CapacityExceeded";
        case ErrorKind::ZeroInverse: return "ZeroInverse";
        case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
        case ErrorKind::MixedOrder: return "MixedOrder";
        case ErrorKind::PrincipalCharacter: return "PrincipalCharacter";
        case ErrorKind::ShiftNotCoprime: return "ShiftNotCoprime";
        case ErrorKind::DegenerateShifts: return "DegenerateShifts";
        case ErrorKind::ZeroInD: return "ZeroInD";
        case ErrorKind::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t e, std::uint64_t mod) noexcept {
    unsigned __int128 result = 1 % mod;
    unsigned __int128 b = base % mod;
    while (e != 0) {
        if (e & 1) result = result * b % mod;
        b = b * b % mod;
        e >>= 1;
    }
    return static_cast<std::uint64_t>(result);
}

bool is_prime(std::uint64_t n) noexcept {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::uint64_t d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n) {
    std::vector<std::pair<std::uint64_t, unsigned>> out;
    for (std::uint64_t d = 2; d * d <= n; d += (d == 2 ? 1 : 2)) {
        if (n % d != 0) continue;
        unsigned e = 0;
        while (n % d == 0) {
            n /= d;
            ++e;
        }
        out.emplace_back(d, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

FieldCtx make_ctx(std::uint64_t p) {
    if (p < 3 || !is_prime(p))
        throw Error(ErrorKind::NotOddPrime, std::to_string(p) + " is not an odd prime");
    if (p > kMaxFieldPrime)
        throw Error(ErrorKind::CapacityExceeded,
                    "p = " + std::to_string(p) + " exceeds table limit " +
                        std::to_string(kMaxFieldPrime));

    FieldCtx ctx;
    ctx.p = static_cast<std::uint32_t>(p);
    const std::uint64_t n = p - 1;

    for (auto [q, e] : factorize(n))
        ctx.factorization.emplace_back(static_cast<std::uint32_t>(q), e);

    // smallest g with g^((p-1)/q) != 1 for every prime q | p-1
    for (std::uint64_t g = 2; g < p; ++g) {
        const bool primitive = std::all_of(
            ctx.factorization.begin(), ctx.factorization.end(),
            [&](const auto& f) { return pow_mod(g, n / f.first, p) != 1; });
        if (primitive) {
            ctx.g = static_cast<std::uint32_t>(g);
            break;
        }
    }

    ctx.exp.resize(n);
    ctx.dlog.assign(p, kNoLog);
    std::uint64_t x = 1;
    for (std::uint64_t t = 0; t < n; ++t) {
        ctx.exp[t] = static_cast<Residue>(x);
        ctx.dlog[x] = static_cast<std::uint32_t>(t);
        x = x * ctx.g % p;
    }

    std::vector<std::uint32_t> divs{1};
    for (auto [q, e] : ctx.factorization) {
        const std::size_t base = divs.size();
        std::uint32_t qe = 1;
        for (unsigned i = 0; i < e; ++i) {
            qe *= q;
            for (std::size_t j = 0; j < base; ++j) divs.push_back(divs[j] * qe);
        }
    }
    std::sort(divs.begin(), divs.end());
    ctx.divisors = std::move(divs);
    return ctx;
}

Subgroup subgroup_of_order(const FieldCtx& ctx, std::uint32_t order) {
    const std::uint32_t n = ctx.group_order();
    if (order == 0 || n % order != 0)
        throw Error(ErrorKind::InvalidArgument,
                    std::to_string(order) + " does not divide p-1 = " + std::to_string(n));
    Subgroup h;
    h.p = ctx.p;
    h.order = order;
    h.index = n / order;
    h.generator = ctx.exp[h.index % n];
    h.elements.reserve(order);
    for (std::uint32_t i = 0; i < order; ++i)
        h.elements.push_back(ctx.exp[static_cast<std::uint64_t>(i) * h.index]);
    std::sort(h.elements.begin(), h.elements.end());
    return h;
}

std::vector<Subgroup> subgroups(const FieldCtx& ctx) {
    std::vector<Subgroup> out;
    out.reserve(ctx.divisors.size());
    for (std::uint32_t d : ctx.divisors) out.push_back(subgroup_of_order(ctx, d));
    return out;
}

Subgroup subgroup_near_sqrt(const FieldCtx& ctx) {
    const double root = std::sqrt(static_cast<double>(ctx.p));
    std::uint32_t best = ctx.divisors.front();
    for (std::uint32_t d : ctx.divisors) {
        const double gap = std::abs(d - root);
        const double best_gap = std::abs(best - root);
        if (gap < best_gap || (gap == best_gap && d > best)) best = d;
    }
    return subgroup_of_order(ctx, best);
}

Residue mod_inverse(const FieldCtx& ctx, Residue x) {
    if (x % ctx.p == 0) throw Error(ErrorKind::ZeroInverse, "0 has no inverse mod p");
    if (x >= ctx.p) throw Error(ErrorKind::InvalidArgument, "residue out of range");
    const std::uint32_t n = ctx.group_order();
    return ctx.exp[(n - ctx.dlog[x]) % n];
}

}  // namespace charsum
