#include "charsum/engines.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fft.hpp"

namespace charsum {

namespace {

using cd = std::complex<double>;

void require_exact_capacity(std::uint64_t m) {
    if (m > kMaxExactOrder)
        throw Error(ErrorKind::CapacityExceeded,
                    "exact mode needs root order <= " + std::to_string(kMaxExactOrder) + ", got " +
                        std::to_string(m));
}

void require_nonprincipal(const Character& chi) {
    if (chi.is_principal()) throw Error(ErrorKind::PrincipalCharacter, "character must be non-principal");
}

void require_unit_shift(const FieldCtx& ctx, Residue a) {
    if (a % ctx.p == 0) throw Error(ErrorKind::ShiftNotCoprime, "shift must be coprime to p");
}

void require_residues(const FieldCtx& ctx, std::span<const Residue> d) {
    for (Residue x : d)
        if (x >= ctx.p) throw Error(ErrorKind::InvalidArgument, "residue " + std::to_string(x) + " not in [0, p)");
}

void require_weights(const FieldCtx& ctx, const Weights& w) {
    if (w.size() != ctx.p)
        throw Error(ErrorKind::InvalidArgument, "weights must have exactly p entries");
}

Residue reduce(const FieldCtx& ctx, std::uint64_t x) { return static_cast<Residue>(x % ctx.p); }

}  // namespace

// ---------------------------------------------------------------- Weights

void Weights::finish() {
    energy_ = 0.0;
    for (const cd& v : values_) energy_ += std::norm(v);
}

Weights Weights::numeric(std::vector<cd> values) {
    Weights w;
    w.values_ = std::move(values);
    w.finish();
    return w;
}

Weights Weights::exact(std::uint32_t p, std::vector<std::pair<Residue, CycInt>> entries) {
    Weights w;
    w.kind_ = Kind::exact;
    w.values_.assign(p, cd{});
    std::sort(entries.begin(), entries.end(), [](const auto& l, const auto& r) { return l.first < r.first; });
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const auto& [x, v] = entries[i];
        if (x >= p) throw Error(ErrorKind::InvalidArgument, "weight residue out of range");
        if (i > 0 && entries[i - 1].first == x) throw Error(ErrorKind::InvalidArgument, "duplicate weight residue");
        if (v.order() != p - 1) throw Error(ErrorKind::MixedOrder, "exact weights must live in Z[zeta_{p-1}]");
        w.values_[x] = v.to_complex();
        if (!v.is_trivially_zero()) w.exact_.emplace_back(x, v.terms());
    }
    w.finish();
    return w;
}

Weights Weights::indicator(std::uint32_t p, std::span<const Residue> support) {
    Weights w;
    w.kind_ = Kind::integral;
    w.values_.assign(p, cd{});
    for (Residue x : support) {
        if (x >= p) throw Error(ErrorKind::InvalidArgument, "support residue out of range");
        w.values_[x] = 1.0;
    }
    w.finish();
    return w;
}

Weights Weights::zero(std::uint32_t p) {
    Weights w;
    w.kind_ = Kind::integral;
    w.values_.assign(p, cd{});
    return w;
}

std::vector<Weights::Entry> Weights::exact_terms() const {
    switch (kind_) {
        case Kind::exact: return exact_;
        case Kind::integral: {
            std::vector<Entry> out;
            for (Residue x = 0; x < values_.size(); ++x)
                if (values_[x] != cd{})
                    out.push_back({x, {{0, mpz_class(static_cast<long>(std::lround(values_[x].real())))}}});
            return out;
        }
        case Kind::numeric: break;
    }
    throw Error(ErrorKind::InvalidArgument, "numeric weights have no exact representation");
}

std::vector<std::pair<Residue, CycInt>> Weights::exact_entries() const {
    const auto m = static_cast<std::uint32_t>(values_.size() - 1);
    require_exact_capacity(m);
    std::vector<std::pair<Residue, CycInt>> out;
    for (const auto& [x, terms] : exact_terms()) {
        CycInt v(m);
        for (const auto& [e, c] : terms) v.add_root(e, c);
        out.emplace_back(x, std::move(v));
    }
    return out;
}

Weights Weights::scaled(cd c) const {
    std::vector<cd> v = values_;
    for (cd& x : v) x *= c;
    return numeric(std::move(v));
}

Weights Weights::twisted(const Character& chi) const {
    const auto p = static_cast<std::uint32_t>(values_.size());
    if (p != chi.ctx().p) throw Error(ErrorKind::InvalidArgument, "weights and character disagree on p");
    if (is_exact() && p - 1 <= kMaxExactOrder) {
        const std::uint32_t m = p - 1;
        Weights w;
        w.kind_ = Kind::exact;
        w.values_.assign(p, cd{});
        for (auto& [x, terms] : exact_terms()) {
            const auto e = chi.exponent(x);
            if (!e) continue;
            for (auto& t : terms) t.first = (t.first + *e) % m;
            w.values_[x] = values_[x] * chi.value(x);
            w.exact_.emplace_back(x, std::move(terms));
        }
        w.finish();
        return w;
    }
    std::vector<cd> v(p);
    for (Residue x = 1; x < p; ++x) v[x] = values_[x] * chi.value(x);
    return numeric(std::move(v));
}

// ---------------------------------------------------------------- shifted sums

SumValue shifted_sum(const FieldCtx& ctx, const Character& chi, std::span<const Residue> d, Residue a, Mode mode) {
    require_residues(ctx, d);
    a = reduce(ctx, a);
    if (mode == Mode::exact) {
        require_exact_capacity(ctx.group_order());
        CycInt acc(ctx.group_order());
        for (Residue x : d)
            if (auto e = chi.exponent(ctx.add(x, a))) acc.add_root(*e);
        return SumValue::from_exact(std::move(acc));
    }
    cd acc{};
    for (Residue x : d) acc += chi.value(ctx.add(x, a));
    return SumValue::from_numeric(acc);
}

std::vector<cd> shifted_sum_all_numeric(const FieldCtx& ctx, const Character& chi, std::span<const Residue> d) {
    require_residues(ctx, d);
    std::vector<cd> indicator(ctx.p);
    for (Residue x : d) indicator[x] += 1.0;
    const auto table = chi.value_table();
    return detail::cyclic_correlate(indicator, table);
}

std::vector<SumValue> shifted_sum_all(const FieldCtx& ctx, const Character& chi, std::span<const Residue> d,
                                      Mode mode) {
    std::vector<SumValue> out;
    out.reserve(ctx.p);
    if (mode == Mode::exact) {
        require_exact_capacity(ctx.group_order());
        for (Residue a = 0; a < ctx.p; ++a) out.push_back(shifted_sum(ctx, chi, d, a, Mode::exact));
        return out;
    }
    for (const cd& v : shifted_sum_all_numeric(ctx, chi, d)) out.push_back(SumValue::from_numeric(v));
    return out;
}

// ---------------------------------------------------------------- bilinear forms

namespace {

SumValue bilinear_numeric(const FieldCtx& ctx, const Character& chi, const Weights& xi, const Weights& eta,
                          Residue a) {
    const std::uint32_t n = ctx.group_order();
    const auto& u = xi.values();
    const auto& v = eta.values();

    cd sum_u{}, sum_v{};
    for (Residue x = 0; x < ctx.p; ++x) {
        sum_u += u[x];
        sum_v += v[x];
    }
    const cd boundary = chi.value(a) * (u[0] * sum_v + v[0] * sum_u - u[0] * v[0]);

    std::vector<cd> lu(n), lv(n);
    for (std::uint32_t s = 0; s < n; ++s) {
        lu[s] = u[ctx.exp[s]];
        lv[s] = v[ctx.exp[s]];
    }
    const auto c = detail::cyclic_convolve(lu, lv);
    cd acc = boundary;
    for (std::uint32_t s = 0; s < n; ++s) acc += c[s] * chi.value(ctx.add(ctx.exp[s], a));
    return SumValue::from_numeric(acc);
}

SumValue bilinear_exact(const FieldCtx& ctx, const Character& chi, const Weights& xi, const Weights& eta,
                        Residue a) {
    const std::uint32_t n = ctx.group_order();
    require_exact_capacity(n);
    if (!xi.is_exact() || !eta.is_exact())
        throw Error(ErrorKind::InvalidArgument, "exact mode requires exact weights");
    const auto u = xi.exact_terms();
    const auto v = eta.exact_terms();

    CycInt sum_u(n), sum_v(n), u0(n), v0(n);
    for (const auto& [x, terms] : u)
        for (const auto& [e, c] : terms) {
            sum_u.add_root(e, c);
            if (x == 0) u0.add_root(e, c);
        }
    for (const auto& [y, terms] : v)
        for (const auto& [e, c] : terms) {
            sum_v.add_root(e, c);
            if (y == 0) v0.add_root(e, c);
        }
    CycInt boundary = u0 * sum_v + v0 * sum_u - u0 * v0;
    CycInt acc = boundary.rotated(*chi.exponent(a));

    // pairs grouped by s = dlog(xy); chi(xy + a) depends only on s
    std::vector<std::optional<std::uint32_t>> fold(n);
    for (std::uint32_t s = 0; s < n; ++s) fold[s] = chi.exponent(ctx.add(ctx.exp[s], a));
    for (const auto& [x, tx] : u) {
        if (x == 0) continue;
        const std::uint32_t lx = ctx.dlog[x];
        for (const auto& [y, ty] : v) {
            if (y == 0) continue;
            const std::uint32_t ly = ctx.dlog[y];
            const std::uint32_t s = lx + ly < n ? lx + ly : lx + ly - n;
            if (fold[s]) acc.add_product(tx, ty, *fold[s]);
        }
    }
    return SumValue::from_exact(std::move(acc));
}

}  // namespace

SumValue bilinear_S(const FieldCtx& ctx, const Character& chi, const Weights& xi, const Weights& eta, Residue a,
                    Mode mode) {
    require_nonprincipal(chi);
    require_unit_shift(ctx, a);
    require_weights(ctx, xi);
    require_weights(ctx, eta);
    a = reduce(ctx, a);
    return mode == Mode::exact ? bilinear_exact(ctx, chi, xi, eta, a) : bilinear_numeric(ctx, chi, xi, eta, a);
}

SumValue bilinear_Sprime(const FieldCtx& ctx, const Character& chi, const Weights& xi, const Weights& eta,
                         Residue a, Mode mode) {
    require_nonprincipal(chi);
    require_unit_shift(ctx, a);
    require_weights(ctx, xi);
    require_weights(ctx, eta);
    return bilinear_S(ctx, chi, xi.twisted(chi), eta.twisted(chi), a, mode);
}

SumValue proof_kernel_S_yy1(const FieldCtx& ctx, const Character& chi, Residue y, Residue y1, Residue a,
                            Mode mode) {
    require_nonprincipal(chi);
    require_unit_shift(ctx, a);
    y = reduce(ctx, y);
    y1 = reduce(ctx, y1);
    a = reduce(ctx, a);
    const std::uint32_t n = ctx.group_order();
    if (mode == Mode::exact) {
        require_exact_capacity(n);
        CycInt acc(n);
        for (Residue x = 0; x < ctx.p; ++x) {
            auto e = chi.exponent(ctx.add(ctx.mul(x, y), a));
            auto f = chi.exponent(ctx.add(ctx.mul(x, y1), a));
            if (e && f) acc.add_root(*e + n - *f);
        }
        return SumValue::from_exact(std::move(acc));
    }
    cd acc{};
    for (Residue x = 0; x < ctx.p; ++x)
        acc += chi.value(ctx.add(ctx.mul(x, y), a)) * std::conj(chi.value(ctx.add(ctx.mul(x, y1), a)));
    return SumValue::from_numeric(acc);
}

// ---------------------------------------------------------------- sums over H

namespace {

template <typename Arg>
SumValue sum_over(const FieldCtx& ctx, const Character& chi, const Subgroup& h, Mode mode, Arg arg) {
    if (mode == Mode::exact) {
        require_exact_capacity(ctx.group_order());
        CycInt acc(ctx.group_order());
        for (Residue x : h.elements)
            if (auto e = chi.exponent(arg(x))) acc.add_root(*e);
        return SumValue::from_exact(std::move(acc));
    }
    cd acc{};
    for (Residue x : h.elements) acc += chi.value(arg(x));
    return SumValue::from_numeric(acc);
}

}  // namespace

SumValue nonlinear_sum_xxa(const FieldCtx& ctx, const Character& chi, const Subgroup& h, Residue a, Mode mode) {
    require_nonprincipal(chi);
    require_unit_shift(ctx, a);
    a = reduce(ctx, a);
    return sum_over(ctx, chi, h, mode, [&](Residue x) { return ctx.mul(x, ctx.add(x, a)); });
}

SumValue shifted_product_sum(const FieldCtx& ctx, const Character& chi, const Subgroup& h, Residue a, Residue b,
                             Mode mode) {
    a = reduce(ctx, a);
    b = reduce(ctx, b);
    if (a == 0 || b == 0 || a == b)
        throw Error(ErrorKind::DegenerateShifts, "need ab(a-b) != 0 mod p");
    return sum_over(ctx, chi, h, mode, [&](Residue x) { return ctx.mul(ctx.add(x, a), ctx.add(x, b)); });
}

SumValue kloosterman_over_H(const FieldCtx& ctx, const Subgroup& h, Residue k, Residue l) {
    k = reduce(ctx, k);
    l = reduce(ctx, l);
    if (k == 0 || l == 0) throw Error(ErrorKind::InvalidArgument, "k and l must be nonzero mod p");
    cd acc{};
    for (Residue x : h.elements) acc += unit_root(ctx.p, ctx.add(ctx.mul(k, x), ctx.mul(l, mod_inverse(ctx, x))));
    return SumValue::from_numeric(acc);
}

SumValue inverse_shift_sum(const FieldCtx& ctx, const Subgroup& h, Residue k, Residue a) {
    k = reduce(ctx, k);
    a = reduce(ctx, a);
    if (k == 0 || a == 0) throw Error(ErrorKind::InvalidArgument, "k and a must be nonzero mod p");
    cd acc{};
    for (Residue x : h.elements) {
        const Residue z = ctx.add(x, a);
        if (z == 0) continue;
        acc += unit_root(ctx.p, ctx.mul(k, mod_inverse(ctx, z)));
    }
    return SumValue::from_numeric(acc);
}

SumValue exp_sum_subset(std::uint32_t q, std::span<const std::uint32_t> d, std::uint64_t a, Mode mode) {
    if (q < 2) throw Error(ErrorKind::InvalidArgument, "modulus must be at least 2");
    for (std::uint32_t x : d)
        if (x >= q) throw Error(ErrorKind::InvalidArgument, "element " + std::to_string(x) + " not in [0, q)");
    a %= q;
    if (mode == Mode::exact) {
        require_exact_capacity(q);
        CycInt acc(q);
        for (std::uint32_t x : d) acc.add_root(a * x % q);
        return SumValue::from_exact(std::move(acc));
    }
    cd acc{};
    for (std::uint32_t x : d) acc += unit_root(q, a * x % q);
    return SumValue::from_numeric(acc);
}

}  // namespace charsum
