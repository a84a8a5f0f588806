#include "charsum/verifier.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <numeric>
#include <thread>
#include <unordered_set>

#include "fft.hpp"

namespace charsum {

namespace {

using cd = std::complex<double>;

void require_nonprincipal(const Character& chi) {
    if (chi.is_principal()) throw Error(ErrorKind::PrincipalCharacter, "character must be non-principal");
}

Param param(std::string key, std::int64_t v) { return {std::move(key), v}; }
Param param(std::string key, double v) { return {std::move(key), v}; }
Param param(std::string key, std::string v) { return {std::move(key), std::move(v)}; }

std::vector<Param> base_params(const FieldCtx& ctx, const Character* chi, const Subgroup* h) {
    std::vector<Param> out{param("p", std::int64_t{ctx.p})};
    if (chi != nullptr) out.push_back(param("chi", std::int64_t{chi->index()}));
    if (h != nullptr) out.push_back(param("H", std::int64_t{h->order}));
    return out;
}

Verdict make_verdict(std::string claim, std::vector<Param> params, Mode mode) {
    Verdict v;
    v.claim = std::move(claim);
    v.params = std::move(params);
    v.mode = mode;
    return v;
}

double to_double(const Quantity& q) {
    if (const auto* z = std::get_if<mpz_class>(&q)) return z->get_d();
    if (const auto* d = std::get_if<double>(&q)) return *d;
    return 0.0;
}

// S(a) for every a in [0, p). Exact mode builds each value in Z[zeta_{p-1}]
// and maps it to C; numeric mode uses the correlation kernel.
std::vector<cd> shift_values(const FieldCtx& ctx, const Character& chi, std::span<const Residue> d, Mode mode) {
    if (mode == Mode::numeric) return shifted_sum_all_numeric(ctx, chi, d);
    std::vector<cd> out(ctx.p);
    for (Residue a = 0; a < ctx.p; ++a) out[a] = shifted_sum(ctx, chi, d, a, Mode::exact).numeric;
    return out;
}

struct MaxShift {
    double value = 0.0;
    Residue arg = 1;
};

MaxShift max_nonzero_shift(const std::vector<cd>& values, bool squared) {
    MaxShift best;
    for (Residue a = 1; a < values.size(); ++a) {
        const double v = squared ? std::norm(values[a]) : std::abs(values[a]);
        if (v > best.value) best = {v, a};
    }
    return best;
}

// sum_{e} c_e zeta^e * conj(sum_{f} c_f zeta^f) accumulated into acc[e - f].
// For exponent counts from a sum over a set D, every pair product is at most
// |D|^2, so p |D|^2 < 2^63 holds across the whole exact capacity.
void accumulate_norm(std::vector<std::int64_t>& acc, const std::vector<std::pair<std::uint32_t, std::int64_t>>& terms) {
    const auto m = static_cast<std::uint32_t>(acc.size());
    for (const auto& [e, ce] : terms)
        for (const auto& [f, cf] : terms) acc[e >= f ? e - f : e + m - f] += ce * cf;
}

CycInt to_cycint(const std::vector<std::int64_t>& coeffs) {
    std::vector<mpz_class> c(coeffs.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = static_cast<long>(coeffs[i]);
    return CycInt(static_cast<std::uint32_t>(coeffs.size()), std::move(c));
}

void finish_identity(Verdict& v, const std::optional<mpz_class>& computed, const mpz_class& target) {
    v.target = target;
    if (!computed) {
        v.computed = std::monostate{};
        v.pass = false;
        v.note = "sum did not reduce to a rational integer";
    } else {
        v.computed = *computed;
        v.margin = mpz_class(target - *computed).get_d();
        v.pass = *computed == target;
    }
    v.status = v.pass ? Status::pass : Status::fail;
}

void finish_numeric_identity(Verdict& v, double computed, double target, double tol) {
    v.computed = computed;
    v.target = target;
    v.margin = target - computed;
    v.pass = std::abs(v.margin) <= tol;
    v.status = v.pass ? Status::pass : Status::fail;
}

void finish_upper_bound(Verdict& v, double computed, double target, bool strict, double tol) {
    v.computed = computed;
    v.target = target;
    v.margin = target - computed;
    v.pass = strict ? computed < target - tol : computed <= target + tol;
    v.status = v.pass ? Status::pass : Status::fail;
}

}  // namespace

std::string_view to_string(Status s) noexcept {
    switch (s) {
        case Status::pass: return "pass";
        case Status::fail: return "fail";
        case Status::vacuous_pass: return "vacuous_pass";
        case Status::capacity_exceeded: return "capacity_exceeded";
    }
    return "fail";
}

std::string quantity_string(const Quantity& q) {
    if (const auto* z = std::get_if<mpz_class>(&q)) return z->get_str();
    if (const auto* d = std::get_if<double>(&q)) {
        char buf[64];
        auto res = std::to_chars(buf, buf + sizeof buf, *d);
        return std::string(buf, res.ptr);
    }
    return "";
}

// ---------------------------------------------------------------- shifted subgroup sums

Verdict check_theorem2(const FieldCtx& ctx, const Character& chi, const Subgroup& h, Mode mode) {
    require_nonprincipal(chi);
    Verdict v = make_verdict("thm2", base_params(ctx, &chi, &h), mode);
    const auto best = max_nonzero_shift(shift_values(ctx, chi, h.elements, mode), false);
    v.params.push_back(param("argmax_a", std::int64_t{best.arg}));
    finish_upper_bound(v, best.value, std::sqrt(static_cast<double>(ctx.p)), true, kInequalityTolerance);
    return v;
}

Verdict check_sharpened_theorem2(const FieldCtx& ctx, const Character& chi, const Subgroup& h, Mode mode) {
    require_nonprincipal(chi);
    Verdict v = make_verdict("thm2_sharp", base_params(ctx, &chi, &h), mode);

    double inner_norm;
    if (mode == Mode::exact) {
        const CycInt inner = *shifted_sum(ctx, chi, h.elements, 0, Mode::exact).exact;
        const auto n = as_integer(abs_squared(inner));
        inner_norm = n ? n->get_d() : std::norm(inner.to_complex());
    } else {
        inner_norm = std::norm(shifted_sum(ctx, chi, h.elements, 0, Mode::numeric).numeric);
    }
    const double order = h.order;
    const double target = (static_cast<double>(ctx.p) * order - inner_norm) / order;
    const auto best = max_nonzero_shift(shift_values(ctx, chi, h.elements, mode), true);
    v.params.push_back(param("argmax_a", std::int64_t{best.arg}));
    finish_upper_bound(v, best.value, target, false, kInequalityTolerance * std::max(1.0, target));
    return v;
}

Verdict check_eps_corollary(const FieldCtx& ctx, const Character& chi, const Subgroup& h, double eps, Mode mode) {
    require_nonprincipal(chi);
    Verdict v = make_verdict("eps_corollary", base_params(ctx, &chi, &h), mode);
    v.params.push_back(param("eps", eps));
    const double p = ctx.p;
    const double target = std::pow(p, -eps) * h.order;
    if (!(h.order > std::pow(p, 0.5 + eps))) {
        v.target = target;
        v.pass = true;
        v.status = Status::vacuous_pass;
        v.note = "|H| <= p^(1/2+eps)";
        return v;
    }
    const auto best = max_nonzero_shift(shift_values(ctx, chi, h.elements, mode), false);
    v.params.push_back(param("argmax_a", std::int64_t{best.arg}));
    finish_upper_bound(v, best.value, target, true, kInequalityTolerance);
    return v;
}

// ---------------------------------------------------------------- mean values

Verdict check_eq2_identity(const FieldCtx& ctx, const Character& chi, std::span<const Residue> d, Mode mode) {
    require_nonprincipal(chi);
    if (d.empty()) throw Error(ErrorKind::InvalidArgument, "D must be nonempty");
    for (Residue x : d) {
        if (x % ctx.p == 0) throw Error(ErrorKind::ZeroInD, "D must avoid 0");
        if (x >= ctx.p) throw Error(ErrorKind::InvalidArgument, "D element out of range");
    }
    Verdict v = make_verdict("eq2", base_params(ctx, &chi, nullptr), mode);
    v.params.push_back(param("D_size", static_cast<std::int64_t>(d.size())));

    const std::int64_t size = static_cast<std::int64_t>(d.size());
    const mpz_class target = mpz_class(static_cast<long>(ctx.p)) * size - mpz_class(size) * size;

    if (mode == Mode::numeric) {
        double total = 0.0;
        for (const cd& s : shifted_sum_all_numeric(ctx, chi, d)) total += std::norm(s);
        finish_numeric_identity(v, total, target.get_d(), 1e-9 * ctx.p * static_cast<double>(size));
        return v;
    }

    const std::uint32_t m = ctx.group_order();
    if (m > kMaxExactOrder) throw Error(ErrorKind::CapacityExceeded, "exact mode requires p-1 <= 10^4");
    std::vector<std::int64_t> acc(m, 0);
    std::vector<std::int64_t> counts(m, 0);
    std::vector<std::pair<std::uint32_t, std::int64_t>> terms;
    for (Residue a = 0; a < ctx.p; ++a) {
        terms.clear();
        for (Residue x : d)
            if (auto e = chi.exponent(ctx.add(x, a))) ++counts[*e];
        for (std::uint32_t e = 0; e < m; ++e)
            if (counts[e] != 0) {
                terms.emplace_back(e, counts[e]);
                counts[e] = 0;
            }
        accumulate_norm(acc, terms);
    }
    finish_identity(v, as_integer(to_cycint(acc)), target);
    return v;
}

Verdict check_meanvalue2(const FieldCtx& ctx, const Subgroup& h, Residue a, Mode mode) {
    a %= ctx.p;
    if (a == 0) throw Error(ErrorKind::ShiftNotCoprime, "the character average needs a != 0");
    Verdict v = make_verdict("meanvalue2", base_params(ctx, nullptr, &h), mode);
    v.params.push_back(param("a", std::int64_t{a}));

    // inner_j = sum_t c[t] zeta^{j t}, c[t] = #{n in H : dlog(n + a) = t}
    const std::uint32_t m = ctx.group_order();
    std::vector<std::uint32_t> logs;
    for (Residue n : h.elements) {
        const Residue z = ctx.add(n, a);
        if (z != 0) logs.push_back(ctx.dlog[z]);
    }
    double total = 0.0;
    if (mode == Mode::exact) {
        if (m > kMaxExactOrder) throw Error(ErrorKind::CapacityExceeded, "exact mode requires p-1 <= 10^4");
        for (std::uint32_t j = 0; j < m; ++j) {
            CycInt inner(m);
            for (std::uint32_t t : logs) inner.add_root(std::uint64_t{j} * t);
            total += std::abs(inner.to_complex());
        }
    } else {
        std::vector<cd> c(m);
        for (std::uint32_t t : logs) c[t] += 1.0;
        for (const cd& inner : detail::dft(c, +1)) total += std::abs(inner);
    }
    finish_upper_bound(v, total / m, std::sqrt(static_cast<double>(h.order)), false, kInequalityTolerance);
    return v;
}

namespace {

struct GranvilleTally {
    bool structural = true;
    std::uint32_t trivial_count = 0;
    Quantity total;
    std::string note;
};

GranvilleTally granville_tally(const FieldCtx& ctx, const Subgroup& h, Mode mode) {
    const std::uint32_t m = ctx.group_order();
    GranvilleTally t;
    if (mode == Mode::exact) {
        if (m > kMaxExactOrder) throw Error(ErrorKind::CapacityExceeded, "exact mode requires p-1 <= 10^4");
        mpz_class total = 0;
        for (const Character& chi : all_characters(ctx)) {
            CycInt inner(m);
            for (Residue n : h.elements) inner.add_root(*chi.exponent(n));
            const bool trivial_on_h = chi.index() % h.order == 0;
            const std::uint32_t expect = trivial_on_h ? h.order : 0;
            if (inner == CycInt::integer(m, expect)) {
                total += expect;
                t.trivial_count += trivial_on_h;
            } else if (t.structural) {
                t.structural = false;
                t.note = "inner sum for chi " + std::to_string(chi.index()) + " is not " + std::to_string(expect);
            }
        }
        t.total = total;
        return t;
    }
    std::vector<cd> c(m);
    for (Residue n : h.elements) c[ctx.dlog[n]] += 1.0;
    const auto inner = detail::dft(c, +1);
    double total = 0.0;
    for (std::uint32_t j = 0; j < m; ++j) {
        const bool trivial_on_h = j % h.order == 0;
        const double expect = trivial_on_h ? h.order : 0.0;
        if (std::abs(inner[j] - expect) <= 1e-9 * h.order) {
            t.trivial_count += trivial_on_h;
        } else if (t.structural) {
            t.structural = false;
            t.note = "inner sum for chi " + std::to_string(j) + " deviates";
        }
        total += std::abs(inner[j]);
    }
    t.total = total;
    return t;
}

}  // namespace

Verdict check_granville(const FieldCtx& ctx, const Subgroup& h, Mode mode) {
    Verdict v = make_verdict("granville", base_params(ctx, nullptr, &h), mode);
    v.params.push_back(param("k", std::int64_t{h.index}));
    const auto t = granville_tally(ctx, h, mode);
    const std::int64_t target = ctx.p - 1;
    if (mode == Mode::exact) {
        std::optional<mpz_class> total;
        if (t.structural) total = std::get<mpz_class>(t.total);
        finish_identity(v, total, mpz_class(static_cast<long>(target)));
    } else {
        finish_numeric_identity(v, to_double(t.total), static_cast<double>(target), 1e-9 * ctx.p);
    }
    if (t.trivial_count != h.index) {
        v.pass = false;
        v.status = Status::fail;
        v.note = "expected " + std::to_string(h.index) + " characters trivial on H, found " +
                 std::to_string(t.trivial_count);
    }
    if (!t.structural) {
        v.pass = false;
        v.status = Status::fail;
        v.note = t.note;
    }
    return v;
}

Verdict check_shkredov_bound(const FieldCtx& ctx, const Subgroup& h, Mode mode) {
    Verdict v = make_verdict("shkredov", base_params(ctx, nullptr, &h), mode);
    const auto t = granville_tally(ctx, h, mode);
    const double target = ctx.p;
    finish_upper_bound(v, to_double(t.total), target, false, kInequalityTolerance);
    if (mode == Mode::exact) {
        v.computed = t.total;
        v.target = mpz_class(static_cast<long>(ctx.p));
        v.pass = t.structural && std::get<mpz_class>(t.total) <= ctx.p;
        v.status = v.pass ? Status::pass : Status::fail;
    }
    return v;
}

Verdict check_konyagin(std::uint32_t q, std::span<const std::uint32_t> d, Mode mode) {
    if (q < 2) throw Error(ErrorKind::InvalidArgument, "modulus must be at least 2");
    if (d.empty()) throw Error(ErrorKind::InvalidArgument, "D must be nonempty");
    Verdict v = make_verdict("konyagin", {param("q", std::int64_t{q})}, mode);
    v.params.push_back(param("D_size", static_cast<std::int64_t>(d.size())));
    const std::int64_t size = static_cast<std::int64_t>(d.size());
    const mpz_class target = mpz_class(size) * (static_cast<long>(q) - size);

    if (mode == Mode::numeric) {
        double total = 0.0;
        for (std::uint32_t a = 1; a < q; ++a) total += std::norm(exp_sum_subset(q, d, a, Mode::numeric).numeric);
        finish_numeric_identity(v, total, target.get_d(), 1e-9 * q * static_cast<double>(size));
        return v;
    }
    if (q > kMaxExactOrder) throw Error(ErrorKind::CapacityExceeded, "exact mode requires q <= 10^4");
    for (std::uint32_t x : d)
        if (x >= q) throw Error(ErrorKind::InvalidArgument, "D element out of range");
    std::vector<std::int64_t> acc(q, 0), counts(q, 0);
    std::vector<std::pair<std::uint32_t, std::int64_t>> terms;
    for (std::uint64_t a = 1; a < q; ++a) {
        terms.clear();
        for (std::uint32_t x : d) ++counts[a * x % q];
        for (std::uint32_t e = 0; e < q; ++e)
            if (counts[e] != 0) {
                terms.emplace_back(e, counts[e]);
                counts[e] = 0;
            }
        accumulate_norm(acc, terms);
    }
    finish_identity(v, as_integer(to_cycint(acc)), target);
    return v;
}

// ---------------------------------------------------------------- bilinear

Verdict check_lemma3(const FieldCtx& ctx, const Character& chi, const Weights& xi, const Weights& eta, Residue a,
                     Mode mode) {
    if (!xi.is_exact() || !eta.is_exact()) mode = Mode::numeric;
    Verdict v = make_verdict("lemma3", base_params(ctx, &chi, nullptr), mode);
    v.params.push_back(param("a", std::int64_t{a % ctx.p}));
    const double s = bilinear_S(ctx, chi, xi, eta, a, mode).abs();
    const double sp = bilinear_Sprime(ctx, chi, xi, eta, a, mode).abs();
    v.params.push_back(param("X", xi.energy()));
    v.params.push_back(param("Y", eta.energy()));
    const double bound = std::sqrt(static_cast<double>(ctx.p) * xi.energy() * eta.energy());
    finish_upper_bound(v, std::max(s, sp), bound, false, kInequalityTolerance);
    v.note = "|S|=" + quantity_string(s) + " |S'|=" + quantity_string(sp);
    return v;
}

Verdict check_lemma3_kernel(const FieldCtx& ctx, const Character& chi, Residue a) {
    require_nonprincipal(chi);
    Verdict v = make_verdict("lemma3_kernel", base_params(ctx, &chi, nullptr), Mode::exact);
    v.params.push_back(param("a", std::int64_t{a % ctx.p}));
    const std::uint32_t m = ctx.group_order();
    long mismatches = 0;
    for (Residue y = 0; y < ctx.p; ++y)
        for (Residue y1 = 0; y1 < ctx.p; ++y1) {
            CycInt expect(m);
            if (y == 0 && y1 == 0) expect.add_root(0, ctx.p);
            else if (y == 0 || y1 == 0) {
            } else if (y == y1) expect.add_root(0, m);
            else expect.add_root(*chi.exponent(ctx.mul(y, mod_inverse(ctx, y1))), -1);
            const auto got = proof_kernel_S_yy1(ctx, chi, y, y1, a, Mode::exact);
            if (!(*got.exact == expect)) {
                if (mismatches == 0) v.note = "first mismatch at y=" + std::to_string(y) + " y1=" + std::to_string(y1);
                ++mismatches;
            }
        }
    v.params.push_back(param("pairs", static_cast<std::int64_t>(ctx.p) * ctx.p));
    finish_identity(v, mpz_class(mismatches), mpz_class(0));
    return v;
}

// ---------------------------------------------------------------- nonlinear

Verdict check_nonlinear_bound(const FieldCtx& ctx, const Character& chi, const Subgroup& h, Residue a, Mode mode) {
    Verdict v = make_verdict("nonlinear", base_params(ctx, &chi, &h), mode);
    v.params.push_back(param("a", std::int64_t{a % ctx.p}));
    const double value = nonlinear_sum_xxa(ctx, chi, h, a, mode).abs();
    finish_upper_bound(v, value, std::sqrt(static_cast<double>(ctx.p)), false, kInequalityTolerance);
    return v;
}

Verdict check_nonlinear_bound_all(const FieldCtx& ctx, const Character& chi, const Subgroup& h, Mode mode) {
    require_nonprincipal(chi);
    Verdict v = make_verdict("nonlinear", base_params(ctx, &chi, &h), mode);
    MaxShift best;
    for (Residue a = 1; a < ctx.p; ++a) {
        const double value = nonlinear_sum_xxa(ctx, chi, h, a, mode).abs();
        if (value > best.value) best = {value, a};
    }
    v.params.push_back(param("argmax_a", std::int64_t{best.arg}));
    finish_upper_bound(v, best.value, std::sqrt(static_cast<double>(ctx.p)), false, kInequalityTolerance);
    return v;
}

namespace {

template <typename Lhs, typename Rhs>
Verdict identity_over_shifts(std::string claim, const FieldCtx& ctx, const Character& chi, const Subgroup& h,
                             Mode mode, Lhs lhs, Rhs rhs) {
    require_nonprincipal(chi);
    Verdict v = make_verdict(std::move(claim), base_params(ctx, &chi, &h), mode);
    long mismatches = 0;
    double worst = 0.0;
    for (Residue a = 1; a < ctx.p; ++a) {
        const SumValue l = lhs(a), r = rhs(a);
        bool ok;
        if (mode == Mode::exact) {
            ok = l.exact->scaled(h.order) == *r.exact;
        } else {
            const double gap = std::abs(l.numeric * static_cast<double>(h.order) - r.numeric);
            worst = std::max(worst, gap);
            ok = gap <= 1e-9 * ctx.p * h.order;
        }
        if (!ok) {
            if (mismatches == 0) v.note = "first mismatch at a=" + std::to_string(a);
            ++mismatches;
        }
    }
    v.params.push_back(param("shifts", std::int64_t{ctx.p - 1}));
    finish_identity(v, mpz_class(mismatches), mpz_class(0));
    if (mode == Mode::numeric) v.margin = -worst;
    return v;
}

}  // namespace

Verdict check_bilinear_identity(const FieldCtx& ctx, const Character& chi, const Subgroup& h, Mode mode) {
    const auto ind = Weights::indicator(ctx.p, h.elements);
    return identity_over_shifts(
        "bilinear_identity", ctx, chi, h, mode,
        [&](Residue a) { return shifted_sum(ctx, chi, h.elements, a, mode); },
        [&](Residue a) { return bilinear_S(ctx, chi, ind, ind, a, mode); });
}

Verdict check_nonlinear_identity(const FieldCtx& ctx, const Character& chi, const Subgroup& h, Mode mode) {
    const auto ind = Weights::indicator(ctx.p, h.elements);
    return identity_over_shifts(
        "nonlinear_identity", ctx, chi, h, mode, [&](Residue a) { return nonlinear_sum_xxa(ctx, chi, h, a, mode); },
        [&](Residue a) { return bilinear_Sprime(ctx, chi, ind, ind, a, mode); });
}

// ---------------------------------------------------------------- randomness

Rng::Rng(std::initializer_list<std::uint64_t> seeds) {
    std::vector<std::uint32_t> words;
    for (std::uint64_t s : seeds) {
        words.push_back(static_cast<std::uint32_t>(s));
        words.push_back(static_cast<std::uint32_t>(s >> 32));
    }
    std::seed_seq seq(words.begin(), words.end());
    engine_.seed(seq);
}

std::uint64_t Rng::below(std::uint64_t n) {
    if (n == 0) return 0;
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
    std::uint64_t x;
    do x = engine_();
    while (x >= limit);
    return x % n;
}

double Rng::unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

std::vector<std::uint64_t> Rng::sample(std::uint64_t lo, std::uint64_t hi, std::size_t k) {
    const std::uint64_t span = hi - lo + 1;
    if (k > span) throw Error(ErrorKind::InvalidArgument, "sample larger than range");
    std::vector<std::uint64_t> out;
    out.reserve(k);
    if (span <= 4'000'000) {
        std::vector<std::uint64_t> pool(span);
        std::iota(pool.begin(), pool.end(), lo);
        for (std::size_t i = 0; i < k; ++i) {
            std::swap(pool[i], pool[i + below(span - i)]);
            out.push_back(pool[i]);
        }
        return out;
    }
    std::unordered_set<std::uint64_t> seen;
    while (out.size() < k) {
        const std::uint64_t x = lo + below(span);
        if (seen.insert(x).second) out.push_back(x);
    }
    return out;
}

std::vector<Residue> random_subset(Rng& rng, std::uint32_t p, std::size_t size) {
    std::vector<Residue> out;
    for (std::uint64_t x : rng.sample(1, p - 1, size)) out.push_back(static_cast<Residue>(x));
    std::sort(out.begin(), out.end());
    return out;
}

Weights random_weights(Rng& rng, std::uint32_t p) {
    std::vector<cd> values(p);
    for (auto& v : values) {
        const double re = 2.0 * rng.unit() - 1.0;
        const double im = 2.0 * rng.unit() - 1.0;
        v = {re, im};
    }
    return Weights::numeric(std::move(values));
}

// ---------------------------------------------------------------- suite

Mode resolve_mode(ModeRequest req, std::uint64_t root_order) {
    switch (req) {
        case ModeRequest::exact: return Mode::exact;
        case ModeRequest::numeric: return Mode::numeric;
        case ModeRequest::automatic: break;
    }
    return root_order <= kMaxExactOrder ? Mode::exact : Mode::numeric;
}

const std::vector<std::string>& all_claims() {
    static const std::vector<std::string> claims{
        "thm2",       "thm2_sharp", "eps_corollary", "eq2",           "meanvalue2",        "granville",
        "shkredov",   "konyagin",   "lemma3",        "lemma3_kernel", "bilinear_identity", "nonlinear",
        "nonlinear_identity",
    };
    return claims;
}

namespace {

std::uint64_t claim_tag(const std::string& claim) {
    const auto& all = all_claims();
    return static_cast<std::uint64_t>(std::find(all.begin(), all.end(), claim) - all.begin());
}

Verdict capacity_verdict(const std::string& claim, std::uint64_t modulus, Mode mode, const std::string& what) {
    Verdict v;
    v.claim = claim;
    v.params.push_back(param(claim == "konyagin" ? "q" : "p", static_cast<std::int64_t>(modulus)));
    v.mode = mode;
    v.status = Status::capacity_exceeded;
    v.pass = false;
    v.note = what;
    return v;
}

Verdict error_verdict(const std::string& claim, std::uint64_t modulus, Mode mode, const std::string& what) {
    Verdict v = capacity_verdict(claim, modulus, mode, what);
    v.status = Status::fail;
    return v;
}

std::string join(std::span<const Residue> d) {
    std::string out;
    for (std::size_t i = 0; i < d.size(); ++i) out += (i ? " " : "") + std::to_string(d[i]);
    return out;
}

void run_prime_claim(const std::string& claim, const FieldCtx& ctx, Mode mode, const SuiteOptions& opts,
                     std::vector<Verdict>& out) {
    const auto hs = subgroups(ctx);
    const std::uint32_t p = ctx.p;
    auto nontrivial = [&] {
        std::vector<Character> chis;
        for (std::uint32_t j = 1; j < ctx.group_order(); ++j) chis.emplace_back(ctx, j);
        return chis;
    };

    if (claim == "thm2" || claim == "thm2_sharp" || claim == "eps_corollary" || claim == "nonlinear" ||
        claim == "bilinear_identity" || claim == "nonlinear_identity") {
        for (const auto& h : hs)
            for (const auto& chi : nontrivial()) {
                if (claim == "thm2") out.push_back(check_theorem2(ctx, chi, h, mode));
                else if (claim == "thm2_sharp") out.push_back(check_sharpened_theorem2(ctx, chi, h, mode));
                else if (claim == "eps_corollary") out.push_back(check_eps_corollary(ctx, chi, h, opts.epsilon, mode));
                else if (claim == "nonlinear") out.push_back(check_nonlinear_bound_all(ctx, chi, h, mode));
                else if (claim == "bilinear_identity") out.push_back(check_bilinear_identity(ctx, chi, h, mode));
                else out.push_back(check_nonlinear_identity(ctx, chi, h, mode));
            }
        return;
    }
    if (claim == "eq2") {
        std::vector<std::pair<std::string, std::vector<Residue>>> sets;
        for (const auto& h : hs) sets.emplace_back("subgroup:" + std::to_string(h.order), h.elements);
        Rng rng{opts.seed, p, claim_tag(claim)};
        const std::size_t sizes[] = {1, 2, static_cast<std::size_t>(std::sqrt(static_cast<double>(p))), p / 2};
        for (unsigned i = 0; i < opts.eq2_random_subsets; ++i) {
            const std::size_t size = std::clamp<std::size_t>(sizes[i % 4], 1, p - 1);
            sets.emplace_back("random:" + std::to_string(i), random_subset(rng, p, size));
        }
        for (const auto& chi : nontrivial())
            for (const auto& [label, d] : sets) {
                Verdict v = check_eq2_identity(ctx, chi, d, mode);
                v.params.push_back(param("D", label));
                if (label.starts_with("random") && d.size() <= 32) v.params.push_back(param("D_elements", join(d)));
                out.push_back(std::move(v));
            }
        return;
    }
    if (claim == "meanvalue2") {
        for (const auto& h : hs)
            for (Residue a = 1; a < p; ++a) out.push_back(check_meanvalue2(ctx, h, a, mode));
        return;
    }
    if (claim == "granville" || claim == "shkredov") {
        for (const auto& h : hs)
            out.push_back(claim == "granville" ? check_granville(ctx, h, mode) : check_shkredov_bound(ctx, h, mode));
        return;
    }
    if (claim == "lemma3") {
        Rng rng{opts.seed, p, claim_tag(claim)};
        std::vector<std::uint64_t> js;
        const std::uint64_t count = p - 2;
        if (count <= opts.lemma3_characters) {
            for (std::uint64_t j = 1; j <= count; ++j) js.push_back(j);
        } else {
            js = rng.sample(1, p - 2, opts.lemma3_characters);
            std::sort(js.begin(), js.end());
        }
        for (std::uint64_t j : js) {
            const Character chi(ctx, static_cast<std::uint32_t>(j));
            for (unsigned t = 0; t < opts.lemma3_pairs; ++t) {
                const auto xi = random_weights(rng, p);
                const auto eta = random_weights(rng, p);
                const auto a = static_cast<Residue>(1 + rng.below(p - 1));
                Verdict v = check_lemma3(ctx, chi, xi, eta, a, Mode::numeric);
                v.params.push_back(param("pair", std::int64_t{t}));
                out.push_back(std::move(v));
            }
        }
        return;
    }
    if (claim == "lemma3_kernel") {
        if (mode != Mode::exact) {
            out.push_back(capacity_verdict(claim, p, mode, "proof-kernel case table is checked in exact mode only"));
            return;
        }
        if (p <= opts.kernel_full_p_max) {
            for (const auto& chi : nontrivial())
                for (Residue a = 1; a < p; ++a) out.push_back(check_lemma3_kernel(ctx, chi, a));
        } else {
            Rng rng{opts.seed, p, claim_tag(claim)};
            for (int i = 0; i < 2; ++i) {
                const Character chi(ctx, static_cast<std::uint32_t>(1 + rng.below(p - 2)));
                out.push_back(check_lemma3_kernel(ctx, chi, static_cast<Residue>(1 + rng.below(p - 1))));
            }
        }
        return;
    }
}

std::vector<Verdict> run_modulus(std::uint64_t n, const std::vector<std::string>& claims, const SuiteOptions& opts) {
    std::vector<Verdict> out;
    const bool prime = n >= 3 && is_prime(n);
    std::optional<FieldCtx> ctx;
    std::string ctx_error;
    if (prime) {
        try {
            ctx = make_ctx(n);
        } catch (const Error& e) {
            ctx_error = e.what();
        }
    }
    for (const auto& claim : claims) {
        if (claim == "konyagin") {
            if (n < 2) continue;
            const Mode mode = resolve_mode(opts.mode, n);
            try {
                if (mode == Mode::exact && n > kMaxExactOrder)
                    throw Error(ErrorKind::CapacityExceeded, "exact mode requires q <= 10^4");
                Rng rng{opts.seed, n, claim_tag(claim)};
                for (unsigned i = 0; i < opts.konyagin_subsets; ++i) {
                    const std::size_t size = 1 + rng.below(n);
                    std::vector<std::uint32_t> d;
                    for (std::uint64_t x : rng.sample(0, n - 1, size)) d.push_back(static_cast<std::uint32_t>(x));
                    std::sort(d.begin(), d.end());
                    Verdict v = check_konyagin(static_cast<std::uint32_t>(n), d, mode);
                    v.params.push_back(param("D", "random:" + std::to_string(i)));
                    if (d.size() <= 32) v.params.push_back(param("D_elements", join(d)));
                    out.push_back(std::move(v));
                }
            } catch (const Error& e) {
                out.push_back(e.kind() == ErrorKind::CapacityExceeded ? capacity_verdict(claim, n, mode, e.what())
                                                                       : error_verdict(claim, n, mode, e.what()));
            }
            continue;
        }
        if (!prime) continue;
        const Mode mode = resolve_mode(opts.mode, n - 1);
        if (!ctx) {
            out.push_back(capacity_verdict(claim, n, mode, ctx_error));
            continue;
        }
        if (mode == Mode::exact && n - 1 > kMaxExactOrder) {
            out.push_back(capacity_verdict(claim, n, mode, "exact mode requires p-1 <= 10^4"));
            continue;
        }
        const std::size_t before = out.size();
        try {
            run_prime_claim(claim, *ctx, mode, opts, out);
        } catch (const Error& e) {
            out.resize(before);
            out.push_back(e.kind() == ErrorKind::CapacityExceeded ? capacity_verdict(claim, n, mode, e.what())
                                                                   : error_verdict(claim, n, mode, e.what()));
        }
    }
    return out;
}

}  // namespace

std::vector<Verdict> run_suite(const SuiteOptions& opts) {
    std::vector<std::string> claims;
    for (const auto& c : all_claims())
        if (opts.claims.empty() || std::find(opts.claims.begin(), opts.claims.end(), c) != opts.claims.end())
            claims.push_back(c);
    for (const auto& c : opts.claims)
        if (std::find(all_claims().begin(), all_claims().end(), c) == all_claims().end())
            throw Error(ErrorKind::InvalidArgument, "unknown claim '" + c + "'");

    std::vector<std::uint64_t> moduli;
    for (std::uint64_t n = std::max<std::uint64_t>(opts.p_min, 2); n <= opts.p_max; ++n) {
        const bool wanted = (n >= 3 && is_prime(n)) ||
                            std::find(claims.begin(), claims.end(), "konyagin") != claims.end();
        if (wanted) moduli.push_back(n);
    }

    const unsigned workers = std::max(1u, opts.workers);
    const std::size_t wave = std::max<std::size_t>(workers * 2, 1);
    std::vector<Verdict> out;
    for (std::size_t start = 0; start < moduli.size(); start += wave) {
        const std::size_t stop = std::min(moduli.size(), start + wave);
        std::vector<std::vector<Verdict>> results(stop - start);
        std::atomic<std::size_t> next{start};
        auto work = [&] {
            for (std::size_t i; (i = next.fetch_add(1)) < stop;) results[i - start] = run_modulus(moduli[i], claims, opts);
        };
        if (workers == 1) {
            work();
        } else {
            std::vector<std::jthread> pool;
            for (unsigned w = 0; w < std::min<std::size_t>(workers, stop - start); ++w) pool.emplace_back(work);
        }
        for (auto& r : results) {
            for (auto& v : r) {
                if (opts.budget != 0 && out.size() >= opts.budget) return out;
                out.push_back(std::move(v));
            }
        }
        if (opts.budget != 0 && out.size() >= opts.budget) break;
    }
    return out;
}

}  // namespace charsum
