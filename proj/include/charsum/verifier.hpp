#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include <gmpxx.h>

#include "charsum/engines.hpp"

namespace charsum {

enum class Status { pass, fail, vacuous_pass, capacity_exceeded };

std::string_view to_string(Status s) noexcept;

/// A checked quantity: exact integer, floating value, or absent.
using Quantity = std::variant<std::monostate, mpz_class, double>;

std::string quantity_string(const Quantity& q);

struct Param {
    std::string key;
    std::variant<std::int64_t, double, std::string> value;
};

/// Outcome of one claim on one parameter instance.
///
/// Identity claims carry integer computed/target values and a margin of
/// exactly zero when they pass; inequality claims carry floating values with
/// margin = target - computed.
struct Verdict {
    std::string claim;
    std::vector<Param> params;
    Quantity computed;
    Quantity target;
    double margin = 0.0;
    bool pass = false;
    Status status = Status::fail;
    Mode mode = Mode::numeric;
    std::string note;
};

// Absolute slack on magnitude comparisons.
inline constexpr double kInequalityTolerance = 1e-9;

/// max_{a != 0} |sum_{x in H} chi(x + a)| < sqrt(p).
Verdict check_theorem2(const FieldCtx& ctx, const Character& chi, const Subgroup& h, Mode mode);

/// For every a != 0: |S(a)|^2 <= (p|H| - |sum_{x in H} chi(x)|^2) / |H|.
Verdict check_sharpened_theorem2(const FieldCtx& ctx, const Character& chi, const Subgroup& h, Mode mode);

/// max_{a != 0} |S(a)| < p^{-eps} |H|, vacuous unless |H| > p^{1/2 + eps}.
Verdict check_eps_corollary(const FieldCtx& ctx, const Character& chi, const Subgroup& h, double eps, Mode mode);

/// sum_{a in F_p} |sum_{x in D} chi(x + a)|^2 = p|D| - |D|^2 for D in F_p*.
Verdict check_eq2_identity(const FieldCtx& ctx, const Character& chi, std::span<const Residue> d, Mode mode);

/// (1/(p-1)) sum over all chi mod p (principal included) of
/// |sum_{n in H} chi(n + a)| <= sqrt|H|.
Verdict check_meanvalue2(const FieldCtx& ctx, const Subgroup& h, Residue a, Mode mode);

/// sum_chi |sum_{n in H} chi(n)| = p - 1, checked structurally: the inner
/// sum is |H| for the k characters trivial on H and 0 for all others.
Verdict check_granville(const FieldCtx& ctx, const Subgroup& h, Mode mode);

/// sum_chi |sum_{n in H} chi(n)| <= p.
Verdict check_shkredov_bound(const FieldCtx& ctx, const Subgroup& h, Mode mode);

/// sum_{a in Z_q \ {0}} |sum_{x in D} e_q(a x)|^2 = |D| (q - |D|).
Verdict check_konyagin(std::uint32_t q, std::span<const std::uint32_t> d, Mode mode);

/// |S| <= sqrt(pXY) and |S'| <= sqrt(pXY), X and Y from the actual weights.
Verdict check_lemma3(const FieldCtx& ctx, const Character& chi, const Weights& xi, const Weights& eta, Residue a,
                     Mode mode);

/// S_{y,y1} against its four-case closed form for every pair (y, y1).
Verdict check_lemma3_kernel(const FieldCtx& ctx, const Character& chi, Residue a);

/// |sum_{x in H} chi(x (x + a))| <= sqrt(p).
Verdict check_nonlinear_bound(const FieldCtx& ctx, const Character& chi, const Subgroup& h, Residue a, Mode mode);

/// check_nonlinear_bound over every a != 0, reporting the worst shift.
Verdict check_nonlinear_bound_all(const FieldCtx& ctx, const Character& chi, const Subgroup& h, Mode mode);

/// |H| * sum_{x in H} chi(x + a) = S(1_H, 1_H) for every a != 0.
Verdict check_bilinear_identity(const FieldCtx& ctx, const Character& chi, const Subgroup& h, Mode mode);

/// |H| * sum_{x in H} chi(x (x + a)) = S'(1_H, 1_H) for every a != 0.
Verdict check_nonlinear_identity(const FieldCtx& ctx, const Character& chi, const Subgroup& h, Mode mode);

// ---------------------------------------------------------------- suite

enum class ModeRequest { exact, numeric, automatic };

/// auto resolves to exact iff p - 1 (or q) fits the exact capacity.
Mode resolve_mode(ModeRequest req, std::uint64_t root_order);

/// Claim keys in canonical (output) order.
const std::vector<std::string>& all_claims();

struct SuiteOptions {
    std::uint64_t p_min = 3;
    std::uint64_t p_max = 61;
    std::vector<std::string> claims;  // empty = all
    ModeRequest mode = ModeRequest::automatic;
    std::uint64_t seed = 0;
    std::size_t budget = 0;  // max verdicts, 0 = unlimited
    unsigned workers = 1;
    double epsilon = 0.1;
    unsigned eq2_random_subsets = 20;
    unsigned konyagin_subsets = 10;
    unsigned lemma3_characters = 5;
    unsigned lemma3_pairs = 100;
    std::uint64_t kernel_full_p_max = 31;
};

/// Runs every selected claim over every modulus in [p_min, p_max].
///
/// Prime moduli carry all claims except konyagin, which runs on every
/// modulus q >= 2. Output order is (modulus, claim, parameters) regardless of
/// the worker count. Capacity failures become capacity_exceeded verdicts.
std::vector<Verdict> run_suite(const SuiteOptions& opts);

/// Seeded draws shared by the suite and the CLI. Only raw engine output is
/// used, so sequences are identical across standard libraries.
class Rng {
public:
    explicit Rng(std::initializer_list<std::uint64_t> seeds);

    std::uint64_t next() { return engine_(); }
    /// Uniform in [0, n).
    std::uint64_t below(std::uint64_t n);
    /// Uniform in [0, 1).
    double unit();
    /// k distinct values from [lo, hi], in draw order.
    std::vector<std::uint64_t> sample(std::uint64_t lo, std::uint64_t hi, std::size_t k);

private:
    std::mt19937_64 engine_;
};

/// Seeded subset of F_p* of the given size, ascending.
std::vector<Residue> random_subset(Rng& rng, std::uint32_t p, std::size_t size);

/// Weights with real and imaginary parts uniform in [-1, 1).
Weights random_weights(Rng& rng, std::uint32_t p);

}  // namespace charsum
