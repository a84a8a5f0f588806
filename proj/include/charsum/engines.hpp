#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "charsum/character.hpp"
#include "charsum/field.hpp"

namespace charsum {

/// Complex weight function on [0, p) for the bilinear sums.
///
/// Numeric values are always present. Exact weights also expose their nonzero
/// entries as elements of Z[zeta_{p-1}]; 0/1 indicator weights are exact
/// implicitly and materialize those entries only on request.
class Weights {
public:
    static Weights numeric(std::vector<std::complex<double>> values);
    /// entries: (residue, value) pairs with every value of order p-1.
    static Weights exact(std::uint32_t p, std::vector<std::pair<Residue, CycInt>> entries);
    static Weights indicator(std::uint32_t p, std::span<const Residue> support);
    static Weights zero(std::uint32_t p);

    std::size_t size() const noexcept { return values_.size(); }
    bool is_exact() const noexcept { return kind_ != Kind::numeric; }
    const std::vector<std::complex<double>>& values() const noexcept { return values_; }

    using Entry = std::pair<Residue, std::vector<CycInt::Term>>;

    /// Nonzero entries sorted by residue. InvalidArgument for numeric weights.
    std::vector<std::pair<Residue, CycInt>> exact_entries() const;
    /// Same entries as sparse exponent/coefficient lists.
    std::vector<Entry> exact_terms() const;

    /// X = sum_x |w(x)|^2
    double energy() const noexcept { return energy_; }

    Weights scaled(std::complex<double> c) const;
    /// w'(x) = w(x) chi(x); vanishes at 0 since chi(0) = 0.
    Weights twisted(const Character& chi) const;

private:
    enum class Kind { numeric, integral, exact };

    void finish();

    Kind kind_ = Kind::numeric;
    std::vector<std::complex<double>> values_;
    std::vector<Entry> exact_;
    double energy_ = 0.0;
};

/// sum_{x in D} chi(x + a)
SumValue shifted_sum(const FieldCtx& ctx, const Character& chi, std::span<const Residue> d, Residue a,
                     Mode mode);

/// Entry a is shifted_sum(..., a). Numeric mode uses one length-p cyclic
/// correlation of D's indicator with chi's value table; exact mode is the
/// direct double loop (CapacityExceeded for p-1 > kMaxExactOrder).
std::vector<SumValue> shifted_sum_all(const FieldCtx& ctx, const Character& chi, std::span<const Residue> d,
                                      Mode mode);

/// Complex-only batch kernel; avoids SumValue overhead for large p.
std::vector<std::complex<double>> shifted_sum_all_numeric(const FieldCtx& ctx, const Character& chi,
                                                          std::span<const Residue> d);

/// S = sum_{x,y} xi(x) eta(y) chi(xy + a).
///
/// The x = 0 or y = 0 terms collapse to chi(a) times a closed-form weight
/// total; the rest is grouped by t = xy through a multiplicative convolution
/// over Z_{p-1} (dlog-indexed), then folded against chi(t + a).
SumValue bilinear_S(const FieldCtx& ctx, const Character& chi, const Weights& xi, const Weights& eta, Residue a,
                    Mode mode);

/// S' = sum_{x,y} xi(x) eta(y) chi(xy(xy + a)), evaluated as bilinear_S with
/// weights twisted by chi.
SumValue bilinear_Sprime(const FieldCtx& ctx, const Character& chi, const Weights& xi, const Weights& eta,
                         Residue a, Mode mode);

/// S_{y,y1} = sum_x chi(xy + a) conj(chi(x y1 + a)).
SumValue proof_kernel_S_yy1(const FieldCtx& ctx, const Character& chi, Residue y, Residue y1, Residue a,
                            Mode mode = Mode::exact);

/// sum_{x in H} chi(x (x + a))
SumValue nonlinear_sum_xxa(const FieldCtx& ctx, const Character& chi, const Subgroup& h, Residue a, Mode mode);

/// sum_{x in H} chi((x + a)(x + b)); requires ab(a - b) != 0.
SumValue shifted_product_sum(const FieldCtx& ctx, const Character& chi, const Subgroup& h, Residue a, Residue b,
                             Mode mode);

/// sum_{x in H} e((k x + l x*) / p), numeric only.
SumValue kloosterman_over_H(const FieldCtx& ctx, const Subgroup& h, Residue k, Residue l);

/// sum_{x in H, x != -a} e(k (x + a)* / p), numeric only.
SumValue inverse_shift_sum(const FieldCtx& ctx, const Subgroup& h, Residue k, Residue a);

/// sum_{x in D} e_q(a x); exact in Z[zeta_q] for q <= kMaxExactOrder.
SumValue exp_sum_subset(std::uint32_t q, std::span<const std::uint32_t> d, std::uint64_t a, Mode mode);

}  // namespace charsum
