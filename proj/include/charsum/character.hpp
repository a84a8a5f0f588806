#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <ranges>
#include <vector>

#include "charsum/cyclo.hpp"
#include "charsum/field.hpp"

namespace charsum {

enum class Mode { exact, numeric };

std::string_view to_string(Mode mode) noexcept;

/// A scalar produced by the sum engines. In exact mode both the CycInt and
/// its complex image are present; in numeric mode only the complex value.
struct SumValue {
    Mode mode = Mode::numeric;
    std::optional<CycInt> exact;
    std::complex<double> numeric{0.0, 0.0};

    static SumValue from_exact(CycInt v) {
        SumValue out;
        out.mode = Mode::exact;
        out.numeric = v.to_complex();
        out.exact = std::move(v);
        return out;
    }
    static SumValue from_numeric(std::complex<double> v) {
        SumValue out;
        out.numeric = v;
        return out;
    }

    double abs() const { return std::abs(numeric); }
};

/// Multiplicative character chi_j of F_p*: chi_j(g^t) = zeta_{p-1}^{j t},
/// extended by chi(0) = 0. Values always live in Z[zeta_{p-1}] regardless
/// of the character's own order, so sums across characters share one ring.
///
/// Holds a pointer to its FieldCtx; the context must outlive the character.
class Character {
public:
    Character(const FieldCtx& ctx, std::uint32_t j);

    const FieldCtx& ctx() const noexcept { return *ctx_; }
    std::uint32_t index() const noexcept { return j_; }
    std::uint32_t order() const noexcept { return order_; }
    bool is_principal() const noexcept { return j_ == 0; }

    /// Exponent e with chi(x) = zeta_{p-1}^e, or nullopt for x = 0.
    std::optional<std::uint32_t> exponent(Residue x) const noexcept {
        if (x == 0) return std::nullopt;
        const std::uint32_t n = ctx_->group_order();
        return static_cast<std::uint32_t>(std::uint64_t{j_} * ctx_->dlog[x] % n);
    }

    SumValue eval(Residue x, Mode mode) const;
    std::complex<double> value(Residue x) const;

    /// T[v] = chi(v) for v in [0, p), T[0] = 0.
    std::vector<std::complex<double>> value_table() const;

    Character conjugate() const;

    friend bool operator==(const Character& a, const Character& b) noexcept {
        return a.ctx_ == b.ctx_ && a.j_ == b.j_;
    }

private:
    const FieldCtx* ctx_;
    std::uint32_t j_;
    std::uint32_t order_;
};

inline Character character(const FieldCtx& ctx, std::uint32_t j) { return Character(ctx, j); }

/// chi_j with j = (p-1)/2.
Character quadratic_character(const FieldCtx& ctx);

/// All p-1 characters, j ascending, generated lazily.
inline auto all_characters(const FieldCtx& ctx) {
    return std::views::iota(std::uint32_t{0}, ctx.group_order()) |
           std::views::transform([&ctx](std::uint32_t j) { return Character(ctx, j); });
}

/// The k = [F_p* : H] characters trivial on H; their average is H's indicator.
std::vector<Character> subgroup_character_decomposition(const FieldCtx& ctx, const Subgroup& h);

}  // namespace charsum
