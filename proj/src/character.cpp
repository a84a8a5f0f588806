#include "charsum/character.hpp"

#include <numeric>
#include <string>

namespace charsum {

std::string_view to_string(Mode mode) noexcept { return mode == Mode::exact ? "exact" : "numeric"; }

Character::Character(const FieldCtx& ctx, std::uint32_t j) : ctx_(&ctx), j_(j) {
    const std::uint32_t n = ctx.group_order();
    if (j >= n)
        throw Error(ErrorKind::IndexOutOfRange,
                    "character index " + std::to_string(j) + " not in [0, " + std::to_string(n - 1) + "]");
    order_ = n / std::gcd(j, n);
}

SumValue Character::eval(Residue x, Mode mode) const {
    const std::uint32_t n = ctx_->group_order();
    if (mode == Mode::exact) {
        if (n > kMaxExactOrder)
            throw Error(ErrorKind::CapacityExceeded, "exact mode requires p-1 <= " + std::to_string(kMaxExactOrder));
        CycInt v(n);
        if (auto e = exponent(x % ctx_->p)) v.add_root(*e);
        return SumValue::from_exact(std::move(v));
    }
    return SumValue::from_numeric(value(x));
}

std::complex<double> Character::value(Residue x) const {
    auto e = exponent(x % ctx_->p);
    return e ? unit_root(ctx_->group_order(), *e) : std::complex<double>{0.0, 0.0};
}

std::vector<std::complex<double>> Character::value_table() const {
    const std::uint32_t n = ctx_->group_order();
    const auto roots = unit_root_table(n / std::gcd(j_, n));
    const std::uint32_t step = std::gcd(j_, n);
    std::vector<std::complex<double>> table(ctx_->p);
    for (Residue v = 1; v < ctx_->p; ++v) table[v] = roots[*exponent(v) / step];
    return table;
}

Character Character::conjugate() const {
    const std::uint32_t n = ctx_->group_order();
    return Character(*ctx_, (n - j_) % n);
}

Character quadratic_character(const FieldCtx& ctx) { return Character(ctx, ctx.group_order() / 2); }

std::vector<Character> subgroup_character_decomposition(const FieldCtx& ctx, const Subgroup& h) {
    // psi_j is trivial on H = <g^k> iff (p-1) | j k, i.e. j is a multiple of |H|.
    std::vector<Character> out;
    out.reserve(h.index);
    for (std::uint32_t i = 0; i < h.index; ++i) out.emplace_back(ctx, i * h.order);
    return out;
}

}  // namespace charsum
