#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "charsum/error.hpp"

namespace charsum {

using Residue = std::uint32_t;

// Marks dlog[0]; zero has no discrete logarithm.
inline constexpr std::uint32_t kNoLog = 0xFFFFFFFFu;

/// Precomputed context for the prime field F_p: primitive root, discrete
/// logarithm / exponential tables and the divisor lattice of p-1.
///
/// Immutable after make_ctx(); safe to share between threads.
struct FieldCtx {
    std::uint32_t p = 0;
    std::uint32_t g = 0;
    std::vector<std::uint32_t> dlog;  // size p, dlog[0] == kNoLog
    std::vector<Residue> exp;         // size p-1, exp[t] = g^t mod p
    std::vector<std::uint32_t> divisors;  // of p-1, ascending
    std::vector<std::pair<std::uint32_t, unsigned>> factorization;  // of p-1

    std::uint32_t group_order() const noexcept { return p - 1; }

    Residue mul(Residue x, Residue y) const noexcept {
        return static_cast<Residue>(std::uint64_t{x} * y % p);
    }
    Residue add(Residue x, Residue y) const noexcept {
        const std::uint64_t s = std::uint64_t{x} + y;
        return static_cast<Residue>(s >= p ? s - p : s);
    }
    Residue neg(Residue x) const noexcept { return x == 0 ? 0 : p - x; }
};

/// Multiplicative subgroup of F_p* of order n = (p-1)/k, generated by g^k.
struct Subgroup {
    std::uint32_t p = 0;
    std::uint32_t order = 0;
    std::uint32_t index = 0;
    Residue generator = 1;
    std::vector<Residue> elements;  // ascending

    /// Membership via the discrete log: x lies in H iff k | dlog[x].
    bool contains(const FieldCtx& ctx, Residue x) const noexcept {
        return x != 0 && x < p && ctx.dlog[x] % index == 0;
    }
};

bool is_prime(std::uint64_t n) noexcept;
std::uint64_t pow_mod(std::uint64_t base, std::uint64_t e, std::uint64_t mod) noexcept;
std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n);

/// Throws NotOddPrime for p < 3, even or composite p; CapacityExceeded above
/// kMaxFieldPrime.
FieldCtx make_ctx(std::uint64_t p);

/// One subgroup per divisor of p-1, ascending by order.
std::vector<Subgroup> subgroups(const FieldCtx& ctx);

Subgroup subgroup_of_order(const FieldCtx& ctx, std::uint32_t order);

/// The subgroup whose order is closest to sqrt(p); ties go to the larger one.
Subgroup subgroup_near_sqrt(const FieldCtx& ctx);

Residue mod_inverse(const FieldCtx& ctx, Residue x);

}  // namespace charsum
