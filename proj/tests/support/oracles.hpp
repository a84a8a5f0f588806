#pragma once

// Brute-force reference computations for the tests. Nothing here calls into
// the library: primitive roots, logarithms and character values are found by
// direct search so the checks stay independent of the tables under test.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <random>
#include <vector>

namespace oracle {

using cd = std::complex<double>;

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) { return a * b % p; }

inline std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1;
    for (std::uint64_t i = 0; i < e; ++i) r = r * b % p;
    return r;
}

inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d < n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline std::uint64_t multiplicative_order(std::uint64_t g, std::uint64_t p) {
    std::uint64_t x = g % p, k = 1;
    while (x != 1) {
        x = x * g % p;
        ++k;
    }
    return k;
}

inline std::uint64_t smallest_primitive_root(std::uint64_t p) {
    for (std::uint64_t g = 2; g < p; ++g)
        if (multiplicative_order(g, p) == p - 1) return g;
    return 1;  // p = 2
}

// t with g^t = x, by linear search
inline std::uint64_t brute_dlog(std::uint64_t x, std::uint64_t g, std::uint64_t p) {
    std::uint64_t y = 1;
    for (std::uint64_t t = 0; t < p - 1; ++t) {
        if (y == x) return t;
        y = y * g % p;
    }
    return ~std::uint64_t{0};
}

// Euler's criterion: +1, -1 or 0
inline int legendre(std::uint64_t x, std::uint64_t p) {
    x %= p;
    if (x == 0) return 0;
    std::uint64_t r = 1, b = x, e = (p - 1) / 2;
    while (e) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return r == 1 ? 1 : -1;
}

inline cd root(std::uint64_t m, std::uint64_t e) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(e % m) / static_cast<double>(m);
    return {std::cos(angle), std::sin(angle)};
}

// chi_j(x) with respect to the smallest primitive root, found from scratch
struct BruteCharacter {
    std::uint64_t p, g, j;
    std::vector<std::uint64_t> log;

    BruteCharacter(std::uint64_t p_, std::uint64_t j_) : p(p_), g(smallest_primitive_root(p_)), j(j_), log(p_) {
        for (std::uint64_t x = 1; x < p; ++x) log[x] = brute_dlog(x, g, p);
    }
    cd operator()(std::uint64_t x) const {
        x %= p;
        if (x == 0) return 0.0;
        return root(p - 1, j * log[x] % (p - 1));
    }
};

inline std::vector<std::uint64_t> divisors(std::uint64_t n) {
    std::vector<std::uint64_t> d;
    for (std::uint64_t k = 1; k <= n; ++k)
        if (n % k == 0) d.push_back(k);
    return d;
}

// Coefficients of prod_{gcd(k,m)=1} (x - zeta_m^k), rounded to integers.
inline std::vector<long long> cyclotomic_numeric(std::uint64_t m) {
    std::vector<cd> poly{1.0};
    for (std::uint64_t k = 1; k <= m; ++k) {
        if (std::gcd(k, m) != 1) continue;
        const cd z = root(m, k);
        std::vector<cd> next(poly.size() + 1);
        for (std::size_t i = 0; i < poly.size(); ++i) {
            next[i + 1] += poly[i];
            next[i] -= z * poly[i];
        }
        poly = std::move(next);
    }
    std::vector<long long> out;
    for (const cd& c : poly) out.push_back(std::llround(c.real()));
    return out;
}

inline cd shifted_sum(const BruteCharacter& chi, const std::vector<std::uint64_t>& d, std::uint64_t a) {
    cd acc = 0.0;
    for (std::uint64_t x : d) acc += chi(x + a);
    return acc;
}

// Direct O(p^2) double sum.
template <typename F>
cd bilinear(std::uint64_t p, const std::vector<cd>& xi, const std::vector<cd>& eta, F&& term) {
    cd acc = 0.0;
    for (std::uint64_t x = 0; x < p; ++x)
        for (std::uint64_t y = 0; y < p; ++y) acc += xi[x] * eta[y] * term(x * y % p);
    return acc;
}

inline std::vector<std::uint64_t> subgroup_elements(std::uint64_t p, std::uint64_t order) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t x = 1; x < p; ++x)
        if (powmod(x, order, p) == 1) out.push_back(x);
    return out;
}

}  // namespace oracle
