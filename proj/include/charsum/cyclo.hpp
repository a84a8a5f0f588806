#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "charsum/error.hpp"

namespace charsum {

/// The m-th cyclotomic polynomial, coefficients in ascending degree.
struct CycPoly {
    std::uint32_t m = 1;
    std::vector<mpz_class> coeffs;

    std::size_t degree() const noexcept { return coeffs.empty() ? 0 : coeffs.size() - 1; }
};

/// Phi_m by recursive division of x^m - 1 by Phi_d for the proper divisors d.
/// Results are memoized; the returned reference stays valid for the process
/// lifetime. Throws CapacityExceeded for m > kMaxExactOrder.
const CycPoly& cyclotomic_poly(std::uint32_t m);

/// Element of Z[zeta_m] stored as sum_i coeffs[i] * zeta_m^i, i in [0, m).
///
/// Coefficients are kept unreduced: the representation is unique only modulo
/// Phi_m, so operator== and as_integer() reduce before comparing. Additions
/// stay O(m) without polynomial division.
class CycInt {
public:
    CycInt() = default;
    explicit CycInt(std::uint32_t m);
    CycInt(std::uint32_t m, std::vector<mpz_class> coeffs);

    static CycInt integer(std::uint32_t m, const mpz_class& value);
    /// zeta_m^e (e reduced mod m).
    static CycInt root(std::uint32_t m, std::uint64_t e);

    std::uint32_t order() const noexcept { return m_; }
    const std::vector<mpz_class>& coeffs() const noexcept { return coeffs_; }
    bool is_trivially_zero() const;

    CycInt& operator+=(const CycInt& o);
    CycInt& operator-=(const CycInt& o);
    CycInt& operator*=(const CycInt& o);

    /// this += c * zeta^e
    void add_root(std::uint64_t e, const mpz_class& c = 1);
    /// this += o * zeta^e; O(nnz(o)).
    void add_rotated(const CycInt& o, std::uint64_t e);
    using Term = std::pair<std::uint32_t, mpz_class>;
    /// Nonzero (exponent, coefficient) pairs, ascending exponent.
    std::vector<Term> terms() const;
    /// this += (a * b) * zeta^shift, both factors given as sparse terms.
    void add_product(std::span<const Term> a, std::span<const Term> b, std::uint64_t shift = 0);

    /// this * zeta^e
    CycInt rotated(std::uint64_t e) const;
    CycInt scaled(const mpz_class& c) const;

    /// Remainder modulo Phi_m: phi(m) coefficients in the power basis.
    std::vector<mpz_class> reduced() const;

    std::complex<double> to_complex() const;
    std::string to_string() const;

    friend CycInt operator+(CycInt a, const CycInt& b) { return a += b; }
    friend CycInt operator-(CycInt a, const CycInt& b) { return a -= b; }
    friend CycInt operator*(CycInt a, const CycInt& b) { return a *= b; }
    friend bool operator==(const CycInt& a, const CycInt& b);

private:
    void require_same_order(const CycInt& o) const;

    std::uint32_t m_ = 1;
    std::vector<mpz_class> coeffs_{mpz_class(0)};
};

CycInt neg(const CycInt& a);
CycInt conj(const CycInt& a);
/// a * conj(a)
CycInt abs_squared(const CycInt& a);
bool is_integer(const CycInt& a);
std::optional<mpz_class> as_integer(const CycInt& a);
std::complex<double> to_complex(const CycInt& a);

/// zeta_m^e as a double-precision complex number.
std::complex<double> unit_root(std::uint64_t m, std::uint64_t e);

/// Table of zeta_m^e for e in [0, m).
std::vector<std::complex<double>> unit_root_table(std::uint64_t m);

}  // namespace charsum
