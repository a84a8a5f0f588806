#include "charsum/cyclo.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>

namespace charsum {

namespace {

// Exact quotient of num by a monic divisor; num is overwritten.
std::vector<mpz_class> divide_monic(std::vector<mpz_class> num, const std::vector<mpz_class>& den) {
    const std::size_t dn = den.size() - 1;
    const std::size_t nn = num.size() - 1;
    std::vector<mpz_class> quot(nn - dn + 1);
    for (std::size_t i = nn + 1; i-- > dn;) {
        const mpz_class c = num[i];
        quot[i - dn] = c;
        if (c == 0) continue;
        for (std::size_t j = 0; j <= dn; ++j) mpz_submul(num[i - dn + j].get_mpz_t(), c.get_mpz_t(), den[j].get_mpz_t());
    }
    return quot;
}

std::unique_ptr<CycPoly> compute_cyclotomic(std::uint32_t m) {
    std::vector<mpz_class> poly(m + 1);
    poly[0] = -1;
    poly[m] = 1;
    for (std::uint32_t d = 1; d < m; ++d)
        if (m % d == 0) poly = divide_monic(std::move(poly), cyclotomic_poly(d).coeffs);
    auto out = std::make_unique<CycPoly>();
    out->m = m;
    out->coeffs = std::move(poly);
    return out;
}

std::mutex& cache_mutex() {
    static std::mutex mu;
    return mu;
}

std::map<std::uint32_t, std::unique_ptr<CycPoly>>& cache() {
    static std::map<std::uint32_t, std::unique_ptr<CycPoly>> c;
    return c;
}

}  // namespace

const CycPoly& cyclotomic_poly(std::uint32_t m) {
    if (m == 0) throw Error(ErrorKind::InvalidArgument, "cyclotomic order must be positive");
    if (m > kMaxExactOrder)
        throw Error(ErrorKind::CapacityExceeded,
                    "cyclotomic order " + std::to_string(m) + " exceeds " + std::to_string(kMaxExactOrder));
    {
        std::lock_guard lock(cache_mutex());
        if (auto it = cache().find(m); it != cache().end()) return *it->second;
    }
    auto poly = compute_cyclotomic(m);
    std::lock_guard lock(cache_mutex());
    return *cache().try_emplace(m, std::move(poly)).first->second;
}

CycInt::CycInt(std::uint32_t m) : m_(m), coeffs_(m) {
    if (m == 0) throw Error(ErrorKind::InvalidArgument, "root order must be positive");
}

CycInt::CycInt(std::uint32_t m, std::vector<mpz_class> coeffs) : m_(m), coeffs_(std::move(coeffs)) {
    if (m == 0 || coeffs_.size() != m)
        throw Error(ErrorKind::InvalidArgument, "coefficient vector must have length m");
}

CycInt CycInt::integer(std::uint32_t m, const mpz_class& value) {
    CycInt out(m);
    out.coeffs_[0] = value;
    return out;
}

CycInt CycInt::root(std::uint32_t m, std::uint64_t e) {
    CycInt out(m);
    out.coeffs_[e % m] = 1;
    return out;
}

bool CycInt::is_trivially_zero() const {
    for (const auto& c : coeffs_)
        if (c != 0) return false;
    return true;
}

void CycInt::require_same_order(const CycInt& o) const {
    if (m_ != o.m_)
        throw Error(ErrorKind::MixedOrder,
                    "root orders " + std::to_string(m_) + " and " + std::to_string(o.m_) + " differ");
}

CycInt& CycInt::operator+=(const CycInt& o) {
    require_same_order(o);
    for (std::uint32_t i = 0; i < m_; ++i)
        if (o.coeffs_[i] != 0) coeffs_[i] += o.coeffs_[i];
    return *this;
}

CycInt& CycInt::operator-=(const CycInt& o) {
    require_same_order(o);
    for (std::uint32_t i = 0; i < m_; ++i)
        if (o.coeffs_[i] != 0) coeffs_[i] -= o.coeffs_[i];
    return *this;
}

CycInt& CycInt::operator*=(const CycInt& o) {
    require_same_order(o);
    std::vector<std::uint32_t> lhs, rhs;
    for (std::uint32_t i = 0; i < m_; ++i) {
        if (coeffs_[i] != 0) lhs.push_back(i);
        if (o.coeffs_[i] != 0) rhs.push_back(i);
    }
    std::vector<mpz_class> out(m_);
    for (std::uint32_t i : lhs)
        for (std::uint32_t j : rhs) {
            const std::uint32_t k = i + j < m_ ? i + j : i + j - m_;
            mpz_addmul(out[k].get_mpz_t(), coeffs_[i].get_mpz_t(), o.coeffs_[j].get_mpz_t());
        }
    coeffs_ = std::move(out);
    return *this;
}

void CycInt::add_root(std::uint64_t e, const mpz_class& c) { coeffs_[e % m_] += c; }

void CycInt::add_rotated(const CycInt& o, std::uint64_t e) {
    require_same_order(o);
    const std::uint32_t shift = static_cast<std::uint32_t>(e % m_);
    for (std::uint32_t i = 0; i < m_; ++i) {
        if (o.coeffs_[i] == 0) continue;
        const std::uint32_t k = i + shift < m_ ? i + shift : i + shift - m_;
        coeffs_[k] += o.coeffs_[i];
    }
}

std::vector<CycInt::Term> CycInt::terms() const {
    std::vector<Term> out;
    for (std::uint32_t i = 0; i < m_; ++i)
        if (coeffs_[i] != 0) out.emplace_back(i, coeffs_[i]);
    return out;
}

void CycInt::add_product(std::span<const Term> a, std::span<const Term> b, std::uint64_t shift) {
    const std::uint64_t base = shift % m_;
    for (const auto& [i, ca] : a)
        for (const auto& [j, cb] : b) {
            const std::uint64_t k = (base + i + j) % m_;
            mpz_addmul(coeffs_[k].get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
        }
}

CycInt CycInt::rotated(std::uint64_t e) const {
    CycInt out(m_);
    out.add_rotated(*this, e);
    return out;
}

CycInt CycInt::scaled(const mpz_class& c) const {
    CycInt out = *this;
    for (auto& x : out.coeffs_) x *= c;
    return out;
}

std::vector<mpz_class> CycInt::reduced() const {
    const CycPoly& phi = cyclotomic_poly(m_);
    const std::size_t deg = phi.degree();
    std::vector<mpz_class> work = coeffs_;
    for (std::size_t i = work.size(); i-- > deg;) {
        if (work[i] == 0) continue;
        const mpz_class c = work[i];
        // phi is monic: subtracting c * x^(i-deg) * phi clears position i
        for (std::size_t j = 0; j < deg; ++j)
            if (phi.coeffs[j] != 0)
                mpz_submul(work[i - deg + j].get_mpz_t(), c.get_mpz_t(), phi.coeffs[j].get_mpz_t());
        work[i] = 0;
    }
    work.resize(deg);
    return work;
}

std::complex<double> CycInt::to_complex() const {
    std::complex<double> acc{0.0, 0.0};
    for (std::uint32_t i = 0; i < m_; ++i)
        if (coeffs_[i] != 0) acc += coeffs_[i].get_d() * unit_root(m_, i);
    return acc;
}

std::string CycInt::to_string() const {
    std::ostringstream os;
    os << '[';
    for (std::uint32_t i = 0; i < m_; ++i) os << (i ? "," : "") << coeffs_[i];
    os << ']';
    return os.str();
}

bool operator==(const CycInt& a, const CycInt& b) {
    a.require_same_order(b);
    if (a.coeffs_ == b.coeffs_) return true;
    for (const auto& c : (a - b).reduced())
        if (c != 0) return false;
    return true;
}

CycInt neg(const CycInt& a) { return a.scaled(-1); }

CycInt conj(const CycInt& a) {
    const std::uint32_t m = a.order();
    std::vector<mpz_class> out(m);
    for (std::uint32_t i = 0; i < m; ++i) out[(m - i) % m] = a.coeffs()[i];
    return CycInt(m, std::move(out));
}

CycInt abs_squared(const CycInt& a) { return a * conj(a); }

std::optional<mpz_class> as_integer(const CycInt& a) {
    auto r = a.reduced();
    for (std::size_t i = 1; i < r.size(); ++i)
        if (r[i] != 0) return std::nullopt;
    return r.empty() ? mpz_class(0) : r[0];
}

bool is_integer(const CycInt& a) { return as_integer(a).has_value(); }

std::complex<double> to_complex(const CycInt& a) { return a.to_complex(); }

std::complex<double> unit_root(std::uint64_t m, std::uint64_t e) {
    e %= m;
    // exact values on the axes keep integer-valued sums free of round-off
    if (e == 0) return {1.0, 0.0};
    if (2 * e == m) return {-1.0, 0.0};
    if (4 * e == m) return {0.0, 1.0};
    if (4 * e == 3 * m) return {0.0, -1.0};
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(e) / static_cast<double>(m);
    return {std::cos(angle), std::sin(angle)};
}

std::vector<std::complex<double>> unit_root_table(std::uint64_t m) {
    std::vector<std::complex<double>> out(m);
    for (std::uint64_t e = 0; e < m; ++e) out[e] = unit_root(m, e);
    return out;
}

}  // namespace charsum
