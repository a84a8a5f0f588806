#include <doctest.h>

#include <random>

#include "charsum/cyclo.hpp"
#include "support/oracles.hpp"

using namespace charsum;

namespace {

CycInt random_cycint(std::uint32_t m, std::mt19937_64& rng, long bound) {
    std::vector<mpz_class> c(m);
    for (auto& x : c) x = static_cast<long>(rng() % (2 * bound + 1)) - bound;
    return CycInt(m, std::move(c));
}

std::vector<mpz_class> poly_mul(const std::vector<mpz_class>& a, const std::vector<mpz_class>& b) {
    std::vector<mpz_class> out(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

}  // namespace

TEST_CASE("cyclotomic_poly small cases") {
    CHECK(cyclotomic_poly(1).coeffs == std::vector<mpz_class>{-1, 1});
    CHECK(cyclotomic_poly(4).coeffs == std::vector<mpz_class>{1, 0, 1});
    CHECK(cyclotomic_poly(6).coeffs == std::vector<mpz_class>{1, -1, 1});
    try {
        cyclotomic_poly(10'001);
        FAIL("expected CapacityExceeded");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::CapacityExceeded);
    }
}

TEST_CASE("cyclotomic_poly matches the product over primitive roots") {
    for (std::uint32_t m : {5u, 12u, 15u, 30u, 36u, 60u, 105u}) {
        const auto expect = oracle::cyclotomic_numeric(m);
        const auto& got = cyclotomic_poly(m).coeffs;
        REQUIRE(got.size() == expect.size());
        for (std::size_t i = 0; i < got.size(); ++i) CHECK(got[i] == static_cast<long>(expect[i]));
    }
}

TEST_CASE("product of Phi_d over d | m is x^m - 1, m <= 200") {
    for (std::uint32_t m = 1; m <= 200; ++m) {
        std::vector<mpz_class> prod{1};
        for (std::uint32_t d = 1; d <= m; ++d)
            if (m % d == 0) prod = poly_mul(prod, cyclotomic_poly(d).coeffs);
        std::vector<mpz_class> expect(m + 1);
        expect[0] = -1;
        expect[m] = 1;
        CAPTURE(m);
        REQUIRE(prod == expect);
    }
    // first m with a coefficient outside {-1, 0, 1}
    bool found_two = false;
    for (const auto& c : cyclotomic_poly(105).coeffs) found_two = found_two || c == -2;
    CHECK(found_two);
}

TEST_CASE("ring operations") {
    const CycInt z6 = CycInt::root(6, 1);
    CHECK(as_integer(z6 + CycInt::root(6, 5)) == mpz_class(1));
    CHECK(z6 * CycInt::integer(6, 1) == z6);
    CHECK(as_integer(CycInt::root(4, 1) * CycInt::root(4, 3)) == mpz_class(1));
    CHECK(neg(z6) + z6 == CycInt(6));

    try {
        (void)(z6 + CycInt::root(4, 1));
        FAIL("expected MixedOrder");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::MixedOrder);
    }
}

TEST_CASE("conj and abs_squared") {
    CHECK(conj(CycInt::integer(6, 5)) == CycInt::integer(6, 5));
    CHECK(conj(CycInt::root(6, 1)).coeffs() == CycInt::root(6, 5).coeffs());
    CycInt a(6, {0, 1, 2, 0, 0, 0});
    CHECK(conj(a).coeffs() == std::vector<mpz_class>{0, 0, 0, 0, 2, 1});

    CHECK(as_integer(abs_squared(CycInt(7))) == mpz_class(0));
    CHECK(as_integer(abs_squared(CycInt::root(6, 1))) == mpz_class(1));
    CHECK(as_integer(abs_squared(CycInt::integer(4, 1) + CycInt::root(4, 1))) == mpz_class(2));
}

TEST_CASE("is_integer / as_integer") {
    CycInt all(6);
    for (int i = 0; i < 6; ++i) all.add_root(i);
    CHECK(as_integer(all) == mpz_class(0));
    CHECK_FALSE(is_integer(CycInt::root(6, 1)));
    CHECK(as_integer(CycInt::integer(6, 7)) == mpz_class(7));
    // Gauss period for q = 7: |zeta + zeta^2 + zeta^4|^2 = 2
    CycInt period(7);
    for (int e : {1, 2, 4}) period.add_root(e);
    CHECK(as_integer(abs_squared(period)) == mpz_class(2));
}

TEST_CASE("to_complex") {
    auto v = CycInt::integer(5, 3).to_complex();
    CHECK(v.real() == 3.0);
    CHECK(v.imag() == 0.0);
    auto i4 = CycInt::root(4, 1).to_complex();
    CHECK(std::abs(i4 - std::complex<double>(0, 1)) < 1e-15);
    auto z6 = CycInt::root(6, 1).to_complex();
    CHECK(std::abs(z6 - std::complex<double>(0.5, std::sqrt(3.0) / 2)) < 1e-15);
}

TEST_CASE("ring axioms and homomorphism on random elements") {
    std::mt19937_64 rng(7);
    for (std::uint32_t m : {1u, 2u, 6u, 12u, 30u, 97u, 360u, 720u}) {
        for (int trial = 0; trial < 4; ++trial) {
            const CycInt a = random_cycint(m, rng, 1'000'000);
            const CycInt b = random_cycint(m, rng, 1'000'000);
            const CycInt c = random_cycint(m, rng, 1'000'000);
            CAPTURE(m);
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * (b + c) == a * b + a * c);
            CHECK(a * b == b * a);

            const auto za = a.to_complex(), zb = b.to_complex();
            const auto prod = (a * b).to_complex();
            const double scale = std::abs(za) * std::abs(zb) + 1.0;
            CHECK(std::abs(prod - za * zb) <= 1e-9 * scale);
            CHECK(std::abs((a + b).to_complex() - (za + zb)) <= 1e-9 * (std::abs(za) + std::abs(zb) + 1.0));
            CHECK(std::abs(conj(a).to_complex() - std::conj(za)) <= 1e-9 * (std::abs(za) + 1.0));

            // |a|^2 lies in the real subring
            const CycInt n = abs_squared(a);
            CHECK(conj(n) == n);
        }
    }
}

TEST_CASE("equality is decided modulo Phi_m") {
    // 1 + zeta_3 + zeta_3^2 = 0 with different coefficient vectors
    CycInt lhs(3, {1, 1, 1});
    CHECK(lhs == CycInt(3));
    CycInt twos(3, {2, 2, 2});
    CHECK(twos == lhs);
    CHECK_FALSE(CycInt::root(12, 1) == CycInt::root(12, 5));
}
