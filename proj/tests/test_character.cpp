#include <doctest.h>

#include "charsum/character.hpp"
#include "support/oracles.hpp"

using namespace charsum;

TEST_CASE("character construction and order") {
    const auto ctx = make_ctx(7);
    CHECK(character(ctx, 0).is_principal());
    CHECK(character(ctx, 0).order() == 1);
    CHECK(character(ctx, 3).order() == 2);
    CHECK(quadratic_character(ctx).index() == 3);
    try {
        character(ctx, 6);
        FAIL("expected IndexOutOfRange");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::IndexOutOfRange);
    }

    const auto ctx5 = make_ctx(5);
    std::vector<std::uint32_t> orders;
    for (const auto& chi : all_characters(ctx5)) orders.push_back(chi.order());
    CHECK(orders == std::vector<std::uint32_t>{1, 4, 2, 4});
    CHECK(std::ranges::distance(all_characters(ctx)) == 6);
    CHECK(std::ranges::distance(all_characters(make_ctx(3))) == 2);
}

TEST_CASE("evaluation") {
    const auto ctx = make_ctx(7);
    const auto chi = quadratic_character(ctx);
    CHECK(as_integer(*chi.eval(3, Mode::exact).exact) == mpz_class(-1));
    CHECK(chi.eval(3, Mode::numeric).numeric == std::complex<double>(-1.0, 0.0));
    for (const auto& c : all_characters(ctx)) {
        CHECK(as_integer(*c.eval(1, Mode::exact).exact) == mpz_class(1));
        CHECK(c.eval(0, Mode::exact).exact->is_trivially_zero());
        CHECK(c.value(0) == std::complex<double>(0.0, 0.0));
    }
}

TEST_CASE("quadratic character agrees with Euler's criterion") {
    for (std::uint64_t p = 3; p < 300; ++p) {
        if (!oracle::is_prime(p)) continue;
        const auto ctx = make_ctx(p);
        const auto chi = quadratic_character(ctx);
        for (Residue x = 0; x < p; ++x) {
            CAPTURE(p);
            CAPTURE(x);
            CHECK(chi.value(x).real() == oracle::legendre(x, p));
        }
    }
}

TEST_CASE("values agree with the brute-force character") {
    for (std::uint64_t p : {11u, 13u, 31u}) {
        const auto ctx = make_ctx(p);
        for (std::uint32_t j = 0; j + 1 < p; ++j) {
            const oracle::BruteCharacter ref(p, j);
            const auto chi = character(ctx, j);
            const auto table = chi.value_table();
            for (Residue x = 0; x < p; ++x) {
                CHECK(std::abs(chi.value(x) - ref(x)) < 1e-12);
                CHECK(std::abs(table[x] - ref(x)) < 1e-12);
            }
        }
    }
}

TEST_CASE("multiplicativity, exhaustive p <= 61") {
    for (std::uint32_t p = 3; p <= 61; ++p) {
        if (!is_prime(p)) continue;
        const auto ctx = make_ctx(p);
        for (const auto& chi : all_characters(ctx)) {
            bool ok = true;
            for (Residue x = 1; x < p; ++x)
                for (Residue y = 1; y < p; ++y) {
                    const CycInt lhs = *chi.eval(ctx.mul(x, y), Mode::exact).exact;
                    const CycInt rhs = *chi.eval(x, Mode::exact).exact * *chi.eval(y, Mode::exact).exact;
                    ok = ok && lhs == rhs;
                }
            CAPTURE(p);
            CAPTURE(chi.index());
            REQUIRE(ok);
        }
    }
}

TEST_CASE("orthogonality relations, exact, p <= 101") {
    for (std::uint32_t p = 3; p <= 101; ++p) {
        if (!is_prime(p)) continue;
        const auto ctx = make_ctx(p);
        const std::uint32_t n = p - 1;
        // column: sum over x
        for (const auto& chi : all_characters(ctx)) {
            CycInt acc(n);
            for (Residue x = 1; x < p; ++x) acc.add_root(*chi.exponent(x));
            CAPTURE(p);
            CHECK(as_integer(acc) == mpz_class(chi.is_principal() ? n : 0));
        }
        // row: sum over characters
        for (Residue x = 1; x < p; ++x) {
            CycInt acc(n);
            for (const auto& chi : all_characters(ctx)) acc.add_root(*chi.exponent(x));
            CHECK(as_integer(acc) == mpz_class(x == 1 ? n : 0));
        }
    }
}

TEST_CASE("conjugate character") {
    for (std::uint32_t p : {7u, 13u, 29u}) {
        const auto ctx = make_ctx(p);
        for (const auto& chi : all_characters(ctx)) {
            const auto bar = chi.conjugate();
            CHECK(bar.index() == (p - 1 - chi.index()) % (p - 1));
            for (Residue x = 0; x < p; ++x)
                CHECK(*bar.eval(x, Mode::exact).exact == conj(*chi.eval(x, Mode::exact).exact));
        }
    }
}

TEST_CASE("subgroup indicator decomposition") {
    const auto ctx = make_ctx(7);
    const auto hs = subgroups(ctx);
    auto indices = [&](const Subgroup& h) {
        std::vector<std::uint32_t> out;
        for (const auto& c : subgroup_character_decomposition(ctx, h)) out.push_back(c.index());
        return out;
    };
    CHECK(indices(hs[2]) == std::vector<std::uint32_t>{0, 3});
    CHECK(indices(hs[3]) == std::vector<std::uint32_t>{0});
    CHECK(indices(hs[0]) == std::vector<std::uint32_t>{0, 1, 2, 3, 4, 5});

    for (std::uint32_t p = 3; p <= 101; ++p) {
        if (!is_prime(p)) continue;
        const auto c = make_ctx(p);
        for (const auto& h : subgroups(c)) {
            const auto psis = subgroup_character_decomposition(c, h);
            REQUIRE(psis.size() == h.index);
            for (Residue x = 1; x < p; ++x) {
                CycInt acc(p - 1);
                for (const auto& psi : psis) acc.add_root(*psi.exponent(x));
                CAPTURE(p);
                CAPTURE(x);
                CHECK(as_integer(acc) == mpz_class(h.contains(c, x) ? h.index : 0));
            }
        }
    }
}
