#include "hbops/error.hpp"
#include "hbops/exactnum.hpp"

#include "oracles/corpus.hpp"
#include "oracles/oracles.hpp"

#include <doctest.h>

using namespace hbops;
using hbops::testing::Rng;

TEST_CASE("rationals parse and print canonically") {
    CHECK(parse_rational("6/4") == Rational(3, 2));
    CHECK(parse_rational("-7") == Rational(-7));
    CHECK(to_string(parse_rational("4/2")) == "2");
    CHECK(to_string(Rational(-1, 3)) == "-1/3");
    CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
    CHECK_THROWS_AS(parse_rational("abc"), ParseError);
}

TEST_CASE("rank of small matrices") {
    CHECK(rank(RationalMatrix::identity(3)) == 3);
    CHECK(rank(RationalMatrix{{1, 2}, {2, 4}}) == 1);
    CHECK(rank(RationalMatrix(2, 3)) == 0);
}

TEST_CASE("rank agrees with a naive elimination and with the transpose") {
    Rng rng(hbops::oracles::seed(11));
    for (int trial = 0; trial < 60; ++trial) {
        RationalMatrix m = hbops::testing::random_matrix(rng, 3, 4, 3, 3);
        // force some rank deficiency now and then
        if (trial % 3 == 0)
            for (std::size_t j = 0; j < 4; ++j) m(2, j) = m(0, j) * trial / 7 - m(1, j);
        CHECK(rank(m) == hbops::oracles::naive_rank(m.row_list()));
        CHECK(rank(m) == rank(m.transpose()));
    }
}

TEST_CASE("kernel basis") {
    CHECK(kernel_basis(RationalMatrix::identity(3)).empty());

    const auto k = kernel_basis(RationalMatrix{{1, -1}});
    REQUIRE(k.size() == 1);
    CHECK(k[0][0] == k[0][1]);
    CHECK(k[0][0] != 0);

    Rng rng(hbops::oracles::seed(12));
    for (int trial = 0; trial < 40; ++trial) {
        RationalMatrix m = hbops::testing::random_matrix(rng, 2 + trial % 3, 5, 2, 2);
        const auto basis = kernel_basis(m);
        CHECK(basis.size() == 5 - rank(m));
        for (const auto& v : basis) CHECK(is_zero(m.apply(v)));
        if (!basis.empty()) CHECK(hbops::oracles::naive_rank(basis) == basis.size());
    }
}

TEST_CASE("inverse and solve") {
    RationalMatrix m{{2, 1}, {1, 1}};
    CHECK(m * inverse(m) == RationalMatrix::identity(2));
    const RationalVector b{3, 2};
    CHECK(solve(m, b) == RationalVector{1, 1});
    CHECK_THROWS_AS(inverse(RationalMatrix{{1, 2}, {2, 4}}), DomainError);
}

TEST_CASE("complete_basis_annihilating examples") {
    const RationalVector x0{1, 0};
    const auto basis = complete_basis_annihilating(x0, {RationalVector{1, 0}});
    REQUIRE(basis.size() == 2);
    CHECK(basis[0] == RationalVector{1, 0});
    CHECK(basis[1] == RationalVector{0, 1});

    const RationalVector x3{1, 0, 0};
    const auto b3 = complete_basis_annihilating(x3, {RationalVector{1, 0, 0}, RationalVector{0, 1, 0}});
    REQUIRE(b3.size() == 3);
    CHECK(b3[2][0] == 0);
    CHECK(dot(b3[2], x3) == 0);
}

TEST_CASE("complete_basis_annihilating on random dim-4 instances") {
    Rng rng(hbops::oracles::seed(13));
    for (int trial = 0; trial < 30; ++trial) {
        RationalVector x0 = hbops::testing::random_vector(rng, 4, 3, 2);
        if (is_zero(x0)) continue;
        // x0* normalized to x0*(x0) = 1; the other given functionals vanish at x0.
        RationalVector f0 = unit_vector(4, 0);
        for (std::size_t j = 0; j < 4; ++j)
            if (x0[j] != 0) {
                f0 = scaled(unit_vector(4, j), 1 / x0[j]);
                break;
            }
        std::vector<RationalVector> given{f0};
        if (trial % 2 == 0) {
            RationalVector g = hbops::testing::random_vector(rng, 4, 3, 2);
            axpy(g, -dot(g, x0), f0);
            if (!is_zero(g)) given.push_back(g);
        }
        const auto basis = complete_basis_annihilating(x0, given);
        REQUIRE(basis.size() == 4);
        CHECK(hbops::oracles::naive_rank(basis) == 4);
        for (std::size_t i = 0; i < given.size(); ++i) CHECK(basis[i] == given[i]);
        for (std::size_t j = given.size(); j < 4; ++j) CHECK(dot(basis[j], x0) == 0);
    }
}

TEST_CASE("biorthogonal vectors") {
    const std::vector<RationalVector> std2{unit_vector(2, 0), unit_vector(2, 1)};
    CHECK(biorthogonal_vectors(std2) == std2);

    const auto v = biorthogonal_vectors({RationalVector{2, 0}, RationalVector{0, 2}});
    CHECK(v[0] == RationalVector{Rational(1, 2), 0});
    CHECK(v[1] == RationalVector{0, Rational(1, 2)});

    CHECK_THROWS_AS(biorthogonal_vectors({RationalVector{1, 2}, RationalVector{2, 4}}), DomainError);

    Rng rng(hbops::oracles::seed(14));
    int checked = 0;
    while (checked < 20) {
        RationalMatrix m = hbops::testing::random_matrix(rng, 4, 4, 4, 3);
        if (hbops::oracles::naive_rank(m.row_list()) < 4) continue;
        const auto f = m.row_list();
        const auto w = biorthogonal_vectors(f);
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j) CHECK(dot(f[i], w[j]) == (i == j ? 1 : 0));
        ++checked;
    }
}

TEST_CASE("rref pivots are the first nonzero columns") {
    const auto r = rref(RationalMatrix{{0, 2, 4}, {0, 1, 3}});
    CHECK(r.pivots == std::vector<std::size_t>{1, 2});
    CHECK(r.reduced == RationalMatrix{{0, 1, 0}, {0, 0, 1}});
}

TEST_CASE("rank is independent of row order") {
    Rng rng(hbops::oracles::seed(15));
    for (int trial = 0; trial < 20; ++trial) {
        auto rows = hbops::testing::random_matrix(rng, 4, 3, 2, 2).row_list();
        const std::size_t r = rank(rows, 3);
        std::reverse(rows.begin(), rows.end());
        CHECK(rank(rows, 3) == r);
    }
}
