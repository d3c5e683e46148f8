#include "hbops/error.hpp"

#include "oracles/corpus.hpp"
#include "oracles/oracles.hpp"

#include <doctest.h>

#include <json.hpp>

using namespace hbops;

TEST_CASE("brute-force f on sums of cross-polytopes") {
    CHECK(oracles::brute_f(SpaceHandle::sum_one({SpaceHandle::l1(2), SpaceHandle::l1(2)})) == 3);
    CHECK(oracles::brute_f(SpaceHandle::sum_inf({SpaceHandle::l1(2), SpaceHandle::l1(1)})) == 2);
}

TEST_CASE("naive elimination") {
    CHECK(oracles::naive_rank({RationalVector{1, 2}, RationalVector{2, 4}}) == 1);
    const auto x = oracles::naive_solve({RationalVector{1, 1}, RationalVector{1, -1}, RationalVector{2, 0}}, {2, 0, 2});
    REQUIRE(x);
    CHECK(*x == RationalVector{1, 1});
    CHECK(!oracles::naive_solve({RationalVector{1, 1}}, {1}));
    CHECK(!oracles::naive_solve({RationalVector{1}, RationalVector{1}}, {1, 2}));
    CHECK(oracles::naive_affine_dim({RationalVector{1, 1}, RationalVector{2, 2}, RationalVector{3, 3}}) == 1);
}

TEST_CASE("sampled operator norms are lower bounds") {
    const LinOperator t(RationalMatrix{{1, 2}, {0, 1}}, SpaceHandle::l1(2), SpaceHandle::l1(2));
    const double b = oracles::brute_op_norm(t, 2000, 1);
    CHECK(b <= 3 + 1e-12);
    CHECK(b > 2.99);
}

TEST_CASE("oracle size guards") {
    lp::LPProblem big(13);
    CHECK_THROWS_AS(oracles::enumerate_basic_points(big), DomainError);
}

TEST_CASE("agreement and report lines") {
    CHECK(oracles::agree(NormValue::of(Rational(1, 3)), NormValue::of(Rational(1, 3)), 0));
    CHECK(!oracles::agree(NormValue::of(Rational(1, 3)), NormValue::of(Rational(1, 2)), 1));
    CHECK(oracles::agree(NormValue::inexact(1.0), NormValue::of(Rational(1)), 1e-12));
    const oracles::OracleReport r{"f", "2", "2", true, "linf^3"};
    const auto j = nlohmann::json::parse(r.json_line());
    CHECK(j["quantity"] == "f");
    CHECK(j["agree"] == true);
}

TEST_CASE("corpus shape") {
    const auto pairs = testing::corpus_pairs();
    CHECK(pairs.size() >= 30);
    for (const auto& p : pairs) {
        CHECK(p.x.space.dim() >= 2);
        CHECK(p.x.space.dim() <= 4);
        CHECK(p.y.space.dim() >= 2);
        CHECK(p.y.space.dim() <= 4);
    }
}
