#include "hbops/error.hpp"
#include "hbops/operators.hpp"

#include "oracles/corpus.hpp"
#include "oracles/oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace hbops;
using hbops::testing::Rng;

namespace {

std::vector<RationalVector> sorted(std::vector<RationalVector> v) {
    canonicalize(v);
    return v;
}

std::vector<RationalVector> signed_units(std::size_t n) {
    std::vector<RationalVector> out;
    for (std::size_t i = 0; i < n; ++i) {
        out.push_back(unit_vector(n, i));
        out.push_back(negated(unit_vector(n, i)));
    }
    return out;
}

} // namespace

TEST_CASE("identity l1 -> linf") {
    const LinOperator t(RationalMatrix::identity(2), SpaceHandle::l1(2), SpaceHandle::linf(2));
    const NormReport r = op_norm(t);
    CHECK(r.exact_path);
    CHECK(r.value.exact == Rational(1));
    CHECK(r.attaining_vertices == 4);
    const std::vector<RationalVector> verts(r.attainment_points.begin(), r.attainment_points.begin() + 4);
    CHECK(sorted(verts) == sorted(signed_units(2)));
}

TEST_CASE("identity linf -> l1") {
    const LinOperator t(RationalMatrix::identity(2), SpaceHandle::linf(2), SpaceHandle::l1(2));
    const NormReport r = op_norm(t);
    CHECK(r.value.exact == Rational(2));
    CHECK(r.attaining_vertices == 4);
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(abs(r.attainment_points[i][0]) == 1);
        CHECK(abs(r.attainment_points[i][1]) == 1);
    }
    CHECK(std::fabs(hbops::oracles::brute_op_norm(t, 100000, 7) - 2) < 1e-3);
}

TEST_CASE("the counterexample operator attains its norm only at the unit vectors") {
    const LinOperator t(RationalMatrix::identity(3), SpaceHandle::l1(3),
                        hbops::testing::remark_space(3, Rational(1, 10)));
    const NormReport r = op_norm(t);
    CHECK(r.value.exact == Rational(1));
    CHECK(r.attaining_vertices == 6);
    CHECK(sorted(r.attainment_points) == sorted(signed_units(3)));
    for (const auto& f : r.attainment_faces) CHECK(f.dimension == 0);
    CHECK(std::fabs(hbops::oracles::brute_op_norm(t, 100000, 8) - 1) < 1e-3);
}

TEST_CASE("attainment points have the operator norm") {
    Rng rng(hbops::oracles::seed(41));
    for (int trial = 0; trial < 10; ++trial) {
        const SpaceHandle x = hbops::testing::random_polytope(rng, 3, 2);
        const SpaceHandle y = trial % 2 ? hbops::testing::random_polytope(rng, 2, 2) : SpaceHandle::l1(2);
        const LinOperator t(hbops::testing::random_matrix(rng, 2, 3, 3, 2), x, y);
        const NormReport r = op_norm(t);
        REQUIRE(r.value.is_exact());
        for (const auto& p : r.attainment_points) {
            CHECK(norm(x, p).exact == Rational(1));
            CHECK(norm(y, t.apply(p)).exact == r.value.exact);
        }
    }
}

TEST_CASE("adjoints") {
    const LinOperator id(RationalMatrix::identity(2), SpaceHandle::l1(2), SpaceHandle::linf(2));
    const LinOperator a = adjoint(id);
    CHECK(a.matrix() == id.matrix());
    CHECK(a.domain().same_expression(SpaceHandle::linf(2).polar()));
    CHECK(adjoint(a).matrix() == id.matrix());
    CHECK(adjoint(a).domain().materialize().vertices == id.domain().materialize().vertices);

    Rng rng(hbops::oracles::seed(42));
    for (int trial = 0; trial < 10; ++trial) {
        const LinOperator t(hbops::testing::random_matrix(rng, 3, 2, 3, 3), SpaceHandle::l1(2),
                            hbops::testing::random_polytope(rng, 3, 1));
        const LinOperator ts = adjoint(t);
        const RationalVector x = hbops::testing::random_vector(rng, 2, 5, 4);
        const RationalVector ys = hbops::testing::random_vector(rng, 3, 5, 4);
        CHECK(dot(t.apply(x), ys) == dot(x, ts.apply(ys)));
        CHECK(op_norm(t).value.exact == op_norm(ts).value.exact);
    }
}

TEST_CASE("scaling an operator") {
    const LinOperator id(RationalMatrix::identity(2), SpaceHandle::l1(2), SpaceHandle::linf(2));
    CHECK(scale(id, 1).matrix() == id.matrix());
    CHECK(op_norm(scale(id, Rational(3, 2))).value.exact == Rational(3, 2));
    const NormReport neg = op_norm(scale(id, -1));
    CHECK(neg.value.exact == Rational(1));
    CHECK(sorted(neg.attainment_points) == sorted(op_norm(id).attainment_points));
    CHECK_THROWS_AS(scale(id, 0), DomainError);
}

TEST_CASE("shape mismatch is a validation error") {
    CHECK_THROWS_AS(LinOperator(RationalMatrix::identity(3), SpaceHandle::l1(2), SpaceHandle::l1(3)), ValidationError);
}

TEST_CASE("numeric path for smooth domains") {
    const LinOperator t(RationalMatrix::identity(2), SpaceHandle::l2(2), SpaceHandle::l1(2));
    const NormReport r = op_norm(t);
    CHECK(!r.exact_path);
    CHECK(std::fabs(r.value.approx - std::sqrt(2.0)) < 1e-9);
    const double brute = hbops::oracles::brute_op_norm(t, 100000, 9);
    CHECK(brute <= r.value.approx + 1e-12);
    CHECK(r.value.approx - brute < 1e-3);
}

TEST_CASE("exact vertex maximum agrees with dense sampling") {
    Rng rng(hbops::oracles::seed(43));
    for (int trial = 0; trial < 5; ++trial) {
        const LinOperator t(hbops::testing::random_matrix(rng, 3, 3, 3, 2), hbops::testing::random_polytope(rng, 3, 2),
                            SpaceHandle::linf(3));
        const double exact = op_norm(t).value.approx;
        const double brute = hbops::oracles::brute_op_norm(t, 100000, 10 + trial);
        CHECK(brute <= exact + 1e-9);
        CHECK(exact - brute < 1e-3);
    }
}
