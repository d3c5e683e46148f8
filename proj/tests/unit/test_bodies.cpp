#include "hbops/bodies.hpp"
#include "hbops/error.hpp"
#include "hbops/lp.hpp"

#include "oracles/corpus.hpp"
#include "oracles/oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace hbops;
using hbops::testing::Rng;

namespace {

bool contains(const std::vector<RationalVector>& vs, const RationalVector& v) {
    return std::find(vs.begin(), vs.end(), v) != vs.end();
}

Rational exact_norm(const SpaceHandle& s, const RationalVector& v) {
    const NormValue n = norm(s, v);
    REQUIRE(n.is_exact());
    return *n.exact;
}

} // namespace

TEST_CASE("norms of l1 and linf") {
    const RationalVector v{1, -2, 3};
    CHECK(exact_norm(SpaceHandle::l1(3), v) == 6);
    CHECK(exact_norm(SpaceHandle::linf(3), v) == 3);
    CHECK(norm(SpaceHandle::l2(2), RationalVector{3, 4}).exact == Rational(5));
    CHECK(std::fabs(norm(SpaceHandle::l2(2), RationalVector{1, 1}).approx - std::sqrt(2.0)) < 1e-12);
    CHECK(!norm(SpaceHandle::l2(2), RationalVector{1, 1}).is_exact());
}

TEST_CASE("normalized vectors land on the boundary of polytopes") {
    Rng rng(hbops::oracles::seed(31));
    for (int trial = 0; trial < 15; ++trial) {
        const SpaceHandle s = hbops::testing::random_polytope(rng, 2 + trial % 3, 2);
        const auto& poly = s.materialize();
        const RationalVector v = hbops::testing::random_vector(rng, s.dim(), 4, 3);
        if (is_zero(v)) continue;
        const RationalVector u = scaled(v, 1 / exact_norm(s, v));
        Rational top = dot(poly.normals[0], u);
        for (const auto& a : poly.normals) {
            CHECK(dot(a, u) <= 1);
            top = std::max(top, dot(a, u));
        }
        CHECK(top == 1);
        CHECK(on_unit_sphere(s, u));
    }
}

TEST_CASE("polar bodies") {
    CHECK(SpaceHandle::linf(3).polar().materialize().vertices == SpaceHandle::l1(3).materialize().vertices);
    const SpaceHandle one = SpaceHandle::sum_one({SpaceHandle::l2(2), SpaceHandle::l2(2)});
    CHECK(one.polar().same_expression(SpaceHandle::sum_inf({SpaceHandle::l2(2), SpaceHandle::l2(2)})));
    CHECK(SpaceHandle::pball(3, Exponent::rational(Rational(3))).polar().exponent() ==
          Exponent::rational(Rational(3, 2)));
}

TEST_CASE("bipolar identity on random polytopes") {
    Rng rng(hbops::oracles::seed(32));
    for (int trial = 0; trial < 10; ++trial) {
        const SpaceHandle s = hbops::testing::random_polytope(rng, 2 + trial % 3, 3);
        CHECK(s.polar().polar().materialize().vertices == s.materialize().vertices);
    }
}

TEST_CASE("materialized prism over a rotated square") {
    const SpaceHandle prism = SpaceHandle::sum_inf({SpaceHandle::l1(2), SpaceHandle::l1(1)});
    const auto& p = prism.materialize();
    CHECK(p.vertices.size() == 8);
    CHECK(p.normals.size() == 6);
    const SpaceHandle disk = SpaceHandle::l2(2);
    CHECK_THROWS_AS(disk.materialize(), DomainError);
}

TEST_CASE("the counterexample body") {
    const SpaceHandle y = hbops::testing::remark_space(3, Rational(1, 10));
    const auto& p = y.materialize();
    // Facets: 6 from the cube and 8 from the scaled cross-polytope.
    CHECK(p.normals.size() == 14);
    auto again = vertex_enumeration(p.normals, 3);
    canonicalize(again);
    CHECK(again == p.vertices);
    for (std::size_t i = 0; i < 3; ++i)
        for (const RationalVector& e : {unit_vector(3, i), negated(unit_vector(3, i))}) {
            // +-e_i sit inside a square facet of the cube part, not at a vertex.
            CHECK(on_unit_sphere(y, e));
            CHECK(!contains(p.vertices, e));
            CHECK(max_support_dim(y, e) == 2);
            CHECK(exposed_face(y, e).dimension == 2);
        }
}

TEST_CASE("exposed faces of the cube and cross-polytope") {
    const SpaceHandle cube = SpaceHandle::linf(3);
    const FaceDescriptor facet = exposed_face(cube, RationalVector{1, 0, 0});
    CHECK(facet.dimension == 2);
    CHECK(facet.vertices.size() == 4);

    const FaceDescriptor corner = exposed_face(cube, RationalVector{1, 1, 1});
    CHECK(corner.dimension == 0);
    CHECK(corner.vertices == std::vector<RationalVector>{RationalVector{1, 1, 1}});

    const FaceDescriptor tri = exposed_face(SpaceHandle::l1(3), RationalVector{1, 1, 1});
    CHECK(tri.dimension == 2);
    CHECK(tri.vertices.size() == 3);
    for (const auto& v : tri.vertices) CHECK(dot(RationalVector{1, 1, 1}, v) == 1);

    CHECK(face_dim(SpaceHandle::l2(3), RationalVector{1, 2, 2}) == 0);
}

TEST_CASE("f of basic spaces") {
    CHECK(compute_f(SpaceHandle::linf(3)).value == 2);
    CHECK(compute_f(SpaceHandle::l2(2)).value == 0);
    CHECK(compute_f(SpaceHandle::sum_one({SpaceHandle::l2(2), SpaceHandle::l2(2)})).value == 1);
    CHECK(compute_f(SpaceHandle::sum_inf({SpaceHandle::l2(2), SpaceHandle::l2(2)})).value == 2);
    CHECK(compute_f(SpaceHandle::scale(Rational(5, 2), SpaceHandle::l1(4))).value == 3);
    CHECK(compute_f(SpaceHandle::sum_one({SpaceHandle::l1(2), SpaceHandle::l1(2)})).value == 3);
    CHECK(compute_f(SpaceHandle::sum_inf({SpaceHandle::l1(2), SpaceHandle::l1(1)})).value == 2);
}

TEST_CASE("f witnesses pass their own check") {
    for (const SpaceHandle& s :
         {SpaceHandle::linf(3), SpaceHandle::l1(3), SpaceHandle::l2(3),
          SpaceHandle::sum_one({SpaceHandle::l2(2), SpaceHandle::linf(2)}),
          SpaceHandle::sum_inf({SpaceHandle::l2(2), SpaceHandle::l1(1)}),
          hbops::testing::remark_space(3, Rational(1, 10))}) {
        const FResult f = compute_f(s);
        CHECK(f.witness.directions.size() == f.value);
        CHECK(check_witness(s, f.witness).empty());
    }
}

TEST_CASE("compositional f matches brute force on random composites") {
    Rng rng(hbops::oracles::seed(33));
    for (int trial = 0; trial < 20; ++trial) {
        const SpaceHandle s = hbops::testing::random_composite(rng);
        INFO(s.describe());
        CHECK(compute_f(s).value == hbops::oracles::brute_f(s));
    }
    CHECK(hbops::oracles::brute_f(SpaceHandle::linf(3)) == 2);
}

TEST_CASE("d examples") {
    CHECK(compute_d(SpaceHandle::l1(3), unit_vector(3, 0)) == 2);
    CHECK(compute_d(SpaceHandle::l2(2), RationalVector{Rational(3, 5), Rational(4, 5)}) == 0);
    CHECK(compute_d(SpaceHandle::linf(2), RationalVector{1, 1}) == 1);
    CHECK_THROWS_AS(compute_d(SpaceHandle::linf(2), RationalVector{2, 0}), DomainError);
}

TEST_CASE("d equals the dimension of the polar face") {
    Rng rng(hbops::oracles::seed(34));
    for (int trial = 0; trial < 10; ++trial) {
        const SpaceHandle s = hbops::testing::random_polytope(rng, 2 + trial % 3, 2);
        for (const auto& v : s.materialize().vertices)
            CHECK(compute_d(s, v) == exposed_face(s.polar(), v).dimension);
    }
}

TEST_CASE("norm symmetry and duality") {
    Rng rng(hbops::oracles::seed(35));
    for (int trial = 0; trial < 10; ++trial) {
        const SpaceHandle s = trial % 2 ? hbops::testing::random_polytope(rng, 3, 2) : hbops::testing::random_composite(rng);
        const SpaceHandle polar = s.polar();
        const auto& polar_vertices = polar.materialize().vertices;
        for (int k = 0; k < 5; ++k) {
            const RationalVector v = hbops::testing::random_vector(rng, s.dim(), 4, 3);
            const Rational nv = exact_norm(s, v);
            CHECK(nv == exact_norm(s, negated(v)));
            Rational best = 0;
            for (const auto& w : polar_vertices) {
                const Rational pair = abs(dot(v, w));
                CHECK(pair <= nv * exact_norm(polar, w));
                best = std::max(best, pair);
            }
            CHECK(best == nv);
        }
    }
}

TEST_CASE("invalid bodies are rejected") {
    CHECK_THROWS_WITH_AS(SpaceHandle::polytope_v({RationalVector{1, 0}, RationalVector{0, 1}, RationalVector{-1, -1}}),
                         doctest::Contains("not symmetric"), ValidationError);
    CHECK_THROWS_AS(SpaceHandle::polytope_v({RationalVector{1, 0}, RationalVector{-1, 0}}), ValidationError);
    CHECK_THROWS_AS(SpaceHandle::scale(0, SpaceHandle::l1(2)), ValidationError);
    CHECK_THROWS_AS(SpaceHandle::intersect({SpaceHandle::l1(2), SpaceHandle::l2(2)}), ValidationError);
}

TEST_CASE("polytope faces list") {
    // Square: 4 edges (faces with at least two vertices).
    CHECK(polytope_faces(SpaceHandle::linf(2)).size() == 4);
    // Cube: 12 edges and 6 facets.
    CHECK(polytope_faces(SpaceHandle::linf(3)).size() == 18);
}
