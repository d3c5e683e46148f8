#include "hbops/error.hpp"
#include "hbops/hahn_banach.hpp"

#include "oracles/corpus.hpp"
#include "oracles/oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace hbops;
using hbops::testing::Rng;

namespace {

LinOperator remark_operator() {
    return LinOperator(RationalMatrix::identity(3), SpaceHandle::l1(3), hbops::testing::remark_space(3, Rational(1, 10)));
}

RationalMatrix outer(const RationalVector& y, const RationalVector& x) {
    RationalMatrix m(y.size(), x.size());
    for (std::size_t i = 0; i < y.size(); ++i)
        for (std::size_t j = 0; j < x.size(); ++j) m(i, j) = y[i] * x[j];
    return m;
}

LinOperator random_rank_one(Rng& rng) {
    std::uniform_int_distribution<std::size_t> dim(2, 4);
    const std::size_t n = dim(rng), m = dim(rng);
    RationalVector x, y;
    do x = hbops::testing::random_vector(rng, n, 3, 2); while (is_zero(x));
    do y = hbops::testing::random_vector(rng, m, 3, 2); while (is_zero(y));
    return LinOperator(outer(y, x), hbops::testing::random_polytope(rng, n, 1), hbops::testing::random_polytope(rng, m, 1));
}

} // namespace

TEST_CASE("sup-norm embeddings") {
    const LinfEmbedding cube = embed_linf(SpaceHandle::linf(3));
    CHECK(cube.size() == 3);
    auto coords = cube.coordinates;
    for (auto& c : coords)
        if (c < negated(c)) c = negated(c);
    canonicalize(coords);
    CHECK(coords == std::vector<RationalVector>{unit_vector(3, 2), unit_vector(3, 1), unit_vector(3, 0)});

    const LinfEmbedding diamond = embed_linf(SpaceHandle::l1(2));
    CHECK(diamond.size() == 2);
    for (const auto& c : diamond.coordinates) CHECK((abs(c[0]) == 1 && abs(c[1]) == 1));
    CHECK(rank(diamond.coordinates, 2) == 2);

    CHECK_THROWS_AS(embed_linf(SpaceHandle::l2(2)), DomainError);
}

TEST_CASE("embedding is an isometry on random polytopes") {
    Rng rng(hbops::oracles::seed(51));
    for (int trial = 0; trial < 5; ++trial) {
        const SpaceHandle x = hbops::testing::random_polytope(rng, 2 + trial % 3, 2);
        const LinfEmbedding e = embed_linf(x);
        for (int k = 0; k < 100; ++k) {
            const RationalVector v = hbops::testing::random_vector(rng, x.dim(), 5, 4);
            Rational best = 0;
            for (const auto& c : e.coordinates) best = std::max<Rational>(best, abs(dot(c, v)));
            CHECK(norm(x, v).exact == best);
        }
    }
}

TEST_CASE("minimal extension norms") {
    Rng rng(hbops::oracles::seed(52));
    for (int trial = 0; trial < 10; ++trial) {
        const LinOperator t = random_rank_one(rng);
        CHECK(min_extension_norm(t) == *op_norm(t).value.exact);
    }
    for (std::size_t n = 1; n <= 4; ++n)
        CHECK(min_extension_norm(LinOperator(RationalMatrix::identity(n), SpaceHandle::linf(n), SpaceHandle::linf(n))) == 1);

    const MinExtension me = min_extension(remark_operator());
    CHECK(me.value > 1);
    CHECK(me.value == Rational(15, 11));
    CHECK(me.extension * me.embedding.matrix(3) == RationalMatrix::identity(3));
    CHECK(linf_operator_norm(me.extension, remark_operator().codomain()) == me.value);

    CHECK_THROWS_AS(min_extension_norm(LinOperator(RationalMatrix::identity(2), SpaceHandle::l2(2), SpaceHandle::l1(2))),
                    DomainError);
}

TEST_CASE("Hahn-Banach decisions") {
    const HBVerdict remark = is_hahn_banach(remark_operator());
    CHECK(remark.kind == VerdictKind::NotHB);
    CHECK(remark.gap == Rational(4, 11));
    CHECK(remark.op_norm.exact == Rational(1));

    Rng rng(hbops::oracles::seed(53));
    for (int trial = 0; trial < 5; ++trial) CHECK(is_hahn_banach(random_rank_one(rng)).kind == VerdictKind::IsHB);

    // Identity on l1^2 is a rank-2 Hahn-Banach operator (f(linf^2) + f(l1^2) + 1 = 3).
    CHECK(is_hahn_banach(LinOperator(RationalMatrix::identity(2), SpaceHandle::l1(2), SpaceHandle::l1(2))).kind ==
          VerdictKind::IsHB);

    const HBVerdict smooth = is_hahn_banach(LinOperator(RationalMatrix::identity(2), SpaceHandle::l2(2), SpaceHandle::l2(2)), nullptr, 8);
    CHECK(smooth.kind == VerdictKind::LowerBoundOnly);
    CHECK(smooth.bound > 1);
}

TEST_CASE("IsHB extensions restrict to T and keep its norm") {
    Rng rng(hbops::oracles::seed(54));
    for (int trial = 0; trial < 8; ++trial) {
        const SpaceHandle x = hbops::testing::random_polytope(rng, 2, 1 + trial % 2);
        const SpaceHandle y = trial % 2 ? SpaceHandle::linf(2) : hbops::testing::random_polytope(rng, 2, 1);
        const LinOperator t(hbops::testing::random_matrix(rng, 2, 2, 2, 2), x, y);
        if (t.rank() == 0) continue;
        const HBVerdict v = is_hahn_banach(t);
        if (v.kind != VerdictKind::IsHB) continue;
        REQUIRE(v.extension);
        REQUIRE(v.embedding);
        const RationalMatrix j = v.embedding->matrix(2);
        CHECK(*v.extension * j == t.matrix());
        const LinOperator e(*v.extension, SpaceHandle::linf(j.rows()), y);
        CHECK(op_norm(e).value.exact == op_norm(t).value.exact);
    }
}

TEST_CASE("verdicts are invariant under scaling") {
    const LinOperator r = remark_operator();
    for (const Rational& a : {Rational(2), Rational(-1), Rational(1, 3), Rational(-7, 5)}) {
        const LinOperator s = scale(r, a);
        CHECK(is_hahn_banach(s).kind == VerdictKind::NotHB);
        CHECK(min_extension_norm(s) == abs(a) * min_extension_norm(r));
    }
    const LinOperator id(RationalMatrix::identity(2), SpaceHandle::l1(2), SpaceHandle::l1(2));
    CHECK(is_hahn_banach(scale(id, Rational(-5, 2))).kind == VerdictKind::IsHB);
}

TEST_CASE("lower bounds from nets") {
    const LinOperator one(RationalMatrix{{1, 2}}, SpaceHandle::l2(2), SpaceHandle::l2(1));
    CHECK(hb_lower_bound(one, 16) <= op_norm(one).value.approx + 1e-9);

    CHECK(std::fabs(hb_lower_bound(LinOperator(RationalMatrix::identity(1), SpaceHandle::l2(1), SpaceHandle::l2(1)), 8) - 1) <
          1e-12);

    const LinOperator id(RationalMatrix::identity(2), SpaceHandle::l2(2), SpaceHandle::l2(2));
    const double b8 = hb_lower_bound(id, 8), b16 = hb_lower_bound(id, 16);
    CHECK(b8 <= b16 + 1e-12);
    CHECK(b8 > 1.2);

    // On polytopal instances the bound never exceeds the exact minimal extension.
    const LinOperator r = remark_operator();
    CHECK(hb_lower_bound(r, 8) <= to_double(min_extension_norm(r)) + 1e-9);
    const LinOperator d(RationalMatrix::identity(2), SpaceHandle::l1(2), SpaceHandle::l1(2));
    CHECK(hb_lower_bound(d, 8) <= to_double(min_extension_norm(d)) + 1e-9);

    CHECK_THROWS_AS(hb_lower_bound(id, 1), DomainError);
}

TEST_CASE("support-set condition at norming points") {
    const Theorem1Report r = theorem1_verify(remark_operator());
    CHECK(r.rank == 3);
    CHECK(r.all_pass);
    CHECK(r.points.size() == 6);
    for (const auto& p : r.points) {
        CHECK(p.is_vertex);
        CHECK(p.d == 2);
        CHECK(p.support_dim == 2);
        CHECK(p.required == 0);
    }

    const LinOperator one(RationalMatrix{{1, 0}, {0, 0}}, SpaceHandle::l1(2), SpaceHandle::linf(2));
    const Theorem1Report r1 = theorem1_verify(one);
    CHECK(r1.all_pass);
    for (const auto& p : r1.points) CHECK(p.required <= 0);

    CHECK_THROWS_AS(theorem1_verify(scale(one, 2)), DomainError);
}

TEST_CASE("corollary bound") {
    CHECK(corollary_max_rank(SpaceHandle::l2(2), SpaceHandle::l2(2)) == 1);
    CHECK(corollary_max_rank(SpaceHandle::l1(2), SpaceHandle::l1(2)) == 2);
    CHECK(corollary_max_rank(SpaceHandle::l2(4), SpaceHandle::sum_inf({SpaceHandle::l2(2), SpaceHandle::l2(2)})) == 3);
}

TEST_CASE("constructions") {
    const Construction c1 = construct_rank_k(SpaceHandle::l2(2), SpaceHandle::l2(2), 1);
    CHECK(c1.op.rank() == 1);
    CHECK(c1.certificate.atoms.size() == 1);
    CHECK(verify_certificate(c1.certificate).valid);
    CHECK(std::fabs(op_norm(c1.op).value.approx - 1) < 1e-9);

    const Construction c2 = construct_rank_k(SpaceHandle::l1(2), SpaceHandle::l1(2), 2);
    CHECK(c2.op.rank() == 2);
    CHECK(verify_certificate(c2.certificate).valid);
    CHECK(is_hahn_banach(c2.op).kind == VerdictKind::IsHB);
    CHECK(op_norm(c2.op).value.exact == Rational(1));
    CHECK(c2.op.apply(c2.x0) == c2.y0);

    const Construction c3 =
        construct_rank_k(SpaceHandle::sum_one({SpaceHandle::l2(2), SpaceHandle::l2(2)}), SpaceHandle::l2(4), 3);
    CHECK(c3.op.rank() == 3);
    const CertificateCheck chk = verify_certificate(c3.certificate);
    CHECK(chk.valid);
    CHECK(chk.norm.approx <= 1 + 1e-9);
    CHECK(std::fabs(hbops::oracles::brute_certificate_norm(c3.certificate).approx - chk.norm.approx) <= 1e-12);

    CHECK_THROWS_AS(construct_rank_k(SpaceHandle::l2(2), SpaceHandle::l2(2), 2), DomainError);
    CHECK_THROWS_AS(construct_rank_k(SpaceHandle::l1(2), SpaceHandle::l1(2), 0), DomainError);
}

TEST_CASE("certificate verification") {
    const SpaceHandle x = SpaceHandle::l2(2), y = SpaceHandle::l2(2);
    const RationalVector p{Rational(3, 5), Rational(4, 5)}, v{1, 0};
    ExtensionCertificate c{{{p, v}}, LinOperator(outer(v, p), x, y), 1};
    const CertificateCheck ok = verify_certificate(c);
    CHECK(ok.valid);
    CHECK(ok.norm.exact == Rational(1));
    CHECK(hbops::oracles::brute_certificate_norm(c).exact == Rational(1));

    const RationalVector v2 = scaled(v, 2);
    ExtensionCertificate bad{{{p, v2}}, LinOperator(outer(v2, p), x, y), 1};
    const CertificateCheck no = verify_certificate(bad);
    CHECK(!no.valid);
    CHECK(!no.norm_ok);
    CHECK(no.norm.exact == Rational(2));
    CHECK(!no.diagnostics.empty());

    ExtensionCertificate wrong_rank = c;
    wrong_rank.rank = 2;
    CHECK(!verify_certificate(wrong_rank).rank_ok);

    // Two atoms with equal vectors add up under the aligned sign pattern.
    ExtensionCertificate twin{{{p, v}, {negated(p), v}}, LinOperator(RationalMatrix(2, 2), x, y), 0};
    CHECK(hbops::oracles::brute_certificate_norm(twin).exact == Rational(2));
}
