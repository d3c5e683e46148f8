// Lower bound on the best extension norm for spaces with smooth leaves.
//
// Let P be a symmetric polytope inside B(X) and Q a symmetric polytope
// containing B(Y). Any extension E of T : X -> Y through an injective space
// gives an extension of T : X_P -> Y_Q of norm <= |E| (extend the embedding
// X_P -> X -> l_inf first, then compose). So the exact LP value for
// (X_P, Y_Q) is a lower bound, and it grows as P grows and Q shrinks.
//
// Net points on the Euclidean circle are rational points t -> ((1-t^2),
// 2t)/(1+t^2) indexed by reduced fractions of pi, so nets whose sizes divide
// each other are nested.

#include "hbops/error.hpp"
#include "hbops/hahn_banach.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

namespace hbops {
namespace {

// The bound never exceeds the projection constant of the circumscribed
// codomain polytope, so a coarse one caps it; in the plane an octagon caps it
// at (1 + sqrt 2) / 2. Finer ones grow the exact LP beyond desk scale.
std::size_t codomain_net(std::size_t dim) { return dim == 2 ? 8 : 2 * dim * dim; }
constexpr long kMaxDen = 256;

// Rational point on the unit circle near angle pi * num / den.
RationalVector circle_point(std::size_t num, std::size_t den) {
    std::size_t g = std::gcd(num, den);
    num /= g;
    den /= g;
    const double theta = std::numbers::pi * static_cast<double>(num) / static_cast<double>(den);
    // Half-angle substitution on [0, pi) needs tan(theta/2) in [0, inf);
    // reflect through the y-axis past pi/2 to keep t bounded.
    const bool reflect = 2 * num > den;
    const double half = (reflect ? std::numbers::pi - theta : theta) / 2;
    Rational t = approximate(std::tan(half), kMaxDen);
    Rational d = 1 + t * t;
    RationalVector p{(1 - t * t) / d, 2 * t / d};
    if (reflect) p[0] = -p[0];
    return p;
}

// Deterministic directions on the Euclidean sphere, rational and, in the
// plane, exactly of length 1.
std::vector<RationalVector> sphere_net(std::size_t dim, std::size_t count) {
    std::vector<RationalVector> out;
    if (dim == 1) return {RationalVector{Rational(1)}};
    if (dim == 2) {
        const std::size_t pairs = std::max<std::size_t>(count / 2, 2);
        for (std::size_t i = 0; i < pairs; ++i) out.push_back(circle_point(i, pairs));
        return out;
    }
    for (std::size_t i = 0; i < dim; ++i) out.push_back(unit_vector(dim, i));
    std::mt19937_64 rng(0xb0d1e5);
    std::normal_distribution<double> gauss;
    while (out.size() < std::max(count / 2, dim)) {
        RationalVector v(dim);
        for (auto& c : v) c = approximate(gauss(rng), kMaxDen);
        if (!is_zero(v)) out.push_back(std::move(v));
    }
    return out;
}

// Smallest convenient rational r >= norm(s, v).
Rational norm_upper(const SpaceHandle& s, const RationalVector& v) {
    NormValue nv = norm(s, v);
    if (nv.exact) return *nv.exact;
    Rational r = approximate(nv.approx * (1 + 1e-9), 1L << 30);
    while (compare_norm(s, v, r) != Cmp::Less) r *= Rational(1000001, 1000000);
    return r;
}

SpaceHandle inscribed(const SpaceHandle& x, std::size_t net_size) {
    std::vector<RationalVector> pts;
    for (const auto& u : sphere_net(x.dim(), net_size)) {
        RationalVector p = scaled(u, 1 / norm_upper(x, u));
        pts.push_back(negated(p));
        pts.push_back(std::move(p));
    }
    if (rank(pts, x.dim()) != x.dim()) throw DomainError("hb_lower_bound: net does not span the domain");
    return SpaceHandle::polytope_v(std::move(pts));
}

SpaceHandle circumscribed(const SpaceHandle& y) {
    const SpaceHandle ys = y.polar();
    std::vector<RationalVector> normals;
    for (const auto& u : sphere_net(y.dim(), codomain_net(y.dim()))) {
        RationalVector a = scaled(u, 1 / norm_upper(ys, u));
        normals.push_back(negated(a));
        normals.push_back(std::move(a));
    }
    return SpaceHandle::polytope_h(std::move(normals));
}

} // namespace

double hb_lower_bound(const LinOperator& t, std::size_t net_size) {
    if (net_size < t.domain().dim()) throw DomainError("hb_lower_bound: net smaller than the dimension");
    SpaceHandle x = t.domain().is_polytopal() ? t.domain() : inscribed(t.domain(), net_size);
    SpaceHandle y = t.codomain().is_polytopal() ? t.codomain() : circumscribed(t.codomain());
    return min_extension_norm(LinOperator(t.matrix(), x, y)).get_d();
}

} // namespace hbops
