#include "hbops/operators.hpp"
#include "hbops/error.hpp"
#include "hbops/lp.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace hbops {

LinOperator::LinOperator(RationalMatrix matrix, SpaceHandle domain, SpaceHandle codomain)
    : matrix_(std::move(matrix)), domain_(std::move(domain)), codomain_(std::move(codomain)) {
    if (matrix_.rows() != codomain_.dim() || matrix_.cols() != domain_.dim())
        throw ValidationError("operator matrix is " + std::to_string(matrix_.rows()) + "x" +
                              std::to_string(matrix_.cols()) + ", expected " + std::to_string(codomain_.dim()) + "x" +
                              std::to_string(domain_.dim()));
}

LinOperator adjoint(const LinOperator& t) {
    return LinOperator(t.matrix().transpose(), t.codomain().polar(), t.domain().polar());
}

LinOperator scale(const LinOperator& t, const Rational& alpha) {
    if (sgn(alpha) == 0) throw DomainError("scale: alpha must be nonzero");
    return LinOperator(t.matrix().scaled(alpha), t.domain(), t.codomain());
}

namespace {

constexpr double kNearTol = 1e-12;

NormReport exact_op_norm(const LinOperator& t) {
    const SpaceHandle& y = t.codomain();
    const Polytope& p = t.domain().materialize();
    const auto& verts = p.vertices;

    std::vector<NormValue> vals;
    vals.reserve(verts.size());
    std::size_t best = 0;
    for (std::size_t i = 0; i < verts.size(); ++i) {
        vals.push_back(norm(y, t.apply(verts[i])));
        const auto& a = vals[i];
        const auto& b = vals[best];
        bool better = a.exact && b.exact ? *a.exact > *b.exact : a.approx > b.approx;
        if (better) best = i;
    }
    NormReport r;
    r.exact_path = true;

    // The maximum is exact when some maximizer has an exact value r and
    // every other vertex compares <= r exactly.
    std::optional<Rational> top;
    for (std::size_t i = 0; i < vals.size(); ++i)
        if (vals[i].exact && std::fabs(vals[i].approx - vals[best].approx) <= kNearTol * std::max(1.0, vals[best].approx))
            if (!top || *vals[i].exact > *top) top = vals[i].exact;

    std::vector<bool> attains(verts.size(), false);
    bool decided = top.has_value();
    if (top) {
        for (std::size_t i = 0; i < verts.size() && decided; ++i) {
            Cmp c = vals[i].exact ? (*vals[i].exact == *top ? Cmp::Equal : *vals[i].exact < *top ? Cmp::Less : Cmp::Greater)
                                  : compare_norm(y, t.apply(verts[i]), *top);
            if (c == Cmp::Equal) attains[i] = true;
            else if (c != Cmp::Less) decided = false;
        }
    }
    if (decided) {
        r.value = NormValue::of(*top);
    } else {
        r.value = NormValue::inexact(vals[best].approx);
        for (std::size_t i = 0; i < verts.size(); ++i)
            attains[i] = std::fabs(vals[i].approx - vals[best].approx) <= kNearTol * std::max(1.0, vals[best].approx);
    }

    for (std::size_t i = 0; i < verts.size(); ++i)
        if (attains[i]) r.attainment_points.push_back(verts[i]);
    r.attaining_vertices = r.attainment_points.size();
    if (!decided) return r;

    for (const auto& face : polytope_faces(t.domain())) {
        if (!std::all_of(face.begin(), face.end(), [&](std::size_t i) { return attains[i]; })) continue;
        FaceDescriptor fd;
        RationalVector c = zeros(t.domain().dim());
        for (auto i : face) {
            fd.vertices.push_back(verts[i]);
            c = add(c, verts[i]);
        }
        c = scaled(c, Rational(1, face.size()));
        if (compare_norm(y, t.apply(c), *top) != Cmp::Equal) continue;
        RationalVector h = zeros(t.domain().dim());
        std::size_t count = 0;
        for (const auto& a : p.normals) {
            if (std::all_of(face.begin(), face.end(), [&](std::size_t i) { return dot(a, verts[i]) == 1; })) {
                h = add(h, a);
                ++count;
            }
        }
        fd.functional = scaled(h, Rational(1, count));
        fd.directions = lp::affine_directions(fd.vertices);
        fd.dimension = fd.directions.size();
        fd.carrier = p.normals;
        r.attainment_faces.push_back(std::move(fd));
        r.attainment_points.push_back(std::move(c));
    }
    return r;
}

// Point of the Euclidean unit sphere from hyperspherical angles.
std::vector<double> sphere_point(const std::vector<double>& phi) {
    std::vector<double> x(phi.size() + 1);
    double s = 1;
    for (std::size_t i = 0; i < phi.size(); ++i) {
        x[i] = s * std::cos(phi[i]);
        s *= std::sin(phi[i]);
    }
    x.back() = s;
    return x;
}

std::vector<double> apply_d(const RationalMatrix& m, const std::vector<double>& x) {
    std::vector<double> out(m.rows(), 0.0);
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out[i] += m(i, j).get_d() * x[j];
    return out;
}

NormReport numeric_op_norm(const LinOperator& t) {
    const std::size_t n = t.domain().dim();
    auto ratio = [&](const std::vector<double>& phi) {
        auto x = sphere_point(phi);
        double nx = norm_approx(t.domain(), x);
        return norm_approx(t.codomain(), apply_d(t.matrix(), x)) / nx;
    };
    NormReport r;
    if (n == 1) {
        std::vector<double> phi;
        r.value = NormValue::inexact(ratio(phi));
        r.approx_argmax = {1.0 / norm_approx(t.domain(), std::vector<double>{1.0})};
        return r;
    }

    // Net: a grid over the angles with at most ~20000 points; the last angle
    // spans [0, pi) because the ratio is even.
    const std::size_t k = std::max<std::size_t>(
        8, static_cast<std::size_t>(std::pow(20000.0, 1.0 / static_cast<double>(n - 1))));
    const double step = std::numbers::pi / static_cast<double>(k);
    std::vector<double> best_phi(n - 1, 0.0);
    double best = -1;
    std::vector<std::size_t> idx(n - 1, 0);
    while (true) {
        std::vector<double> phi(n - 1);
        for (std::size_t i = 0; i < n - 1; ++i) phi[i] = (static_cast<double>(idx[i]) + 0.5) * step;
        double v = ratio(phi);
        if (v > best) {
            best = v;
            best_phi = phi;
        }
        std::size_t i = 0;
        while (i < n - 1 && ++idx[i] == k) idx[i++] = 0;
        if (i == n - 1) break;
    }

    // Coordinate-wise golden-section refinement with a shrinking bracket.
    const double g = (std::sqrt(5.0) - 1) / 2;
    double h = step;
    for (int sweep = 0; sweep < 200 && h > 1e-12; ++sweep) {
        double before = best;
        for (std::size_t i = 0; i < n - 1; ++i) {
            double lo = best_phi[i] - h, hi = best_phi[i] + h;
            auto at = [&](double v) {
                auto phi = best_phi;
                phi[i] = v;
                return ratio(phi);
            };
            double a = hi - g * (hi - lo), b = lo + g * (hi - lo);
            double fa = at(a), fb = at(b);
            while (hi - lo > 1e-13) {
                if (fa < fb) {
                    lo = a;
                    a = b;
                    fa = fb;
                    b = lo + g * (hi - lo);
                    fb = at(b);
                } else {
                    hi = b;
                    b = a;
                    fb = fa;
                    a = hi - g * (hi - lo);
                    fa = at(a);
                }
            }
            double mid = (lo + hi) / 2;
            double fm = at(mid);
            if (fm > best) {
                best = fm;
                best_phi[i] = mid;
            }
        }
        if (best - before < 1e-14) h /= 2;
    }
    auto x = sphere_point(best_phi);
    double nx = norm_approx(t.domain(), x);
    for (auto& v : x) v /= nx;
    r.value = NormValue::inexact(best);
    r.approx_argmax = std::move(x);
    return r;
}

} // namespace

NormReport op_norm(const LinOperator& t) {
    if (t.domain().is_polytopal()) return exact_op_norm(t);
    return numeric_op_norm(t);
}

} // namespace hbops
