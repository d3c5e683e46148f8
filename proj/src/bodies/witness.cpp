// Support sets of maximal dimension with inscribed cubes.
//
// Polytopal leaves use their first canonical facet. Sums are folded pairwise
// (the sums are associative up to coordinate order, which folding keeps):
//
//   X (+)_1 Y : the face conv(F_X x 0, 0 x F_Y) exposed by (h_X, h_Y);
//               center (c_X/2, c_Y/2), directions (d/4, 0), (0, d/4) and
//               the extra segment direction (c_X/4, -c_Y/4).
//   X (+)_inf Y : the face B_X x F_Y exposed by (0, h_Y) (or the mirror
//               image), with the whole ball B_X spanned by s e_i.

#include "hbops/bodies.hpp"
#include "hbops/error.hpp"
#include "hbops/lp.hpp"

#include <algorithm>

namespace hbops {
namespace {

constexpr std::size_t kMaxCubeDim = 10;

RationalVector concat(std::span<const Rational> a, std::span<const Rational> b) {
    RationalVector out(a.begin(), a.end());
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

FResult polytope_witness(const SpaceHandle& s) {
    const Polytope& p = s.materialize();
    FResult r;
    FaceDescriptor& f = r.witness.face;
    f.functional = p.normals.front();
    for (const auto& v : p.vertices)
        if (dot(f.functional, v) == 1) f.vertices.push_back(v);
    f.carrier = p.normals;
    f.directions = lp::affine_directions(f.vertices);
    f.dimension = f.directions.size();
    if (f.dimension + 1 != s.dim()) throw InternalError("polytope_witness: first facet is not a facet");

    RationalVector c = zeros(s.dim());
    for (const auto& v : f.vertices) c = add(c, v);
    c = scaled(c, Rational(1, f.vertices.size()));
    r.witness.center = c;
    if (!f.directions.empty()) {
        Rational scale = lp::max_cube_scale(f, c, f.directions);
        for (const auto& d : f.directions) r.witness.directions.push_back(scaled(d, scale));
    }
    r.value = f.dimension;
    return r;
}

FResult smooth_witness(const SpaceHandle& s) {
    FResult r;
    r.witness.center = unit_vector(s.dim(), 0);
    r.witness.face.functional = unit_vector(s.dim(), 0);
    r.witness.face.dimension = 0;
    return r;
}

// Largest s with |s sigma| <= 1 for every sign vector sigma (rational, not
// necessarily optimal for non-polytopal bodies).
Rational whole_ball_scale(const SpaceHandle& z) {
    const std::size_t n = z.dim();
    if (z.is_polytopal()) {
        Rational worst = 0;
        for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
            RationalVector sigma(n);
            for (std::size_t i = 0; i < n; ++i) sigma[i] = (mask >> i) & 1U ? -1 : 1;
            worst = std::max(worst, *norm(z, sigma).exact);
        }
        return 1 / worst;
    }
    Rational sum = 0;
    double approx = 0;
    bool exact = true;
    for (std::size_t i = 0; i < n; ++i) {
        NormValue e = norm(z, unit_vector(n, i));
        if (e.exact) sum += *e.exact;
        else exact = false;
        approx += e.approx;
    }
    if (exact) return 1 / sum;
    return approximate((1 - 1e-6) / approx, 1L << 20);
}

WitnessedSupportSet combine_one(const WitnessedSupportSet& x, std::size_t fx, std::size_t nx,
                                const WitnessedSupportSet& y, std::size_t fy, std::size_t ny) {
    WitnessedSupportSet w;
    const Rational half(1, 2), quarter(1, 4);
    w.center = concat(scaled(x.center, half), scaled(y.center, half));
    for (const auto& d : x.directions) w.directions.push_back(concat(scaled(d, quarter), zeros(ny)));
    for (const auto& d : y.directions) w.directions.push_back(concat(zeros(nx), scaled(d, quarter)));
    w.directions.push_back(concat(scaled(x.center, quarter), scaled(y.center, -quarter)));
    w.face.functional = concat(x.face.functional, y.face.functional);
    w.face.dimension = fx + fy + 1;
    return w;
}

// Face B_Z x F_W with Z the whole-ball block; z_first places Z before W.
WitnessedSupportSet ball_times_face(const SpaceHandle& z, const WitnessedSupportSet& w, bool z_first) {
    const std::size_t nz = z.dim();
    const std::size_t nw = w.center.size();
    auto place = [&](const RationalVector& zpart, const RationalVector& wpart) {
        return z_first ? concat(zpart, wpart) : concat(wpart, zpart);
    };
    WitnessedSupportSet out;
    Rational s = whole_ball_scale(z);
    out.center = place(zeros(nz), w.center);
    for (std::size_t i = 0; i < nz; ++i) out.directions.push_back(place(scaled(unit_vector(nz, i), s), zeros(nw)));
    for (const auto& d : w.directions) out.directions.push_back(place(zeros(nz), d));
    out.face.functional = place(zeros(nz), w.face.functional);
    out.face.dimension = out.directions.size();
    return out;
}

FResult build(const SpaceHandle& s);

FResult fold_sum(const SpaceHandle& s) {
    const auto& parts = s.parts();
    FResult acc = build(parts.front());
    std::vector<SpaceHandle> prefix{parts.front()};
    std::size_t n_acc = parts.front().dim();
    for (std::size_t i = 1; i < parts.size(); ++i) {
        const SpaceHandle& y = parts[i];
        FResult ry = build(y);
        if (s.kind() == BodyKind::SumOne) {
            acc.witness = combine_one(acc.witness, acc.value, n_acc, ry.witness, ry.value, y.dim());
            acc.value = acc.value + ry.value + 1;
        } else {
            SpaceHandle x = prefix.size() == 1 ? prefix.front() : SpaceHandle::sum_inf(prefix);
            std::size_t left = n_acc + ry.value;  // B_X x F_Y
            std::size_t right = y.dim() + acc.value; // F_X x B_Y
            if (left >= right) {
                acc.witness = ball_times_face(x, ry.witness, true);
                acc.value = left;
            } else {
                acc.witness = ball_times_face(y, acc.witness, false);
                acc.value = right;
            }
        }
        prefix.push_back(y);
        n_acc += y.dim();
    }
    acc.witness.face.vertices.clear();
    acc.witness.face.carrier.clear();
    acc.witness.face.directions = acc.witness.directions;
    return acc;
}

FResult build(const SpaceHandle& s) {
    switch (s.kind()) {
    case BodyKind::PolytopeV:
    case BodyKind::PolytopeH:
    case BodyKind::Intersect: return polytope_witness(s);
    case BodyKind::PBall: return s.exponent().is_polytopal() ? polytope_witness(s) : smooth_witness(s);
    case BodyKind::Scale: {
        FResult r = build(s.inner());
        const Rational& c = s.factor();
        WitnessedSupportSet& w = r.witness;
        w.center = scaled(w.center, c);
        for (auto& d : w.directions) d = scaled(d, c);
        w.face.functional = scaled(w.face.functional, 1 / c);
        for (auto& v : w.face.vertices) v = scaled(v, c);
        for (auto& d : w.face.directions) d = scaled(d, c);
        for (auto& a : w.face.carrier) a = scaled(a, 1 / c);
        return r;
    }
    case BodyKind::SumInf:
    case BodyKind::SumOne: return fold_sum(s);
    }
    throw InternalError("compute_f: unknown body kind");
}

} // namespace

std::string check_witness(const SpaceHandle& s, const WitnessedSupportSet& w) {
    const std::size_t n = s.dim();
    const std::size_t m = w.directions.size();
    if (w.center.size() != n || w.face.functional.size() != n) return "witness vectors have the wrong dimension";
    if (m > kMaxCubeDim) return "more than " + std::to_string(kMaxCubeDim) + " cube directions";
    if (m != w.face.dimension) return "direction count differs from the face dimension";
    for (const auto& d : w.directions)
        if (d.size() != n) return "direction of the wrong dimension";
    if (m > 0 && rank(w.directions, n) != m) return "cube directions are linearly dependent";
    if (dot(w.face.functional, w.center) != 1) return "functional does not take the value 1 at the center";
    for (const auto& d : w.directions)
        if (sgn(dot(w.face.functional, d)) != 0) return "cube direction leaves the supporting hyperplane";
    Cmp dn = compare_norm(s.polar(), w.face.functional, 1);
    if (dn != Cmp::Equal && dn != Cmp::Near) return "exposing functional does not have dual norm 1";

    const bool allow_near = !s.is_polytopal();
    for (std::size_t mask = 0; mask < (std::size_t{1} << (m + 1)); ++mask) {
        RationalVector corner = mask & 1U ? negated(w.center) : w.center;
        for (std::size_t i = 0; i < m; ++i) {
            if ((mask >> (i + 1)) & 1U) corner = sub(corner, w.directions[i]);
            else corner = add(corner, w.directions[i]);
        }
        Cmp c = compare_norm(s, corner, 1);
        if (c == Cmp::Equal || (allow_near && c == Cmp::Near)) continue;
        return "cube corner " + to_string(corner) + " is not on the unit sphere";
    }
    return {};
}

FResult compute_f(const SpaceHandle& s) {
    FResult r = build(s);
    if (std::string msg = check_witness(s, r.witness); !msg.empty())
        throw InternalError("compute_f: witness verification failed for " + s.describe() + ": " + msg);
    return r;
}

} // namespace hbops
