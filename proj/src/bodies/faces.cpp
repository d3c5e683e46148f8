#include "hbops/bodies.hpp"
#include "hbops/error.hpp"
#include "hbops/lp.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace hbops {
namespace {

constexpr double kTieTol = 1e-10;

bool materialized_leaf(const SpaceHandle& s) {
    return s.kind() == BodyKind::PolytopeV || s.kind() == BodyKind::PolytopeH || s.kind() == BodyKind::Intersect;
}

bool smooth_leaf(const SpaceHandle& s) { return s.kind() == BodyKind::PBall && !s.exponent().is_polytopal(); }

std::vector<std::span<const Rational>> blocks(const SpaceHandle& s, std::span<const Rational> v) {
    std::vector<std::span<const Rational>> out;
    std::size_t offset = 0;
    for (const auto& p : s.parts()) {
        out.push_back(v.subspan(offset, p.dim()));
        offset += p.dim();
    }
    return out;
}

// Vertices of a materialized body maximizing h, and the maximum.
std::pair<Rational, std::vector<RationalVector>> argmax_vertices(const Polytope& p, std::span<const Rational> h) {
    Rational best = dot(h, p.vertices.front());
    for (const auto& v : p.vertices) best = std::max(best, Rational(dot(h, v)));
    std::vector<RationalVector> out;
    for (const auto& v : p.vertices)
        if (dot(h, v) == best) out.push_back(v);
    return {best, out};
}

// Parts whose dual norm of h_i attains the maximum; UnsupportedError when an
// inexact tie cannot be settled.
std::vector<std::size_t> dual_argmax(const SpaceHandle& s, const std::vector<std::span<const Rational>>& hs) {
    const auto& parts = s.parts();
    std::vector<NormValue> vals;
    double top = 0;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        vals.push_back(dual_norm(parts[i], hs[i]));
        top = std::max(top, vals.back().approx);
    }
    bool all_exact = std::all_of(vals.begin(), vals.end(), [](const NormValue& v) { return v.is_exact(); });
    if (all_exact) {
        Rational m = 0;
        for (const auto& v : vals) m = std::max(m, *v.exact);
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < vals.size(); ++i)
            if (*vals[i].exact == m) out.push_back(i);
        return out;
    }
    std::vector<std::size_t> cand;
    for (std::size_t i = 0; i < vals.size(); ++i)
        if (vals[i].approx >= top - kTieTol * std::max(1.0, top)) cand.push_back(i);
    if (cand.size() == 1) return cand;

    std::optional<Rational> ref;
    for (auto i : cand)
        if (vals[i].exact && (!ref || *vals[i].exact > *ref)) ref = vals[i].exact;
    if (!ref) throw UnsupportedError("unsupported point: undecidable tie between inexact dual norms");
    std::vector<std::size_t> out;
    for (auto i : cand) {
        if (vals[i].exact) {
            if (*vals[i].exact == *ref) out.push_back(i);
            continue;
        }
        Cmp c = compare_norm(parts[i].polar(), hs[i], *ref);
        if (c == Cmp::Equal) out.push_back(i);
        else if (c != Cmp::Less) throw UnsupportedError("unsupported point: undecidable tie between dual norms");
    }
    return out;
}

std::size_t face_dim_rec(const SpaceHandle& s, std::span<const Rational> h) {
    if (materialized_leaf(s)) return lp::affine_dim(argmax_vertices(s.materialize(), h).second);
    switch (s.kind()) {
    case BodyKind::PBall: {
        const auto kind = s.exponent().kind;
        if (kind == Exponent::Kind::One) {
            Rational m = 0;
            for (const auto& x : h) m = std::max<Rational>(m, abs(x));
            std::size_t count = 0;
            for (const auto& x : h)
                if (abs(x) == m) ++count;
            return count - 1;
        }
        if (kind == Exponent::Kind::Inf)
            return static_cast<std::size_t>(std::count_if(h.begin(), h.end(), [](const Rational& x) { return sgn(x) == 0; }));
        return 0;
    }
    case BodyKind::Scale: return face_dim_rec(s.inner(), h);
    case BodyKind::SumInf: {
        auto hs = blocks(s, h);
        std::size_t total = 0;
        for (std::size_t i = 0; i < hs.size(); ++i)
            total += is_zero(hs[i]) ? s.parts()[i].dim() : face_dim_rec(s.parts()[i], hs[i]);
        return total;
    }
    case BodyKind::SumOne: {
        auto hs = blocks(s, h);
        auto top = dual_argmax(s, hs);
        std::size_t total = top.size() - 1;
        for (auto i : top) total += face_dim_rec(s.parts()[i], hs[i]);
        return total;
    }
    default: break;
    }
    throw InternalError("face_dim: unhandled body kind");
}

bool msd_needs_point(const SpaceHandle& s) {
    if (s.kind() == BodyKind::Scale) return msd_needs_point(s.inner());
    return s.kind() == BodyKind::SumInf || s.kind() == BodyKind::SumOne;
}

// y is assumed to lie on the unit sphere of s.
std::size_t msd_rec(const SpaceHandle& s, std::span<const Rational> y) {
    if (s.is_polytopal() && !msd_needs_point(s)) return s.dim() - 1;
    switch (s.kind()) {
    case BodyKind::PBall: return smooth_leaf(s) ? 0 : s.dim() - 1;
    case BodyKind::Scale: return msd_rec(s.inner(), scaled(y, 1 / s.factor()));
    case BodyKind::SumInf: {
        auto ys = blocks(s, y);
        std::optional<std::size_t> best;
        for (std::size_t j = 0; j < ys.size(); ++j) {
            const auto& part = s.parts()[j];
            if (!on_unit_sphere(part, ys[j])) continue;
            std::size_t cand = s.dim() - part.dim() + msd_rec(part, ys[j]);
            if (!best || cand > *best) best = cand;
        }
        if (!best) throw DomainError("max_support_dim: point not on the unit sphere");
        return *best;
    }
    case BodyKind::SumOne: {
        auto ys = blocks(s, y);
        std::size_t total = s.parts().size() - 1;
        for (std::size_t i = 0; i < ys.size(); ++i) {
            const auto& part = s.parts()[i];
            if (is_zero(ys[i])) {
                total += compute_f(part).value;
                continue;
            }
            if (!msd_needs_point(part)) {
                total += msd_rec(part, ys[i]);
                continue;
            }
            NormValue nv = norm(part, ys[i]);
            if (!nv.exact) throw UnsupportedError("unsupported point: block norm is not exact");
            total += msd_rec(part, scaled(ys[i], 1 / *nv.exact));
        }
        return total;
    }
    default: break;
    }
    throw InternalError("max_support_dim: unhandled body kind");
}

} // namespace

std::size_t face_dim(const SpaceHandle& s, std::span<const Rational> h) {
    if (h.size() != s.dim()) throw DomainError("face_dim: dimension mismatch");
    if (is_zero(h)) throw DomainError("exposing functional must be nonzero");
    return face_dim_rec(s, h);
}

FaceDescriptor exposed_face(const SpaceHandle& s, std::span<const Rational> h) {
    if (h.size() != s.dim()) throw DomainError("exposed_face: dimension mismatch");
    if (is_zero(h)) throw DomainError("exposing functional must be nonzero");
    FaceDescriptor f;
    if (s.is_polytopal()) {
        const Polytope& p = s.materialize();
        auto [top, verts] = argmax_vertices(p, h);
        f.functional = scaled(h, 1 / top);
        f.vertices = std::move(verts);
        f.directions = lp::affine_directions(f.vertices);
        f.dimension = f.directions.size();
        f.carrier = p.normals;
        return f;
    }
    NormValue dn = dual_norm(s, h);
    f.functional = dn.exact ? scaled(h, 1 / *dn.exact) : RationalVector(h.begin(), h.end());
    f.dimension = face_dim_rec(s, h);
    return f;
}

std::size_t compute_d(const SpaceHandle& s, std::span<const Rational> x) {
    if (x.size() != s.dim()) throw DomainError("compute_d: dimension mismatch");
    if (!on_unit_sphere(s, x)) throw DomainError("x not on the unit sphere");
    return face_dim_rec(s.polar(), x);
}

std::size_t max_support_dim(const SpaceHandle& s, std::span<const Rational> y) {
    if (y.size() != s.dim()) throw DomainError("max_support_dim: dimension mismatch");
    if (!on_unit_sphere(s, y)) throw DomainError("max_support_dim: point not on the unit sphere");
    return msd_rec(s, y);
}

std::vector<std::vector<std::size_t>> polytope_faces(const SpaceHandle& s) {
    const Polytope& p = s.materialize();
    std::vector<std::vector<std::size_t>> facets;
    for (const auto& a : p.normals) {
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < p.vertices.size(); ++i)
            if (dot(a, p.vertices[i]) == 1) idx.push_back(i);
        facets.push_back(std::move(idx));
    }
    std::set<std::vector<std::size_t>> seen(facets.begin(), facets.end());
    std::vector<std::vector<std::size_t>> queue(facets.begin(), facets.end());
    for (std::size_t q = 0; q < queue.size(); ++q) {
        for (const auto& fct : facets) {
            std::vector<std::size_t> meet;
            std::set_intersection(queue[q].begin(), queue[q].end(), fct.begin(), fct.end(), std::back_inserter(meet));
            if (meet.size() < 2 || seen.count(meet)) continue;
            seen.insert(meet);
            queue.push_back(std::move(meet));
        }
    }
    std::vector<std::vector<std::size_t>> out;
    for (const auto& f : seen)
        if (f.size() >= 2) out.push_back(f);
    return out;
}

} // namespace hbops
