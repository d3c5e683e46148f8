#include "hbops/bodies.hpp"
#include "hbops/error.hpp"
#include "hbops/lp.hpp"

#include <algorithm>
#include <mutex>
#include <set>

namespace hbops {

std::string to_string(BodyKind k) {
    switch (k) {
    case BodyKind::PolytopeV: return "polytopeV";
    case BodyKind::PolytopeH: return "polytopeH";
    case BodyKind::PBall: return "pball";
    case BodyKind::SumInf: return "sum_inf";
    case BodyKind::SumOne: return "sum_one";
    case BodyKind::Scale: return "scale";
    case BodyKind::Intersect: return "intersect";
    }
    return "?";
}

// ---- exponents -----------------------------------------------------------

Exponent Exponent::rational(const hbops::Rational& q) {
    if (q < 1) throw DomainError("exponent must be at least 1, got " + hbops::to_string(q));
    if (q == 1) return one();
    if (q == 2) return two();
    return {Kind::Rational, q};
}

Exponent Exponent::parse(const std::string& text) {
    if (text == "inf" || text == "infinity") return inf();
    try {
        return rational(parse_rational(text));
    } catch (const DomainError& e) {
        throw ValidationError(e.what());
    }
}

Exponent Exponent::conjugate() const {
    switch (kind) {
    case Kind::One: return inf();
    case Kind::Inf: return one();
    case Kind::Two: return two();
    case Kind::Rational: return rational(value / (value - 1));
    }
    return two();
}

std::string Exponent::to_string() const {
    switch (kind) {
    case Kind::One: return "1";
    case Kind::Two: return "2";
    case Kind::Inf: return "inf";
    case Kind::Rational: return hbops::to_string(value);
    }
    return "?";
}

std::string NormValue::to_string() const {
    if (exact) return hbops::to_string(*exact);
    return std::to_string(approx);
}

// ---- nodes ---------------------------------------------------------------

namespace detail {

struct BodyNode {
    BodyKind kind{};
    std::size_t dim = 0;
    bool polytopal = false;
    std::vector<RationalVector> data;
    std::vector<SpaceHandle> parts;
    Rational factor = 1;
    std::vector<SpaceHandle> inner; // Scale: exactly one element
    Exponent exponent;

    // Set when this node was created as the polar of a live node; the source
    // owns the strong reference, so there is no cycle.
    std::weak_ptr<const BodyNode> polar_source;

    mutable std::once_flag polar_once;
    mutable std::shared_ptr<const BodyNode> polar_cache;
    mutable std::once_flag mat_once;
    mutable std::unique_ptr<Polytope> mat_cache;
};

} // namespace detail

using detail::BodyNode;

namespace {

void require_symmetric(const std::vector<RationalVector>& pts, const char* what) {
    std::set<RationalVector, decltype(&lex_less)> s(&lex_less);
    for (const auto& p : pts) s.insert(p);
    for (const auto& p : pts)
        if (!s.count(negated(p))) throw ValidationError(std::string(what) + " not symmetric: missing -" + to_string(p));
}

std::size_t check_point_set(const std::vector<RationalVector>& pts, const char* what) {
    if (pts.empty()) throw ValidationError(std::string(what) + ": empty list");
    const std::size_t n = pts.front().size();
    if (n == 0) throw ValidationError(std::string(what) + ": zero dimension");
    for (const auto& p : pts)
        if (p.size() != n) throw ValidationError(std::string(what) + ": inconsistent dimensions");
    require_symmetric(pts, what);
    if (rank(pts, n) != n) throw ValidationError(std::string(what) + " not full-dimensional");
    return n;
}

// Points among `candidates` whose tight normals have rank n.
std::vector<RationalVector> filter_vertices(std::vector<RationalVector> candidates,
                                            const std::vector<RationalVector>& normals, std::size_t n) {
    canonicalize(candidates);
    std::vector<RationalVector> out;
    for (auto& v : candidates) {
        std::vector<RationalVector> tight;
        for (const auto& a : normals)
            if (dot(a, v) == 1) tight.push_back(a);
        if (tight.size() >= n && rank(tight, n) == n) out.push_back(std::move(v));
    }
    return out;
}

// Normals among `candidates` whose tight vertices span a hyperplane.
std::vector<RationalVector> filter_facets(std::vector<RationalVector> candidates,
                                          const std::vector<RationalVector>& vertices, std::size_t n) {
    canonicalize(candidates);
    std::vector<RationalVector> out;
    for (auto& a : candidates) {
        std::vector<RationalVector> tight;
        for (const auto& v : vertices)
            if (dot(a, v) == 1) tight.push_back(v);
        if (tight.size() >= n && lp::affine_dim(tight) == n - 1) out.push_back(std::move(a));
    }
    return out;
}

Polytope from_normals(std::vector<RationalVector> normals, std::size_t n) {
    Polytope p;
    p.vertices = vertex_enumeration(normals, n);
    p.normals = filter_facets(std::move(normals), p.vertices, n);
    return p;
}

Polytope from_points(std::vector<RationalVector> points, std::size_t n) {
    Polytope p;
    p.normals = vertex_enumeration(points, n);
    p.vertices = filter_vertices(std::move(points), p.normals, n);
    return p;
}

RationalVector embed(const RationalVector& v, std::size_t offset, std::size_t total) {
    RationalVector out = zeros(total);
    std::copy(v.begin(), v.end(), out.begin() + static_cast<std::ptrdiff_t>(offset));
    return out;
}

// All concatenations choosing one entry from each list.
std::vector<RationalVector> cartesian(const std::vector<const std::vector<RationalVector>*>& lists) {
    std::vector<RationalVector> acc{RationalVector{}};
    for (const auto* l : lists) {
        std::vector<RationalVector> next;
        next.reserve(acc.size() * l->size());
        for (const auto& a : acc)
            for (const auto& b : *l) {
                RationalVector c = a;
                c.insert(c.end(), b.begin(), b.end());
                next.push_back(std::move(c));
            }
        acc = std::move(next);
    }
    return acc;
}

std::vector<RationalVector> sign_vectors(std::size_t n) {
    std::vector<RationalVector> out;
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
        RationalVector v(n);
        for (std::size_t i = 0; i < n; ++i) v[i] = (mask >> i) & 1U ? -1 : 1;
        out.push_back(std::move(v));
    }
    return out;
}

std::vector<RationalVector> cross_vertices(std::size_t n) {
    std::vector<RationalVector> out;
    for (std::size_t i = 0; i < n; ++i) {
        out.push_back(unit_vector(n, i));
        out.push_back(negated(unit_vector(n, i)));
    }
    return out;
}

Polytope compute_materialization(const BodyNode& node, const SpaceHandle& self) {
    const std::size_t n = node.dim;
    Polytope p;
    switch (node.kind) {
    case BodyKind::PolytopeV: return from_points(node.data, n);
    case BodyKind::PolytopeH: return from_normals(node.data, n);
    case BodyKind::PBall:
        if (node.exponent.kind == Exponent::Kind::One) {
            p.vertices = cross_vertices(n);
            p.normals = sign_vectors(n);
        } else {
            p.vertices = sign_vectors(n);
            p.normals = cross_vertices(n);
        }
        break;
    case BodyKind::SumInf:
    case BodyKind::SumOne: {
        std::vector<const std::vector<RationalVector>*> prod;
        std::vector<RationalVector> uni;
        std::size_t offset = 0;
        const bool inf = node.kind == BodyKind::SumInf;
        for (const auto& part : node.parts) {
            const Polytope& q = part.materialize();
            prod.push_back(inf ? &q.vertices : &q.normals);
            for (const auto& u : inf ? q.normals : q.vertices) uni.push_back(embed(u, offset, n));
            offset += part.dim();
        }
        (inf ? p.normals : p.vertices) = std::move(uni);
        (inf ? p.vertices : p.normals) = cartesian(prod);
        break;
    }
    case BodyKind::Scale: {
        const Polytope& q = node.inner.front().materialize();
        for (const auto& v : q.vertices) p.vertices.push_back(scaled(v, node.factor));
        Rational inv = 1 / node.factor;
        for (const auto& a : q.normals) p.normals.push_back(scaled(a, inv));
        break;
    }
    case BodyKind::Intersect: {
        std::vector<RationalVector> all;
        for (const auto& part : node.parts) {
            const auto& nr = part.materialize().normals;
            all.insert(all.end(), nr.begin(), nr.end());
        }
        return from_normals(std::move(all), n);
    }
    }
    (void)self;
    canonicalize(p.vertices);
    canonicalize(p.normals);
    return p;
}

} // namespace

// ---- constructors --------------------------------------------------------

namespace {
std::shared_ptr<BodyNode> new_node(BodyKind k, std::size_t dim, bool polytopal) {
    auto node = std::make_shared<BodyNode>();
    node->kind = k;
    node->dim = dim;
    node->polytopal = polytopal;
    return node;
}
} // namespace

SpaceHandle SpaceHandle::polytope_v(std::vector<RationalVector> vertices) {
    std::size_t n = check_point_set(vertices, "vertex set");
    canonicalize(vertices);
    auto node = new_node(BodyKind::PolytopeV, n, true);
    node->data = std::move(vertices);
    return SpaceHandle(node);
}

SpaceHandle SpaceHandle::polytope_h(std::vector<RationalVector> normals) {
    std::size_t n = check_point_set(normals, "normal set");
    canonicalize(normals);
    auto node = new_node(BodyKind::PolytopeH, n, true);
    node->data = std::move(normals);
    return SpaceHandle(node);
}

SpaceHandle SpaceHandle::pball(std::size_t dim, Exponent p) {
    if (dim == 0) throw ValidationError("pball: dimension must be positive");
    if (p.kind == Exponent::Kind::Rational && p.value <= 1) throw ValidationError("pball: exponent must exceed 1");
    auto node = new_node(BodyKind::PBall, dim, p.is_polytopal());
    node->exponent = p;
    return SpaceHandle(node);
}

namespace {
void check_parts(const std::vector<SpaceHandle>& parts, const char* what) {
    if (parts.empty()) throw ValidationError(std::string(what) + ": no parts");
}
} // namespace

SpaceHandle SpaceHandle::sum_inf(std::vector<SpaceHandle> parts) {
    check_parts(parts, "sum_inf");
    std::size_t dim = 0;
    bool poly = true;
    for (const auto& p : parts) {
        dim += p.dim();
        poly = poly && p.is_polytopal();
    }
    auto node = new_node(BodyKind::SumInf, dim, poly);
    node->parts = std::move(parts);
    return SpaceHandle(node);
}

SpaceHandle SpaceHandle::sum_one(std::vector<SpaceHandle> parts) {
    check_parts(parts, "sum_one");
    std::size_t dim = 0;
    bool poly = true;
    for (const auto& p : parts) {
        dim += p.dim();
        poly = poly && p.is_polytopal();
    }
    auto node = new_node(BodyKind::SumOne, dim, poly);
    node->parts = std::move(parts);
    return SpaceHandle(node);
}

SpaceHandle SpaceHandle::scale(const Rational& factor, SpaceHandle inner) {
    if (sgn(factor) <= 0) throw ValidationError("scale: factor must be positive");
    auto node = new_node(BodyKind::Scale, inner.dim(), inner.is_polytopal());
    node->factor = factor;
    node->inner.push_back(std::move(inner));
    return SpaceHandle(node);
}

SpaceHandle SpaceHandle::intersect(std::vector<SpaceHandle> parts) {
    check_parts(parts, "intersect");
    for (const auto& p : parts) {
        if (!p.is_polytopal()) throw ValidationError("intersect: part " + p.describe() + " is not polytopal");
        if (p.dim() != parts.front().dim()) throw ValidationError("intersect: parts of different dimension");
    }
    auto node = new_node(BodyKind::Intersect, parts.front().dim(), true);
    node->parts = std::move(parts);
    return SpaceHandle(node);
}

// ---- accessors -----------------------------------------------------------

BodyKind SpaceHandle::kind() const { return node_->kind; }
std::size_t SpaceHandle::dim() const { return node_->dim; }
bool SpaceHandle::is_polytopal() const { return node_->polytopal; }
const std::vector<RationalVector>& SpaceHandle::data() const { return node_->data; }
const std::vector<SpaceHandle>& SpaceHandle::parts() const { return node_->parts; }
const Rational& SpaceHandle::factor() const { return node_->factor; }
const SpaceHandle& SpaceHandle::inner() const {
    if (node_->inner.empty()) throw DomainError("inner: not a scaled body");
    return node_->inner.front();
}
const Exponent& SpaceHandle::exponent() const { return node_->exponent; }

// ---- polar ---------------------------------------------------------------

namespace {

std::shared_ptr<BodyNode> build_polar(const BodyNode& node, const SpaceHandle& self) {
    std::shared_ptr<BodyNode> out;
    switch (node.kind) {
    case BodyKind::PolytopeV:
        out = new_node(BodyKind::PolytopeH, node.dim, true);
        out->data = node.data;
        break;
    case BodyKind::PolytopeH:
        out = new_node(BodyKind::PolytopeV, node.dim, true);
        out->data = node.data;
        break;
    case BodyKind::PBall:
        out = new_node(BodyKind::PBall, node.dim, node.polytopal);
        out->exponent = node.exponent.conjugate();
        break;
    case BodyKind::SumInf:
    case BodyKind::SumOne:
        out = new_node(node.kind == BodyKind::SumInf ? BodyKind::SumOne : BodyKind::SumInf, node.dim, node.polytopal);
        for (const auto& p : node.parts) out->parts.push_back(p.polar());
        break;
    case BodyKind::Scale:
        out = new_node(BodyKind::Scale, node.dim, node.polytopal);
        out->factor = 1 / node.factor;
        out->inner.push_back(node.inner.front().polar());
        break;
    case BodyKind::Intersect:
        out = new_node(BodyKind::PolytopeV, node.dim, true);
        out->data = self.materialize().normals;
        break;
    }
    return out;
}

} // namespace

SpaceHandle SpaceHandle::polar() const {
    if (auto src = node_->polar_source.lock()) return SpaceHandle(src);
    std::call_once(node_->polar_once, [&] {
        auto p = build_polar(*node_, *this);
        p->polar_source = node_;
        node_->polar_cache = std::move(p);
    });
    return SpaceHandle(node_->polar_cache);
}

const Polytope& SpaceHandle::materialize() const {
    if (!node_->polytopal) throw DomainError("materialize: " + describe() + " has a non-polytopal leaf");
    std::call_once(node_->mat_once, [&] {
        if (auto src = node_->polar_source.lock()) {
            const Polytope& q = SpaceHandle(src).materialize();
            node_->mat_cache = std::make_unique<Polytope>(Polytope{q.normals, q.vertices});
        } else {
            node_->mat_cache = std::make_unique<Polytope>(compute_materialization(*node_, *this));
        }
    });
    return *node_->mat_cache;
}

bool SpaceHandle::same_expression(const SpaceHandle& other) const {
    const BodyNode& a = *node_;
    const BodyNode& b = *other.node_;
    if (&a == &b) return true;
    if (a.kind != b.kind || a.dim != b.dim) return false;
    switch (a.kind) {
    case BodyKind::PolytopeV:
    case BodyKind::PolytopeH: return a.data == b.data;
    case BodyKind::PBall: return a.exponent == b.exponent;
    case BodyKind::Scale: return a.factor == b.factor && a.inner.front().same_expression(b.inner.front());
    case BodyKind::SumInf:
    case BodyKind::SumOne:
    case BodyKind::Intersect:
        if (a.parts.size() != b.parts.size()) return false;
        for (std::size_t i = 0; i < a.parts.size(); ++i)
            if (!a.parts[i].same_expression(b.parts[i])) return false;
        return true;
    }
    return false;
}

std::string SpaceHandle::describe() const {
    const BodyNode& a = *node_;
    auto list = [](const std::vector<SpaceHandle>& ps) {
        std::string s;
        for (std::size_t i = 0; i < ps.size(); ++i) s += (i ? ", " : "") + ps[i].describe();
        return s;
    };
    switch (a.kind) {
    case BodyKind::PolytopeV: return "polytopeV^" + std::to_string(a.dim) + "[" + std::to_string(a.data.size()) + " points]";
    case BodyKind::PolytopeH: return "polytopeH^" + std::to_string(a.dim) + "[" + std::to_string(a.data.size()) + " normals]";
    case BodyKind::PBall: return "l" + a.exponent.to_string() + "^" + std::to_string(a.dim);
    case BodyKind::SumInf: return "sum_inf(" + list(a.parts) + ")";
    case BodyKind::SumOne: return "sum_one(" + list(a.parts) + ")";
    case BodyKind::Scale: return "scale(" + hbops::to_string(a.factor) + ", " + a.inner.front().describe() + ")";
    case BodyKind::Intersect: return "intersect(" + list(a.parts) + ")";
    }
    return "?";
}

} // namespace hbops
