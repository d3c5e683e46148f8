#pragma once

// Symmetric convex bodies as unit balls of finite-dimensional normed spaces.
//
// A body is an immutable expression tree: explicit polytopes (by vertices or
// by facet normals with offset 1), p-balls, l_inf / l_1 direct sums, positive
// scalings and intersections of polytopal bodies. SpaceHandle is a cheap,
// thread-safe, shared reference to such a tree; polar bodies and polytope
// materializations are computed on demand and cached.

#include "hbops/exactnum.hpp"
#include "hbops/face.hpp"

#include <compare>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace hbops {

enum class BodyKind { PolytopeV, PolytopeH, PBall, SumInf, SumOne, Scale, Intersect };

std::string to_string(BodyKind k);

/// Exponent of an l_p ball: 1, 2, infinity, or a rational 1 < q < infinity.
struct Exponent {
    enum class Kind { One, Two, Inf, Rational };
    Kind kind = Kind::Two;
    hbops::Rational value; // Kind::Rational only

    static Exponent one() { return {Kind::One, 1}; }
    static Exponent two() { return {Kind::Two, 2}; }
    static Exponent inf() { return {Kind::Inf, 0}; }
    /// Normalizes 1 and 2 to their named kinds; DomainError unless q >= 1.
    static Exponent rational(const hbops::Rational& q);
    static Exponent parse(const std::string& text);

    Exponent conjugate() const;
    bool is_polytopal() const { return kind == Kind::One || kind == Kind::Inf; }
    std::string to_string() const;
    bool operator==(const Exponent& o) const { return kind == o.kind && (kind != Kind::Rational || value == o.value); }
};

/// Explicit double representation of a polytopal unit ball.
struct Polytope {
    std::vector<RationalVector> vertices; // irredundant, lexicographically sorted
    std::vector<RationalVector> normals;  // facet normals with offset 1, irredundant, sorted
};

/// Gauge value: exact whenever the value is rational and provably so,
/// otherwise a double.
struct NormValue {
    std::optional<Rational> exact;
    double approx = 0.0;

    static NormValue of(const Rational& r) { return {r, r.get_d()}; }
    static NormValue inexact(double d) { return {std::nullopt, d}; }
    bool is_exact() const { return exact.has_value(); }
    std::string to_string() const;
};

/// Outcome of comparing a gauge with a rational. Near means the comparison
/// could not be decided exactly and the values agree to 1e-12 relative.
enum class Cmp { Less, Equal, Greater, Near };

namespace detail {
struct BodyNode;
}

class SpaceHandle {
  public:
    // Constructors validate symmetry and full dimension (ValidationError).
    static SpaceHandle polytope_v(std::vector<RationalVector> vertices);
    static SpaceHandle polytope_h(std::vector<RationalVector> normals);
    static SpaceHandle pball(std::size_t dim, Exponent p);
    static SpaceHandle sum_inf(std::vector<SpaceHandle> parts);
    static SpaceHandle sum_one(std::vector<SpaceHandle> parts);
    static SpaceHandle scale(const Rational& factor, SpaceHandle inner);
    static SpaceHandle intersect(std::vector<SpaceHandle> parts);

    // Shorthands.
    static SpaceHandle l1(std::size_t n) { return pball(n, Exponent::one()); }
    static SpaceHandle l2(std::size_t n) { return pball(n, Exponent::two()); }
    static SpaceHandle linf(std::size_t n) { return pball(n, Exponent::inf()); }

    BodyKind kind() const;
    std::size_t dim() const;
    bool is_polytopal() const;

    const std::vector<RationalVector>& data() const;   // PolytopeV vertices / PolytopeH normals
    const std::vector<SpaceHandle>& parts() const;     // sums and intersections
    const Rational& factor() const;                    // Scale
    const SpaceHandle& inner() const;                  // Scale
    const Exponent& exponent() const;                  // PBall

    /// The dual space; its unit ball is the polar body.
    SpaceHandle polar() const;

    /// V- and H-representation; ValidationError for non-polytopal bodies.
    const Polytope& materialize() const;

    /// Structural identity of the expression trees.
    bool same_expression(const SpaceHandle& other) const;
    std::string describe() const;

  private:
    explicit SpaceHandle(std::shared_ptr<const detail::BodyNode> node) : node_(std::move(node)) {}
    std::shared_ptr<const detail::BodyNode> node_;
};

// ---- norms ---------------------------------------------------------------

/// Minkowski gauge of v with respect to B(S). DomainError on dimension mismatch.
NormValue norm(const SpaceHandle& s, std::span<const Rational> v);

/// Double-precision gauge (used by sampling oracles and numeric paths).
double norm_approx(const SpaceHandle& s, std::span<const double> v);

/// Sign of norm(v) - r, exact whenever decidable without irrational arithmetic.
Cmp compare_norm(const SpaceHandle& s, std::span<const Rational> v, const Rational& r);

/// norm(S, v) = 1, accepting Near results (|norm - 1| <= 1e-12).
bool on_unit_sphere(const SpaceHandle& s, std::span<const Rational> v);

/// Dual norm of a functional: norm(polar(S), h).
NormValue dual_norm(const SpaceHandle& s, std::span<const Rational> h);

// ---- faces and invariants ------------------------------------------------

/// Face of B(S) exposed by h != 0. Exact for polytopal bodies; composites
/// with smooth leaves get their dimension from the product / hull rules with
/// tie tolerance 1e-10.
FaceDescriptor exposed_face(const SpaceHandle& s, std::span<const Rational> h);

/// Dimension of the face of B(S) exposed by h.
std::size_t face_dim(const SpaceHandle& s, std::span<const Rational> h);

/// A support set together with a cube inscribed in it: every point
/// theta * center + sum_i a_i directions_i, theta = +-1, |a_i| <= 1, has norm 1.
struct WitnessedSupportSet {
    FaceDescriptor face;
    RationalVector center;
    std::vector<RationalVector> directions;
};

/// Checks the corner and face-membership conditions; returns a diagnostic
/// message on failure (empty string on success).
std::string check_witness(const SpaceHandle& s, const WitnessedSupportSet& w);

struct FResult {
    std::size_t value = 0;
    WitnessedSupportSet witness;
};

/// Maximal dimension of a support set of B(S), with a verified witness.
FResult compute_f(const SpaceHandle& s);

/// Dimension of {x* in S(X*) : x*(x) = 1}; DomainError unless norm(x) = 1.
/// UnsupportedError at points where the hull rule cannot be decided exactly.
std::size_t compute_d(const SpaceHandle& s, std::span<const Rational> x);

/// Largest dimension of a support set of B(S) containing y (norm(y) = 1).
std::size_t max_support_dim(const SpaceHandle& s, std::span<const Rational> y);

/// Vertex sets (as index lists into materialize().vertices) of all faces of a
/// polytopal body with at least two vertices.
std::vector<std::vector<std::size_t>> polytope_faces(const SpaceHandle& s);

// ---- double description --------------------------------------------------

/// Vertices of {x : a.x <= 1 for all normals a}; the region must be bounded
/// with 0 in its interior. Equivalently, facet normals of conv(points).
std::vector<RationalVector> vertex_enumeration(const std::vector<RationalVector>& normals, std::size_t dim);

} // namespace hbops
