#pragma once

// Hahn-Banach operators: operators that admit a norm-preserving extension to
// every superspace of their domain.
//
// Polytopal domains embed isometrically into a finite sup-norm space, which is
// injective, so the best extension to any superspace is the best extension to
// that space. Its norm is one exact LP. For the constructive direction the
// extension lives on C(S(X*)) and is represented by finitely many atoms.

#include "hbops/bodies.hpp"
#include "hbops/operators.hpp"

#include <optional>
#include <string>
#include <vector>

namespace hbops {

/// x -> (c_1.x, ..., c_N.x), an isometry of X into the N-dimensional sup-norm space.
struct LinfEmbedding {
    std::vector<RationalVector> coordinates; // one per antipodal vertex pair of B(X*)

    std::size_t size() const { return coordinates.size(); }
    RationalMatrix matrix(std::size_t dim) const { return RationalMatrix::from_rows(coordinates, dim); }
};

/// DomainError for non-polytopal X. The isometry is checked on a basis and on
/// pseudo-random rational points before returning.
LinfEmbedding embed_linf(const SpaceHandle& x);

struct MinExtension {
    Rational value;
    RationalMatrix extension; // dim(Y) x N, extension * J = T
    LinfEmbedding embedding;
};

/// Best extension of T through the sup-norm embedding of its domain.
/// DomainError unless domain and codomain are polytopal.
MinExtension min_extension(const LinOperator& t);
Rational min_extension_norm(const LinOperator& t);

/// Norm of an operator from the N-dimensional sup-norm space into a
/// polytopal Y: max over facet normals y* of sum_j |y*(A e_j)|.
Rational linf_operator_norm(const RationalMatrix& a, const SpaceHandle& y);

/// Q(f) = sum_a f(point_a) vector_a on C(S(X*)); its restriction to X is the
/// claimed operator.
struct ExtensionCertificate {
    struct Atom {
        RationalVector point;
        RationalVector vector;
    };
    std::vector<Atom> atoms;
    LinOperator op;
    std::size_t rank = 0;
};

struct CertificateCheck {
    bool valid = false;
    bool atoms_on_sphere = false;
    bool restriction_ok = false;
    bool norm_ok = false;
    bool rank_ok = false;
    NormValue norm;                     // sup norm of the atomic operator
    std::vector<std::string> diagnostics;
};

/// Never throws on bad certificates; returns false with diagnostics.
CertificateCheck verify_certificate(const ExtensionCertificate& c);

enum class VerdictKind { IsHB, NotHB, LowerBoundOnly };
std::string to_string(VerdictKind k);

struct HBVerdict {
    VerdictKind kind = VerdictKind::LowerBoundOnly;
    NormValue op_norm;
    std::optional<Rational> min_extension_norm; // exact path
    std::optional<Rational> gap;                // NotHB: min_extension_norm - op_norm
    std::optional<RationalMatrix> extension;    // IsHB via LP
    std::optional<LinfEmbedding> embedding;
    double bound = 0;                           // LowerBoundOnly
    std::size_t net_size = 0;
    std::string method;
};

/// Exact decision when domain and codomain are polytopal. With a polytopal
/// domain and a smooth codomain a valid certificate for T (the `hint`) proves
/// IsHB; otherwise, and for smooth domains, a lower bound is returned.
HBVerdict is_hahn_banach(const LinOperator& t, const ExtensionCertificate* hint = nullptr,
                         std::size_t net_size = 32);

/// Lower bound on the extension norm: the exact best extension for an
/// inscribed polytope of the domain (from net_size points of its sphere)
/// into a circumscribed polytope of the codomain. Nondecreasing along nested
/// nets; DomainError when the net does not span.
double hb_lower_bound(const LinOperator& t, std::size_t net_size);

struct Theorem1Point {
    RationalVector x0;
    bool is_vertex = false;
    std::size_t d = 0;              // d(x0)
    std::size_t support_dim = 0;    // largest support set of B(Y) containing T x0
    long required = 0;              // k - 1 - d(x0)
    bool pass = false;
};

struct Theorem1Report {
    std::size_t rank = 0;
    std::vector<Theorem1Point> points;
    bool all_pass = false;
    std::string scope; // which norming points were checked
};

/// Checks support_dim >= rank - 1 - d(x0) at every attainment representative.
/// DomainError unless ||T|| = 1 exactly on a polytopal domain.
Theorem1Report theorem1_verify(const LinOperator& t);

/// min(dim X, dim Y, f(X*) + f(Y) + 1).
std::size_t corollary_max_rank(const SpaceHandle& x, const SpaceHandle& y);

struct Construction {
    LinOperator op;
    ExtensionCertificate certificate;
    RationalVector x0;
    RationalVector y0;
    std::size_t m_eff = 0; // cube directions taken from S(X*)
    std::size_t n_eff = 0; // cube directions taken from S(Y)
};

/// A norm-one operator X -> Y of rank k with T x0 = y0 and an extension
/// certificate. DomainError outside 1 <= k <= corollary_max_rank(X, Y).
Construction construct_rank_k(const SpaceHandle& x, const SpaceHandle& y, std::size_t k);

} // namespace hbops
