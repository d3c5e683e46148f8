#pragma once

// Linear operators between finite-dimensional normed spaces.

#include "hbops/bodies.hpp"
#include "hbops/exactnum.hpp"

#include <vector>

namespace hbops {

class LinOperator {
  public:
    /// ValidationError unless matrix is dim(codomain) x dim(domain).
    LinOperator(RationalMatrix matrix, SpaceHandle domain, SpaceHandle codomain);

    const RationalMatrix& matrix() const { return matrix_; }
    const SpaceHandle& domain() const { return domain_; }
    const SpaceHandle& codomain() const { return codomain_; }

    RationalVector apply(std::span<const Rational> x) const { return matrix_.apply(x); }
    std::size_t rank() const { return hbops::rank(matrix_); }

  private:
    RationalMatrix matrix_;
    SpaceHandle domain_;
    SpaceHandle codomain_;
};

struct NormReport {
    NormValue value;
    bool exact_path = false;
    /// Attaining vertices of B(domain) first, then centroids of attainment faces.
    std::vector<RationalVector> attainment_points;
    std::size_t attaining_vertices = 0;
    std::vector<FaceDescriptor> attainment_faces;
    /// Numeric path only: the best direction found (domain norm 1).
    std::vector<double> approx_argmax;
};

/// Exact path for polytopal domains (maximum over vertices of B(domain));
/// otherwise a deterministic net search refined by golden-section search.
NormReport op_norm(const LinOperator& t);

/// Transpose between the dual spaces.
LinOperator adjoint(const LinOperator& t);

/// alpha T; DomainError for alpha = 0.
LinOperator scale(const LinOperator& t, const Rational& alpha);

} // namespace hbops
