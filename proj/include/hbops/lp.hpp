#pragma once

// Exact rational linear programming.
//
//   minimize  c.x   subject to   A x <= b,   E x = e,
//
// with each variable either free or constrained to x_j >= 0. The solver is a
// dense-objective, sparse-row two-phase tableau simplex. Pricing is Dantzig's
// rule with a Bland fallback on degenerate stalls, so it always terminates. Every optimal answer carries a dual certificate
// that is checked exactly before it is returned.

#include "hbops/exactnum.hpp"
#include "hbops/face.hpp"

#include <optional>
#include <vector>

namespace hbops::lp {

struct LPProblem {
    std::size_t num_vars = 0;
    RationalVector objective;               // minimized
    std::vector<RationalVector> ineq_rows;  // A
    RationalVector ineq_rhs;                // b
    std::vector<RationalVector> eq_rows;    // E
    RationalVector eq_rhs;                  // e
    std::vector<bool> nonnegative;          // empty = all variables free

    explicit LPProblem(std::size_t n = 0) : num_vars(n), objective(zeros(n)) {}

    void add_le(RationalVector row, Rational rhs);
    void add_ge(RationalVector row, const Rational& rhs);
    void add_eq(RationalVector row, Rational rhs);
    bool is_nonnegative(std::size_t j) const { return !nonnegative.empty() && nonnegative[j]; }

    /// Throws DomainError when row lengths or counts are inconsistent.
    void validate() const;
};

enum class LPStatus { Optimal, Infeasible, Unbounded };

struct LPResult {
    LPStatus status = LPStatus::Infeasible;
    Rational value;             // Optimal only
    RationalVector point;       // Optimal only
    RationalVector ineq_duals;  // y >= 0 with c + A^T y + E^T z = 0 (free part)
    RationalVector eq_duals;    // z
    std::size_t pivots = 0;

    bool optimal() const { return status == LPStatus::Optimal; }
};

LPResult solve(const LPProblem& problem);

/// Checks the certificate in `result` against `problem` exactly.
bool verify_optimality(const LPProblem& problem, const LPResult& result);

/// Affine dimension of a nonempty point set (rank of differences to the first).
std::size_t affine_dim(const std::vector<RationalVector>& points);

/// Independent differences p_i - p_0 spanning the affine hull.
std::vector<RationalVector> affine_directions(const std::vector<RationalVector>& points);

/// Largest s >= 0 with center + s * sum_i theta_i dirs_i inside the face for
/// every sign pattern theta. Membership is tested against the face's carrier
/// inequalities; DomainError("center not relative-interior") when s = 0.
Rational max_cube_scale(const FaceDescriptor& face, const RationalVector& center,
                        const std::vector<RationalVector>& dirs);

} // namespace hbops::lp
