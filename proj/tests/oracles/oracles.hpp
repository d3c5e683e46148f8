#pragma once

// Brute-force reference implementations. None of them calls the code path it
// checks: elimination, enumeration and sampling are all reimplemented here.

#include "hbops/bodies.hpp"
#include "hbops/hahn_banach.hpp"
#include "hbops/lp.hpp"
#include "hbops/operators.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace hbops::oracles {

/// HBOPS_SEED when set, else `fallback`.
std::uint64_t seed(std::uint64_t fallback);

/// Rank by textbook Gaussian elimination over the rationals.
std::size_t naive_rank(std::vector<RationalVector> rows);

/// Unique solution of the (possibly non-square) system rows * x = rhs, or
/// nullopt when it is inconsistent or underdetermined.
std::optional<RationalVector> naive_solve(std::vector<RationalVector> rows, RationalVector rhs);

/// Affine dimension of a nonempty point set.
std::size_t naive_affine_dim(const std::vector<RationalVector>& points);

/// Max over the facets of the materialized polytope of the affine dimension
/// of its vertex set.
std::size_t brute_f(const SpaceHandle& p);

/// Max of |T x| / |x| over `samples` Gaussian directions, then a shrinking
/// random local search from each of the 16 best samples. Always a lower bound.
double brute_op_norm(const LinOperator& t, std::size_t samples, std::uint64_t seed);

/// Max over all 2^|atoms| sign patterns of |sum sigma_a vector_a|. Exact when
/// every evaluated norm is exact. DomainError beyond 16 atoms.
NormValue brute_certificate_norm(const ExtensionCertificate& c);

/// All vertices of {A x <= b, E x = e, x_j >= 0 where requested} by trying
/// every choice of active constraints. DomainError beyond 12 variables.
std::vector<RationalVector> enumerate_basic_points(const lp::LPProblem& p);

struct OracleReport {
    std::string quantity;
    std::string fast;
    std::string oracle;
    bool agree = false;
    std::string instance;

    std::string json_line() const;
};

/// Exact agreement when both are exact, else |a - b| <= tol.
bool agree(const NormValue& a, const NormValue& b, double tol);

} // namespace hbops::oracles
