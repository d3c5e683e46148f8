#pragma once

// Deterministic test instances shared by the unit and acceptance suites.

#include "hbops/bodies.hpp"
#include "hbops/operators.hpp"

#include <random>
#include <string>
#include <vector>

namespace hbops::testing {

using Rng = std::mt19937_64;

/// Entries p/q with |p| <= range, 1 <= q <= den.
Rational random_rational(Rng& rng, long range, long den);
RationalVector random_vector(Rng& rng, std::size_t dim, long range, long den);
RationalMatrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols, long range, long den);

/// conv(+-p) over scaled basis vectors and `extra` random points, so always
/// full-dimensional.
SpaceHandle random_polytope(Rng& rng, std::size_t dim, std::size_t extra);

/// Two or three polytopal leaves (dims 1..3) joined by sum_one / sum_inf, at
/// most two levels deep and of total dimension <= 6.
SpaceHandle random_composite(Rng& rng);

/// Unit ball (1 + eps) B(l1^n) intersected with B(linf^n).
SpaceHandle remark_space(std::size_t n, const Rational& eps);

struct Named {
    std::string name;
    SpaceHandle space;
};

struct SpacePair {
    Named x;
    Named y;
};

/// Fixed corpus of at least 30 (X, Y) pairs with dims 2..4 drawn from l1, linf,
/// l2, random polytopes and direct sums.
std::vector<SpacePair> corpus_pairs();

} // namespace hbops::testing
