#pragma once

#include "hbops/exactnum.hpp"

#include <cstddef>
#include <vector>

namespace hbops {

/// A support set {x in B : h(x) = max_B h} of a unit ball.
struct FaceDescriptor {
    RationalVector functional;              // exposing functional h
    std::size_t dimension = 0;              // affine dimension of the face
    std::vector<RationalVector> directions; // spans the face's direction space (when exact)
    std::vector<RationalVector> vertices;   // polytopal bodies only
    std::vector<RationalVector> carrier;    // facet normals of the body (offsets 1), polytopal only
};

} // namespace hbops
