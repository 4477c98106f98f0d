#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

namespace croplink {

struct Triangle {
    std::array<std::size_t, 3> v;  // indices into the point set
};

// Bowyer-Watson Delaunay triangulation. Returns an empty set when the
// points are all collinear (or fewer than 3).
std::vector<Triangle> delaunay_triangulate(const std::vector<std::array<double, 2>>& points);

// Clamped barycentric weights of p in triangle (a, b, c); nullopt when p
// lies outside (small edge tolerance). Weights are non-negative and sum
// to 1, so blended values stay inside the vertex range.
std::optional<std::array<double, 3>> barycentric_weights(const std::array<double, 2>& p,
                                                         const std::array<double, 2>& a,
                                                         const std::array<double, 2>& b,
                                                         const std::array<double, 2>& c);

}  // namespace croplink
