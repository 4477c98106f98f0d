#include "croplink/triangulation.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>

namespace croplink {

namespace {

struct CircumCircle {
    double cx;
    double cy;
    double r2;
    bool ok;
};

CircumCircle circumcircle(const std::array<double, 2>& a, const std::array<double, 2>& b,
                          const std::array<double, 2>& c) {
    double d = 2.0 * (a[0] * (b[1] - c[1]) + b[0] * (c[1] - a[1]) + c[0] * (a[1] - b[1]));
    if (std::fabs(d) < 1e-12) return {0.0, 0.0, 0.0, false};
    double a2 = a[0] * a[0] + a[1] * a[1];
    double b2 = b[0] * b[0] + b[1] * b[1];
    double c2 = c[0] * c[0] + c[1] * c[1];
    double ux = (a2 * (b[1] - c[1]) + b2 * (c[1] - a[1]) + c2 * (a[1] - b[1])) / d;
    double uy = (a2 * (c[0] - b[0]) + b2 * (a[0] - c[0]) + c2 * (b[0] - a[0])) / d;
    double dx = a[0] - ux;
    double dy = a[1] - uy;
    return {ux, uy, dx * dx + dy * dy, true};
}

struct WorkTriangle {
    std::array<std::size_t, 3> v;
    CircumCircle circle;
};

bool circle_contains(const CircumCircle& circle, const std::array<double, 2>& p) {
    double dx = p[0] - circle.cx;
    double dy = p[1] - circle.cy;
    // Borderline (cocircular) points count as outside; the result is still a
    // valid triangulation for interpolation.
    return (dx * dx + dy * dy) * (1.0 + 1e-12) < circle.r2;
}

}  // namespace

std::vector<Triangle> delaunay_triangulate(const std::vector<std::array<double, 2>>& points) {
    const std::size_t n = points.size();
    if (n < 3) return {};

    double min_x = points[0][0], max_x = points[0][0];
    double min_y = points[0][1], max_y = points[0][1];
    for (const auto& p : points) {
        min_x = std::min(min_x, p[0]);
        max_x = std::max(max_x, p[0]);
        min_y = std::min(min_y, p[1]);
        max_y = std::max(max_y, p[1]);
    }
    double span = std::max({max_x - min_x, max_y - min_y, 1.0});
    double cx = 0.5 * (min_x + max_x);
    double cy = 0.5 * (min_y + max_y);

    std::vector<std::array<double, 2>> pts(points);
    pts.push_back({cx - 40.0 * span, cy - 20.0 * span});
    pts.push_back({cx + 40.0 * span, cy - 20.0 * span});
    pts.push_back({cx, cy + 40.0 * span});

    std::vector<WorkTriangle> tris;
    tris.push_back({{n, n + 1, n + 2}, circumcircle(pts[n], pts[n + 1], pts[n + 2])});

    for (std::size_t i = 0; i < n; ++i) {
        const auto& p = pts[i];

        std::vector<WorkTriangle> keep;
        std::map<std::pair<std::size_t, std::size_t>, int> edge_count;
        for (const WorkTriangle& t : tris) {
            if (t.circle.ok && circle_contains(t.circle, p)) {
                for (int e = 0; e < 3; ++e) {
                    std::size_t u = t.v[e];
                    std::size_t w = t.v[(e + 1) % 3];
                    edge_count[{std::min(u, w), std::max(u, w)}] += 1;
                }
            } else {
                keep.push_back(t);
            }
        }

        // Edges seen once bound the cavity; fan them to the new point.
        for (const auto& [edge, count] : edge_count) {
            if (count != 1) continue;
            WorkTriangle t{{edge.first, edge.second, i},
                           circumcircle(pts[edge.first], pts[edge.second], pts[i])};
            if (t.circle.ok) keep.push_back(t);
        }
        tris = std::move(keep);
    }

    std::vector<Triangle> out;
    for (const WorkTriangle& t : tris) {
        if (t.v[0] < n && t.v[1] < n && t.v[2] < n) out.push_back({t.v});
    }
    return out;
}

std::optional<std::array<double, 3>> barycentric_weights(const std::array<double, 2>& p,
                                                         const std::array<double, 2>& a,
                                                         const std::array<double, 2>& b,
                                                         const std::array<double, 2>& c) {
    double det = (b[1] - c[1]) * (a[0] - c[0]) + (c[0] - b[0]) * (a[1] - c[1]);
    if (std::fabs(det) < 1e-30) return std::nullopt;
    double w0 = ((b[1] - c[1]) * (p[0] - c[0]) + (c[0] - b[0]) * (p[1] - c[1])) / det;
    double w1 = ((c[1] - a[1]) * (p[0] - c[0]) + (a[0] - c[0]) * (p[1] - c[1])) / det;
    double w2 = 1.0 - w0 - w1;

    constexpr double eps = 1e-9;
    if (w0 < -eps || w1 < -eps || w2 < -eps) return std::nullopt;

    std::array<double, 3> w = {std::max(w0, 0.0), std::max(w1, 0.0), std::max(w2, 0.0)};
    double sum = w[0] + w[1] + w[2];
    for (double& x : w) x /= sum;
    return w;
}

}  // namespace croplink
