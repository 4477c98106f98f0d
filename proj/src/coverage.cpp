#include "croplink/coverage.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "croplink/stats.hpp"

namespace croplink {

FarmExtent::FarmExtent(double width_m, double height_m)
    : width_m_(width_m), height_m_(height_m) {
    if (!(std::isfinite(width_m) && width_m > 0.0 && std::isfinite(height_m) &&
          height_m > 0.0)) {
        throw std::invalid_argument("farm extent must be positive");
    }
}

SitePlan static_site_count(const FarmExtent& farm, double radius_m, SpacingPolicy policy) {
    if (!(std::isfinite(radius_m) && radius_m > 0.0)) {
        throw std::invalid_argument("coverage radius must be positive");
    }
    double spacing = policy == SpacingPolicy::FullCover ? radius_m * std::sqrt(2.0)
                                                        : 2.0 * radius_m;
    int nx = static_cast<int>(std::ceil(farm.width() / spacing));
    int ny = static_cast<int>(std::ceil(farm.height() / spacing));
    nx = std::max(nx, 1);
    ny = std::max(ny, 1);

    SitePlan plan;
    plan.count = nx * ny;
    double cell_w = farm.width() / nx;
    double cell_h = farm.height() / ny;
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            plan.positions.push_back({(i + 0.5) * cell_w, (j + 0.5) * cell_h});
        }
    }
    return plan;
}

MobilityPlan mobile_plan(const FarmExtent& farm, std::span<const WorkArea> work_areas,
                         double radius_m, bool edge_only, SpacingPolicy comparison_policy) {
    if (!(std::isfinite(radius_m) && radius_m > 0.0)) {
        throw std::invalid_argument("coverage radius must be positive");
    }
    MobilityPlan plan;
    plan.sites_static = static_site_count(farm, radius_m, comparison_policy).count;
    plan.sites_mobile = 1;

    for (const WorkArea& area : work_areas) {
        if (!(area.x_m >= 0.0 && area.x_m <= farm.width() && area.y_m >= 0.0 &&
              area.y_m <= farm.height())) {
            throw std::invalid_argument("work area outside farm extent (day " +
                                        std::to_string(area.day) + ")");
        }
        double gx = area.x_m;
        double gy = area.y_m;
        if (edge_only) {
            // Nearest point on the farm boundary.
            double to_left = area.x_m;
            double to_right = farm.width() - area.x_m;
            double to_bottom = area.y_m;
            double to_top = farm.height() - area.y_m;
            double nearest = std::min({to_left, to_right, to_bottom, to_top});
            if (nearest > radius_m) {
                throw std::runtime_error("day " + std::to_string(area.day) +
                                         " infeasible: work area lies deeper than the "
                                         "coverage radius from every edge");
            }
            if (nearest == to_left) {
                gx = 0.0;
            } else if (nearest == to_right) {
                gx = farm.width();
            } else if (nearest == to_bottom) {
                gy = 0.0;
            } else {
                gy = farm.height();
            }
        }
        plan.schedule.push_back({area.day, area.x_m, area.y_m, gx, gy});
    }
    return plan;
}

namespace {

double best_height_rsrp(const ModelParams& params, double d_m, double h_c_m,
                        const MastConstraints& mast) {
    return optimal_height_single(params, ClientSite(d_m, h_c_m), mast).predicted_rsrp_dbm;
}

}  // namespace

double coverage_radius(const ModelParams& params, double h_c_m, const MastConstraints& mast,
                       double rsrp_threshold_dbm, double d_max_m) {
    constexpr double d_min = 1.0;
    if (!(d_max_m > d_min)) throw std::invalid_argument("search cap must exceed 1 m");

    auto achievable = [&](double d) { return best_height_rsrp(params, d, h_c_m, mast); };

    if (achievable(d_min) < rsrp_threshold_dbm) return 0.0;
    if (achievable(d_max_m) >= rsrp_threshold_dbm) return d_max_m;

    // Coarse scan first; bisection alone would trust monotonicity that sinc
    // side lobes can break.
    int n = 128;
    std::vector<double> ds(n), vals(n);
    bool monotone = true;
    for (int i = 0; i < n; ++i) {
        ds[i] = d_min + (d_max_m - d_min) * i / (n - 1);
        vals[i] = achievable(ds[i]);
        if (i > 0 && vals[i] > vals[i - 1] + 1e-9) monotone = false;
    }
    if (!monotone) {
        n = 1024;
        ds.resize(n);
        vals.resize(n);
        for (int i = 0; i < n; ++i) {
            ds[i] = d_min + (d_max_m - d_min) * i / (n - 1);
            vals[i] = achievable(ds[i]);
        }
    }

    int last_ok = 0;
    for (int i = 0; i < n; ++i) {
        if (vals[i] >= rsrp_threshold_dbm) last_ok = i;
    }
    if (last_ok == n - 1) return d_max_m;

    double lo = ds[last_ok];
    double hi = ds[last_ok + 1];
    for (int it = 0; it < 60 && hi - lo > 1e-3; ++it) {
        double mid = 0.5 * (lo + hi);
        if (achievable(mid) >= rsrp_threshold_dbm) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return lo;
}

CoverageReport field_comparison(const ModelParams& params, const GridSpec& grid, double h_c_m,
                                double fixed_h_m, const MastConstraints& mast) {
    if (grid.nx < 2 || grid.ny < 2) throw std::invalid_argument("grid must be at least 2x2");
    if (!(grid.x_min < grid.x_max && grid.y_min < grid.y_max)) {
        throw std::invalid_argument("grid extents must be non-empty");
    }
    if (!(fixed_h_m >= mast.h_min() && fixed_h_m <= mast.h_max())) {
        throw std::invalid_argument("fixed height lies outside the mast range");
    }

    CoverageReport report;
    double dx = (grid.x_max - grid.x_min) / grid.nx;
    double dy = (grid.y_max - grid.y_min) / grid.ny;
    std::vector<double> deltas;
    deltas.reserve(static_cast<std::size_t>(grid.nx) * grid.ny);

    for (int j = 0; j < grid.ny; ++j) {
        for (int i = 0; i < grid.nx; ++i) {
            double x = grid.x_min + (i + 0.5) * dx;
            double y = grid.y_min + (j + 0.5) * dy;
            double d = std::hypot(x, y);
            if (d < 1e-9) {
                throw std::invalid_argument("grid contains the base-station position");
            }
            double fixed = predict_rsrp(params, LinkGeometry(d, fixed_h_m, h_c_m)).rsrp_dbm;
            double variable = best_height_rsrp(params, d, h_c_m, mast);
            report.grid.push_back({x, y, fixed, variable, variable - fixed});
            report.cdf_fixed_dbm.push_back(fixed);
            report.cdf_variable_dbm.push_back(variable);
            deltas.push_back(variable - fixed);
        }
    }

    std::sort(report.cdf_fixed_dbm.begin(), report.cdf_fixed_dbm.end());
    std::sort(report.cdf_variable_dbm.begin(), report.cdf_variable_dbm.end());

    double mean = 0.0;
    for (double g : deltas) mean += g;
    report.mean_gain_db = mean / static_cast<double>(deltas.size());
    std::sort(deltas.begin(), deltas.end());
    report.median_gain_db = quantile_sorted(deltas, 0.5);
    report.p90_gain_db = quantile_sorted(deltas, 0.9);
    return report;
}

}  // namespace croplink
