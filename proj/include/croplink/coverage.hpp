#pragma once

#include <array>
#include <span>
#include <vector>

#include "croplink/height.hpp"
#include "croplink/model.hpp"

namespace croplink {

class FarmExtent {
public:
    FarmExtent(double width_m, double height_m);

    double width() const { return width_m_; }
    double height() const { return height_m_; }

private:
    double width_m_;
    double height_m_;
};

enum class SpacingPolicy {
    TangentCircles,  // spacing 2R: circles touch, corner gaps remain ("paper" on the CLI)
    FullCover,       // spacing R*sqrt(2): every interior point covered
};

struct SitePlan {
    int count;
    std::vector<std::array<double, 2>> positions;  // row-major cell centers
};

// Static-grid deployment needed to span the farm at the given coverage
// radius. The farm is split into ceil(w/s) x ceil(h/s) cells and one site
// sits at each cell center.
SitePlan static_site_count(const FarmExtent& farm, double radius_m, SpacingPolicy policy);

struct WorkArea {
    int day;
    double x_m;
    double y_m;
};

struct MobilityPlan {
    struct Stop {
        int day;
        double area_x_m;
        double area_y_m;
        double gateway_x_m;
        double gateway_y_m;
    };
    std::vector<Stop> schedule;
    int sites_static;
    int sites_mobile;  // always 1
};

// One relocatable gateway following the day-by-day work areas. With
// edge_only the gateway is pinned to the nearest farm boundary point;
// a day whose area cannot be reached within radius_m throws.
MobilityPlan mobile_plan(const FarmExtent& farm, std::span<const WorkArea> work_areas,
                         double radius_m, bool edge_only = false,
                         SpacingPolicy comparison_policy = SpacingPolicy::TangentCircles);

// Largest horizontal distance at which the best mast height still reaches
// rsrp_threshold_dbm. Scans a coarse grid first and only trusts bisection
// on a bracket, so sinc side lobes cannot fool it; returns 0 when even the
// closest distance misses the threshold, d_max_m when the cap is reached.
double coverage_radius(const ModelParams& params, double h_c_m, const MastConstraints& mast,
                       double rsrp_threshold_dbm, double d_max_m = 10000.0);

struct GridSpec {
    double x_min;
    double x_max;
    double y_min;
    double y_max;
    int nx;
    int ny;
};

struct CoveragePoint {
    double x_m;
    double y_m;
    double rsrp_fixed_dbm;
    double rsrp_variable_dbm;
    double delta_db;
};

struct CoverageReport {
    std::vector<CoveragePoint> grid;       // row-major cell centers
    std::vector<double> cdf_fixed_dbm;     // sorted
    std::vector<double> cdf_variable_dbm;  // sorted
    double median_gain_db;
    double mean_gain_db;
    double p90_gain_db;
};

// Fixed-height vs optimized-height RSRP over a grid of client positions,
// base station at the origin. fixed_h_m must lie within the mast envelope.
CoverageReport field_comparison(const ModelParams& params, const GridSpec& grid, double h_c_m,
                                double fixed_h_m, const MastConstraints& mast);

}  // namespace croplink
