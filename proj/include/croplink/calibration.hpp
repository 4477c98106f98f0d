#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "croplink/model.hpp"

namespace croplink {

// One observed (geometry, RSRP) pair. Timestamp and planar position are
// carried along when the source log provides them.
struct MeasurementSample {
    LinkGeometry geometry;
    double rsrp_dbm = 0.0;
    std::optional<double> timestamp_s;
    std::optional<std::array<double, 2>> position_m;
};

// observed - predicted, one entry per sample.
std::vector<double> residuals(const ModelParams& params,
                              std::span<const MeasurementSample> samples);

// Residual Jacobian, row i = -gradient of the prediction at sample i,
// columns ordered (alpha, beta, gamma, g).
std::vector<std::array<double, 4>> jacobian(const ModelParams& params,
                                            std::span<const MeasurementSample> samples);

struct GoodnessStats {
    double rmse_db;
    double median_abs_error_db;
    double max_abs_error_db;
};

GoodnessStats goodness(const ModelParams& params,
                       std::span<const MeasurementSample> samples);

struct FitOptions {
    int max_iterations = 200;
    double tolerance = 1e-8;     // relative cost decrease and scaled step
    int starts = 5;              // first start is the caller's initial guess
    std::uint64_t jitter_seed = 42;  // start jitter only; fit stays deterministic
    bool finite_difference_jacobian = false;
};

struct FitResult {
    ModelParams params;
    double rmse_db;
    double median_abs_error_db;
    int iterations;
    bool converged;
    std::vector<std::string> active_bounds;  // subset of {"alpha", "beta", "gamma"}
    std::vector<double> cost_trace;          // accepted-step costs, winning start
};

// Bound-constrained nonlinear least squares: Levenberg-Marquardt damping
// with projection onto alpha >= 0, beta in [1e-6, 1], gamma >= 0. Requires
// at least 8 samples over at least 2 distinct geometries. Non-convergence
// is reported through converged=false with the best parameters found.
FitResult fit(std::span<const MeasurementSample> samples, const ModelParams& initial,
              const FitOptions& options = {});

}  // namespace croplink
