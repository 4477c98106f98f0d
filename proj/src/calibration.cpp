#include "croplink/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "croplink/rng.hpp"
#include "croplink/stats.hpp"

namespace croplink {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kBetaFloor = 1e-6;  // keeps 10*log10(beta) finite at the bound

using Params4 = std::array<double, 4>;  // (alpha, beta, gamma, g)

constexpr Params4 kLower = {0.0, kBetaFloor, 0.0, -kInf};
constexpr Params4 kUpper = {kInf, 1.0, kInf, kInf};

Params4 project(Params4 p) {
    for (int k = 0; k < 4; ++k) p[k] = std::clamp(p[k], kLower[k], kUpper[k]);
    return p;
}

void check_nonempty(std::span<const MeasurementSample> samples) {
    if (samples.empty()) throw std::invalid_argument("empty dataset");
}

void check_fit_dataset(std::span<const MeasurementSample> samples) {
    if (samples.size() < 8) {
        throw std::invalid_argument("degenerate dataset: need at least 8 samples");
    }
    const LinkGeometry& first = samples.front().geometry;
    bool distinct = false;
    for (const MeasurementSample& s : samples) {
        if (s.geometry.d() != first.d() || s.geometry.h_bs() != first.h_bs() ||
            s.geometry.h_c() != first.h_c()) {
            distinct = true;
            break;
        }
    }
    if (!distinct) {
        throw std::invalid_argument("degenerate dataset: all samples share one geometry");
    }
}

std::vector<double> residuals_at(const Params4& p,
                                 std::span<const MeasurementSample> samples) {
    std::vector<double> res;
    res.reserve(samples.size());
    for (const MeasurementSample& s : samples) {
        res.push_back(s.rsrp_dbm -
                      detail::predict_raw(p[0], p[1], p[2], p[3], s.geometry).rsrp_dbm);
    }
    return res;
}

double sum_squares(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return s;
}

std::vector<Params4> jacobian_rows(const Params4& p,
                                   std::span<const MeasurementSample> samples,
                                   bool finite_difference) {
    std::vector<Params4> rows(samples.size());
    if (!finite_difference) {
        ModelParams mp(p[0], p[1], p[2], p[3]);
        for (std::size_t i = 0; i < samples.size(); ++i) {
            ParamGradient g = rsrp_param_gradient(mp, samples[i].geometry);
            rows[i] = {-g.d_alpha, -g.d_beta, -g.d_gamma, -g.d_g};
        }
        return rows;
    }
    for (int k = 0; k < 4; ++k) {
        double h = 1e-6 * std::max(1.0, std::fabs(p[k]));
        Params4 hi = p;
        Params4 lo = p;
        hi[k] += h;
        lo[k] -= h;
        for (std::size_t i = 0; i < samples.size(); ++i) {
            const LinkGeometry& geom = samples[i].geometry;
            double f_hi = detail::predict_raw(hi[0], hi[1], hi[2], hi[3], geom).rsrp_dbm;
            double f_lo = detail::predict_raw(lo[0], lo[1], lo[2], lo[3], geom).rsrp_dbm;
            rows[i][k] = -(f_hi - f_lo) / (2.0 * h);  // residual = observed - predicted
        }
    }
    return rows;
}

// Gaussian elimination with partial pivoting; false on a (near-)singular
// system.
bool solve4(std::array<Params4, 4> a, Params4 b, Params4& x) {
    for (int col = 0; col < 4; ++col) {
        int pivot = col;
        for (int row = col + 1; row < 4; ++row) {
            if (std::fabs(a[row][col]) > std::fabs(a[pivot][col])) pivot = row;
        }
        if (std::fabs(a[pivot][col]) < 1e-300) return false;
        std::swap(a[pivot], a[col]);
        std::swap(b[pivot], b[col]);
        for (int row = col + 1; row < 4; ++row) {
            double f = a[row][col] / a[col][col];
            for (int c = col; c < 4; ++c) a[row][c] -= f * a[col][c];
            b[row] -= f * b[col];
        }
    }
    for (int row = 3; row >= 0; --row) {
        double s = b[row];
        for (int c = row + 1; c < 4; ++c) s -= a[row][c] * x[c];
        x[row] = s / a[row][row];
    }
    return true;
}

struct StartOutcome {
    Params4 p;
    double cost;
    int iterations;
    bool converged;
    std::vector<double> trace;
};

StartOutcome run_lm(std::span<const MeasurementSample> samples, Params4 p0,
                    const FitOptions& opt) {
    Params4 p = project(p0);
    std::vector<double> res = residuals_at(p, samples);
    double cost = sum_squares(res);

    StartOutcome out;
    out.trace.push_back(cost);
    out.converged = false;
    out.iterations = 0;

    // Exactly-solvable datasets converge quadratically, which keeps the
    // per-step relative decrease near 1 all the way down; once the cost sits
    // at the floating-point floor the fit is done.
    const double cost_floor = 1e-20 * std::max(1.0, cost);

    double lambda = 1e-3;  // damping is relative to diag(JtJ)
    for (int iter = 1; iter <= opt.max_iterations; ++iter) {
        out.iterations = iter;
        if (cost <= cost_floor) {
            out.converged = true;
            break;
        }
        std::vector<Params4> jac =
            jacobian_rows(p, samples, opt.finite_difference_jacobian);

        std::array<Params4, 4> jtj{};
        Params4 jtr{};
        for (std::size_t i = 0; i < jac.size(); ++i) {
            for (int a = 0; a < 4; ++a) {
                jtr[a] += jac[i][a] * res[i];
                for (int b = a; b < 4; ++b) jtj[a][b] += jac[i][a] * jac[i][b];
            }
        }
        for (int a = 0; a < 4; ++a) {
            for (int b = 0; b < a; ++b) jtj[a][b] = jtj[b][a];
        }

        bool accepted = false;
        bool stalled = false;
        while (!accepted) {
            std::array<Params4, 4> damped = jtj;
            for (int k = 0; k < 4; ++k) {
                damped[k][k] += lambda * std::max(jtj[k][k], 1e-12);
            }
            Params4 step{};
            Params4 neg_grad = {-jtr[0], -jtr[1], -jtr[2], -jtr[3]};
            if (solve4(damped, neg_grad, step)) {
                Params4 cand = p;
                for (int k = 0; k < 4; ++k) cand[k] += step[k];
                cand = project(cand);
                std::vector<double> cand_res = residuals_at(cand, samples);
                double cand_cost = sum_squares(cand_res);
                if (cand_cost < cost) {
                    double rel_dec = (cost - cand_cost) / cost;
                    double scaled_step = 0.0;
                    for (int k = 0; k < 4; ++k) {
                        scaled_step = std::max(
                            scaled_step, std::fabs(cand[k] - p[k]) / (1.0 + std::fabs(p[k])));
                    }
                    p = cand;
                    res = std::move(cand_res);
                    cost = cand_cost;
                    out.trace.push_back(cost);
                    lambda = std::max(lambda / 9.0, 1e-12);
                    accepted = true;
                    if (scaled_step < opt.tolerance &&
                        (rel_dec < opt.tolerance || cost <= cost_floor)) {
                        out.converged = true;
                    }
                    break;
                }
            }
            lambda *= 11.0;
            if (lambda > 1e14) {
                stalled = true;
                break;
            }
        }
        if (cost <= cost_floor) out.converged = true;
        if (out.converged || stalled) break;
    }
    out.p = p;
    out.cost = cost;
    return out;
}

}  // namespace

std::vector<double> residuals(const ModelParams& params,
                              std::span<const MeasurementSample> samples) {
    check_nonempty(samples);
    return residuals_at({params.alpha(), params.beta(), params.gamma(), params.g()}, samples);
}

std::vector<std::array<double, 4>> jacobian(const ModelParams& params,
                                            std::span<const MeasurementSample> samples) {
    check_nonempty(samples);
    std::vector<std::array<double, 4>> rows(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
        ParamGradient g = rsrp_param_gradient(params, samples[i].geometry);
        rows[i] = {-g.d_alpha, -g.d_beta, -g.d_gamma, -g.d_g};
    }
    return rows;
}

GoodnessStats goodness(const ModelParams& params,
                       std::span<const MeasurementSample> samples) {
    std::vector<double> res = residuals(params, samples);
    double rss = sum_squares(res);
    std::vector<double> abs_res(res.size());
    double max_abs = 0.0;
    for (std::size_t i = 0; i < res.size(); ++i) {
        abs_res[i] = std::fabs(res[i]);
        max_abs = std::max(max_abs, abs_res[i]);
    }
    return {std::sqrt(rss / static_cast<double>(res.size())), median(std::move(abs_res)),
            max_abs};
}

FitResult fit(std::span<const MeasurementSample> samples, const ModelParams& initial,
              const FitOptions& options) {
    check_fit_dataset(samples);
    if (options.max_iterations < 1 || options.starts < 1 || !(options.tolerance > 0.0)) {
        throw std::invalid_argument("invalid fit options");
    }

    Params4 init = {initial.alpha(), initial.beta(), initial.gamma(), initial.g()};
    std::vector<Params4> starts;
    starts.push_back(init);
    Rng rng(options.jitter_seed);
    for (int s = 1; s < options.starts; ++s) {
        starts.push_back({rng.uniform(0.0, 1.5), rng.uniform(0.05, 1.0),
                          rng.uniform(0.25, 8.0), init[3] + rng.uniform(-8.0, 8.0)});
    }

    StartOutcome best = run_lm(samples, starts[0], options);
    for (std::size_t s = 1; s < starts.size(); ++s) {
        StartOutcome outcome = run_lm(samples, starts[s], options);
        if (outcome.cost < best.cost) best = std::move(outcome);
    }

    ModelParams fitted(best.p[0], best.p[1], best.p[2], best.p[3]);
    GoodnessStats stats = goodness(fitted, samples);

    std::vector<std::string> active;
    const char* names[3] = {"alpha", "beta", "gamma"};
    for (int k = 0; k < 3; ++k) {
        bool at_lower = best.p[k] <= kLower[k] + 1e-12;
        bool at_upper = std::isfinite(kUpper[k]) && best.p[k] >= kUpper[k] - 1e-12;
        if (at_lower || at_upper) active.push_back(names[k]);
    }

    return FitResult{fitted,         stats.rmse_db, stats.median_abs_error_db,
                     best.iterations, best.converged, std::move(active),
                     std::move(best.trace)};
}

}  // namespace croplink
