#include "croplink/height.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace croplink {

MastConstraints::MastConstraints(double h_min_m, double h_max_m, double coarse_step_m)
    : h_min_m_(h_min_m), h_max_m_(h_max_m), coarse_step_m_(coarse_step_m) {
    if (!(std::isfinite(h_min_m) && std::isfinite(h_max_m) && h_min_m >= 0.0 &&
          h_min_m < h_max_m)) {
        throw std::invalid_argument("mast range must satisfy 0 <= h_min < h_max");
    }
    if (!(std::isfinite(coarse_step_m) && coarse_step_m > 0.0 &&
          coarse_step_m <= h_max_m - h_min_m)) {
        throw std::invalid_argument("coarse step must lie in (0, h_max - h_min]");
    }
}

ClientSite::ClientSite(double d_m, double h_c_m, double weight)
    : d_m_(d_m), h_c_m_(h_c_m), weight_(weight) {
    if (!(std::isfinite(d_m) && d_m > 0.0)) {
        throw std::invalid_argument("client distance must be positive");
    }
    if (!(std::isfinite(h_c_m) && h_c_m >= 0.0)) {
        throw std::invalid_argument("client crop height must be non-negative");
    }
    if (!(std::isfinite(weight) && weight >= 0.0)) {
        throw std::invalid_argument("client weight must be non-negative");
    }
}

namespace {

double client_rsrp(const ModelParams& params, const ClientSite& client, double h) {
    return predict_rsrp(params, LinkGeometry(client.d(), h, client.h_c())).rsrp_dbm;
}

double objective_value(const ModelParams& params, std::span<const ClientSite> clients,
                       double h, MultiObjective kind) {
    switch (kind) {
        case MultiObjective::MinDbm: {
            double worst = client_rsrp(params, clients[0], h);
            for (std::size_t i = 1; i < clients.size(); ++i) {
                worst = std::min(worst, client_rsrp(params, clients[i], h));
            }
            return worst;
        }
        case MultiObjective::MeanLinearPower: {
            double total_w = 0.0;
            double acc_mw = 0.0;
            for (const ClientSite& c : clients) {
                total_w += c.weight();
                acc_mw += c.weight() * std::pow(10.0, client_rsrp(params, c, h) / 10.0);
            }
            if (total_w <= 0.0) throw std::invalid_argument("total client weight is zero");
            return 10.0 * std::log10(acc_mw / total_w);
        }
        case MultiObjective::MeanDbm:
        default: {
            double total_w = 0.0;
            double acc = 0.0;
            for (const ClientSite& c : clients) {
                total_w += c.weight();
                acc += c.weight() * client_rsrp(params, c, h);
            }
            if (total_w <= 0.0) throw std::invalid_argument("total client weight is zero");
            return acc / total_w;
        }
    }
}

std::vector<double> grid_heights(const MastConstraints& mast) {
    std::vector<double> heights;
    double span = mast.h_max() - mast.h_min();
    auto n = static_cast<std::size_t>(std::floor(span / mast.coarse_step() + 1e-9));
    heights.reserve(n + 2);
    for (std::size_t k = 0; k <= n; ++k) {
        heights.push_back(mast.h_min() + static_cast<double>(k) * mast.coarse_step());
    }
    if (heights.back() >= mast.h_max() - 1e-9) {
        heights.back() = mast.h_max();
    } else {
        heights.push_back(mast.h_max());
    }
    return heights;
}

HeightDecision optimize(const std::function<double(double)>& objective,
                        const MastConstraints& mast) {
    std::vector<std::pair<double, double>> evals;  // every (h, value) seen
    auto eval = [&](double h) {
        double v = objective(h);
        evals.emplace_back(h, v);
        return v;
    };

    HeightDecision decision;
    std::size_t best_idx = 0;
    for (double h : grid_heights(mast)) {
        double v = eval(h);
        decision.profile.emplace_back(h, v);
        if (v > decision.profile[best_idx].second) {
            best_idx = decision.profile.size() - 1;
        }
    }

    // Golden-section pass inside one coarse step of the grid winner.
    double h_best = decision.profile[best_idx].first;
    double lo = std::max(mast.h_min(), h_best - mast.coarse_step());
    double hi = std::min(mast.h_max(), h_best + mast.coarse_step());
    constexpr double inv_phi = 0.6180339887498948482;
    double c = hi - inv_phi * (hi - lo);
    double d = lo + inv_phi * (hi - lo);
    double fc = eval(c);
    double fd = eval(d);
    while (hi - lo > 1e-3) {
        if (fc >= fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - inv_phi * (hi - lo);
            fc = eval(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + inv_phi * (hi - lo);
            fd = eval(d);
        }
    }

    // Lowest height among exact ties for the maximum, so the decision never
    // reports an objective below any profiled height.
    double v_max = evals.front().second;
    for (const auto& [h, v] : evals) v_max = std::max(v_max, v);
    double h_star = 0.0;
    bool have = false;
    for (const auto& [h, v] : evals) {
        if (v == v_max && (!have || h < h_star)) {
            h_star = h;
            have = true;
        }
    }
    decision.h_star_m = h_star;
    decision.predicted_rsrp_dbm = v_max;
    return decision;
}

}  // namespace

std::vector<std::pair<double, double>> height_profile(const ModelParams& params,
                                                      const ClientSite& client,
                                                      const MastConstraints& mast) {
    std::vector<std::pair<double, double>> profile;
    for (double h : grid_heights(mast)) {
        profile.emplace_back(h, client_rsrp(params, client, h));
    }
    return profile;
}

HeightDecision optimal_height_single(const ModelParams& params, const ClientSite& client,
                                     const MastConstraints& mast) {
    return optimize([&](double h) { return client_rsrp(params, client, h); }, mast);
}

HeightDecision optimal_height_multi(const ModelParams& params,
                                    std::span<const ClientSite> clients,
                                    const MastConstraints& mast, MultiObjective objective) {
    if (clients.empty()) throw std::invalid_argument("empty client list");
    return optimize(
        [&](double h) { return objective_value(params, clients, h, objective); }, mast);
}

double gain_vs_fixed_db(const ModelParams& params, std::span<const ClientSite> clients,
                        double fixed_h_m, const MastConstraints& mast,
                        MultiObjective objective) {
    if (clients.empty()) throw std::invalid_argument("empty client list");
    if (!(fixed_h_m >= mast.h_min() && fixed_h_m <= mast.h_max())) {
        throw std::invalid_argument("fixed height lies outside the mast range");
    }
    HeightDecision decision = optimal_height_multi(params, clients, mast, objective);
    return decision.predicted_rsrp_dbm -
           objective_value(params, clients, fixed_h_m, objective);
}

}  // namespace croplink
