#pragma once

#include <span>
#include <utility>
#include <vector>

#include "croplink/model.hpp"

namespace croplink {

// Mechanical envelope of the telescoping mast plus the coarse search step.
class MastConstraints {
public:
    MastConstraints(double h_min_m, double h_max_m, double coarse_step_m = 0.25);

    double h_min() const { return h_min_m_; }
    double h_max() const { return h_max_m_; }
    double coarse_step() const { return coarse_step_m_; }

private:
    double h_min_m_;
    double h_max_m_;
    double coarse_step_m_;
};

// One client position: horizontal distance from the mast, local canopy
// height, and an optional weight for multi-client objectives.
class ClientSite {
public:
    ClientSite(double d_m, double h_c_m, double weight = 1.0);

    double d() const { return d_m_; }
    double h_c() const { return h_c_m_; }
    double weight() const { return weight_; }

private:
    double d_m_;
    double h_c_m_;
    double weight_;
};

struct HeightDecision {
    double h_star_m;
    double predicted_rsrp_dbm;  // weighted mean for multi-client runs
    std::vector<std::pair<double, double>> profile;  // (height_m, objective_dbm)
};

enum class MultiObjective {
    MeanDbm,          // weighted arithmetic mean of per-client RSRP (default)
    MinDbm,           // worst client; weights ignored
    MeanLinearPower,  // weighted mean in mW, reported back in dBm
};

// Objective sampled at h_min, h_min+step, ... , h_max inclusive.
std::vector<std::pair<double, double>> height_profile(const ModelParams& params,
                                                      const ClientSite& client,
                                                      const MastConstraints& mast);

// Coarse grid argmax followed by golden-section refinement to 1 mm within
// one coarse step of the best grid point. Ties inside 1e-9 dB resolve to
// the lowest height.
HeightDecision optimal_height_single(const ModelParams& params, const ClientSite& client,
                                     const MastConstraints& mast);

HeightDecision optimal_height_multi(const ModelParams& params,
                                    std::span<const ClientSite> clients,
                                    const MastConstraints& mast,
                                    MultiObjective objective = MultiObjective::MeanDbm);

// Objective at the optimized height minus objective at fixed_h. Never
// negative when fixed_h lies on the coarse grid.
double gain_vs_fixed_db(const ModelParams& params, std::span<const ClientSite> clients,
                        double fixed_h_m, const MastConstraints& mast,
                        MultiObjective objective = MultiObjective::MeanDbm);

}  // namespace croplink
