#pragma once

#include "croplink/geometry.hpp"

namespace croplink {

// Fitted constants of the signal-strength model. alpha is the crop
// absorption rate in dB per meter of in-crop path, beta the floor of the
// antenna pattern (dimensionless, in (0,1]), gamma scales the elevation
// angle inside the pattern (radians are implied), and g lumps every
// constant gain in the chain, in dBm.
class ModelParams {
public:
    ModelParams(double alpha, double beta, double gamma, double g);

    double alpha() const { return alpha_; }
    double beta() const { return beta_; }
    double gamma() const { return gamma_; }
    double g() const { return g_; }

private:
    double alpha_;
    double beta_;
    double gamma_;
    double g_;
};

// Unnormalized sinc, sin(x)/x with sinc(0) = 1.
double sinc(double x);
double sinc_derivative(double x);

// Free-space term, -20 log10(r) with r in meters. Throws for r <= 0.
double path_loss_db(double r_m);

// Absorption through vegetation, -alpha * r_c. Always <= 0 for valid input.
double crop_attenuation_db(double alpha_db_per_m, double r_c_m);

// Elevation pattern of the antenna, 10 log10(max(|sinc(gamma*theta)|, beta)).
// Lies in [10 log10(beta), 0].
double directivity_gain_db(double gamma, double beta, double theta_rad);

// Predicted received power and its decomposition. rsrp_dbm is always the
// exact sum g + path_loss + crop_attenuation + directivity_gain.
struct RsrpPrediction {
    double rsrp_dbm;
    double path_loss_db;
    double crop_attenuation_db;
    double directivity_gain_db;
};

RsrpPrediction predict_rsrp(const ModelParams& params, const LinkGeometry& geometry);

// Partial derivatives of the predicted RSRP with respect to (alpha, beta,
// gamma, g). At the pattern's cap crossover (|sinc| == beta) and at sinc
// zeros the cap-active branch is reported: d/dgamma = 0, d/dbeta > 0.
struct ParamGradient {
    double d_alpha;
    double d_beta;
    double d_gamma;
    double d_g;
};

ParamGradient rsrp_param_gradient(const ModelParams& params, const LinkGeometry& geometry);

namespace detail {
// Unchecked core used where candidate parameters may sit outside the
// ModelParams invariants (finite-difference probes).
RsrpPrediction predict_raw(double alpha, double beta, double gamma, double g,
                           const LinkGeometry& geometry);
}  // namespace detail

}  // namespace croplink
