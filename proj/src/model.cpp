#include "croplink/model.hpp"

#include <cmath>
#include <stdexcept>

namespace croplink {

namespace {
constexpr double kLn10 = 2.302585092994045684017991454684;
}

ModelParams::ModelParams(double alpha, double beta, double gamma, double g)
    : alpha_(alpha), beta_(beta), gamma_(gamma), g_(g) {
    if (!(std::isfinite(alpha) && alpha >= 0.0)) {
        throw std::invalid_argument("alpha must be finite and >= 0");
    }
    if (!(std::isfinite(beta) && beta > 0.0 && beta <= 1.0)) {
        throw std::invalid_argument("beta must lie in (0, 1]");
    }
    if (!(std::isfinite(gamma) && gamma >= 0.0)) {
        throw std::invalid_argument("gamma must be finite and >= 0");
    }
    if (!std::isfinite(g)) {
        throw std::invalid_argument("g must be finite");
    }
}

double sinc(double x) {
    if (std::fabs(x) < 1e-4) {
        double x2 = x * x;
        return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
    }
    return std::sin(x) / x;
}

double sinc_derivative(double x) {
    if (std::fabs(x) < 1e-4) {
        return x * (-1.0 / 3.0 + x * x / 30.0);
    }
    return (std::cos(x) - std::sin(x) / x) / x;
}

double path_loss_db(double r_m) {
    if (!(r_m > 0.0)) throw std::domain_error("path loss needs a positive range");
    return -20.0 * std::log10(r_m);
}

double crop_attenuation_db(double alpha_db_per_m, double r_c_m) {
    return -alpha_db_per_m * r_c_m;
}

double directivity_gain_db(double gamma, double beta, double theta_rad) {
    double pattern = std::max(std::fabs(sinc(gamma * theta_rad)), beta);
    return 10.0 * std::log10(pattern);
}

namespace detail {

RsrpPrediction predict_raw(double alpha, double beta, double gamma, double g,
                           const LinkGeometry& geometry) {
    double r = geometry.slant_range();
    if (!(r > 0.0)) throw std::domain_error("cannot predict RSRP for a zero-length link");
    double theta = elevation_angle(geometry.d(), geometry.h_bs());
    RsrpPrediction out;
    out.path_loss_db = path_loss_db(r);
    out.crop_attenuation_db = crop_attenuation_db(alpha, crop_path_length(geometry));
    out.directivity_gain_db = directivity_gain_db(gamma, beta, theta);
    out.rsrp_dbm = g + out.path_loss_db + out.crop_attenuation_db + out.directivity_gain_db;
    return out;
}

}  // namespace detail

RsrpPrediction predict_rsrp(const ModelParams& params, const LinkGeometry& geometry) {
    return detail::predict_raw(params.alpha(), params.beta(), params.gamma(), params.g(),
                               geometry);
}

ParamGradient rsrp_param_gradient(const ModelParams& params, const LinkGeometry& geometry) {
    double r = geometry.slant_range();
    if (!(r > 0.0)) throw std::domain_error("cannot differentiate RSRP for a zero-length link");
    double theta = elevation_angle(geometry.d(), geometry.h_bs());
    double u = params.gamma() * theta;
    double s = sinc(u);

    ParamGradient grad;
    grad.d_g = 1.0;
    grad.d_alpha = -crop_path_length(geometry);
    if (std::fabs(s) <= params.beta()) {  // cap active; ties take this branch
        grad.d_beta = 10.0 / (params.beta() * kLn10);
        grad.d_gamma = 0.0;
    } else {
        grad.d_beta = 0.0;
        grad.d_gamma = (10.0 / kLn10) * (sinc_derivative(u) / s) * theta;
    }
    return grad;
}

}  // namespace croplink
