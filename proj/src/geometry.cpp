#include "croplink/geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace croplink {

double slant_range(double d_m, double h_bs_m) {
    return std::hypot(d_m, h_bs_m);
}

double elevation_angle(double d_m, double h_bs_m) {
    if (d_m == 0.0 && h_bs_m == 0.0) {
        throw std::domain_error("elevation angle undefined for a zero-length link");
    }
    return std::atan2(h_bs_m, d_m);
}

LinkGeometry::LinkGeometry(double d_m, double h_bs_m, double h_c_m)
    : d_m_(d_m), h_bs_m_(h_bs_m), h_c_m_(h_c_m) {
    auto ok = [](double v) { return std::isfinite(v) && v >= 0.0; };
    if (!ok(d_m) || !ok(h_bs_m) || !ok(h_c_m)) {
        throw std::invalid_argument("link geometry fields must be finite and non-negative");
    }
}

double crop_path_length(const LinkGeometry& geometry) {
    if (geometry.h_c() == 0.0) return 0.0;
    double r = geometry.slant_range();
    if (geometry.h_bs() <= geometry.h_c()) return r;  // antenna at or below the canopy
    return (geometry.h_c() / geometry.h_bs()) * r;
}

}  // namespace croplink
