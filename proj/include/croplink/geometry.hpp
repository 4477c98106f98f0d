#pragma once

namespace croplink {

// Straight-line antenna-to-client distance, r = sqrt(d^2 + h_bs^2).
double slant_range(double d_m, double h_bs_m);

// Downward tilt from the antenna to the client, theta = atan(h_bs / d),
// in radians. A purely vertical link (d = 0) gives pi/2; d = h_bs = 0 has
// no defined angle and throws.
double elevation_angle(double d_m, double h_bs_m);

// One base-station-to-client link: horizontal distance, antenna height and
// local canopy height, all in meters. Negative or non-finite values are
// rejected at construction.
class LinkGeometry {
public:
    LinkGeometry(double d_m, double h_bs_m, double h_c_m);

    double d() const { return d_m_; }
    double h_bs() const { return h_bs_m_; }
    double h_c() const { return h_c_m_; }

    double slant_range() const { return croplink::slant_range(d_m_, h_bs_m_); }
    double elevation() const { return croplink::elevation_angle(d_m_, h_bs_m_); }

private:
    double d_m_;
    double h_bs_m_;
    double h_c_m_;
};

// Portion of the slant path that runs below the canopy top. Similar
// triangles give (h_c / h_bs) * r, clamped to r: once the antenna sits at
// or below the canopy the whole path is in crops. Zero canopy gives zero.
double crop_path_length(const LinkGeometry& geometry);

}  // namespace croplink
