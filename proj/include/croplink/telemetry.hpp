#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "croplink/calibration.hpp"

namespace croplink {

struct FlightLogRecord {
    double timestamp_s;
    double lat_deg;
    double lon_deg;
    double altitude_m;  // above ground
    double rsrp_dbm;
};

struct ParseRejection {
    std::size_t line;  // 1-based, header is line 1
    std::string reason;
};

struct FlightLogParse {
    std::vector<FlightLogRecord> records;
    std::vector<ParseRejection> rejected;
    std::vector<std::size_t> outlier_lines;  // parsed, but RSRP outside [-140, -40]
};

// CSV with header timestamp,lat,lon,alt_m,rsrp_dbm (case-insensitive).
// Structurally invalid rows are rejected with a reason; RSRP outliers are
// kept and flagged. Missing header or an empty file throws.
FlightLogParse parse_flight_log(std::istream& in);
FlightLogParse parse_flight_log_file(const std::string& path);

void write_flight_log(std::ostream& out, std::span<const FlightLogRecord> records);

// Planar ground distance on the equirectangular approximation, longitude
// scaled by the cosine of the mean latitude so the result is symmetric.
// Good to well under 0.01% at farm scales.
double ground_distance_m(double lat1_deg, double lon1_deg, double lat2_deg, double lon2_deg);

// East/north meter offsets of (lat, lon) from a fixed reference point.
class LocalProjection {
public:
    LocalProjection(double ref_lat_deg, double ref_lon_deg);
    std::array<double, 2> to_xy(double lat_deg, double lon_deg) const;

private:
    double ref_lat_deg_;
    double ref_lon_deg_;
    double cos_ref_lat_;
};

// Flight records to calibration samples: planar distance from the base
// station, drone altitude standing in for the antenna height, field-wide
// canopy height h_c.
std::vector<MeasurementSample> to_samples(std::span<const FlightLogRecord> records,
                                          double base_lat_deg, double base_lon_deg,
                                          double h_c_m);

struct FieldGridSpec {
    double origin_x_m;
    double origin_y_m;
    int nx;
    int ny;
    double spacing_m;
};

struct FieldGrid {
    FieldGridSpec spec;
    std::vector<double> values_dbm;    // row-major, NaN where invalid
    std::vector<std::uint8_t> valid;   // row-major

    std::size_t index(int ix, int iy) const {
        return static_cast<std::size_t>(iy) * static_cast<std::size_t>(spec.nx) +
               static_cast<std::size_t>(ix);
    }
    double cell_x(int ix) const { return spec.origin_x_m + (ix + 0.5) * spec.spacing_m; }
    double cell_y(int iy) const { return spec.origin_y_m + (iy + 0.5) * spec.spacing_m; }
};

// Triangulation-based linear interpolation of sample RSRP at cell centers.
// Cells outside the sample hull stay masked; nothing is extrapolated.
// Needs at least 3 non-collinear sample positions.
FieldGrid grid_interpolate(std::span<const MeasurementSample> samples,
                           const FieldGridSpec& spec);

// CSV with header x_m,y_m,rsrp_dbm,valid.
void write_field_grid(std::ostream& out, const FieldGrid& grid);

struct GeometryRanges {
    double d_min_m;
    double d_max_m;
    double h_bs_min_m;
    double h_bs_max_m;
    double h_c_min_m;
    double h_c_max_m;
};

// Synthetic dataset: geometries drawn uniformly from the ranges, RSRP =
// model prediction plus Gaussian noise. The per-sample draw order
// (d, h_bs, h_c, bearing, noise) is fixed; identical inputs reproduce the
// dataset bit for bit.
std::vector<MeasurementSample> synth_generate(const ModelParams& params,
                                              const GeometryRanges& ranges, std::size_t n,
                                              double noise_sigma_db, std::uint64_t seed);

}  // namespace croplink
