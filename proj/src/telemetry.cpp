#include "croplink/telemetry.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "croplink/csv.hpp"
#include "croplink/rng.hpp"
#include "croplink/triangulation.hpp"

namespace croplink {

namespace {

constexpr double kEarthRadiusM = 6371000.0;
constexpr double kDegToRad = 0.017453292519943295769;
constexpr double kTwoPi = 6.283185307179586476925;

const char* kLogHeader[5] = {"timestamp", "lat", "lon", "alt_m", "rsrp_dbm"};
const char* kFieldNames[5] = {"timestamp", "lat", "lon", "alt", "rsrp"};

bool in_range(int field, double v) {
    switch (field) {
        case 1: return v >= -90.0 && v <= 90.0;
        case 2: return v >= -180.0 && v <= 180.0;
        case 3: return v >= 0.0;
        default: return true;
    }
}

}  // namespace

FlightLogParse parse_flight_log(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("empty flight log");
    auto header = split_csv_line(line);
    bool header_ok = header.size() == 5;
    for (int i = 0; header_ok && i < 5; ++i) {
        if (to_lower(header[i]) != kLogHeader[i]) header_ok = false;
    }
    if (!header_ok) {
        throw std::runtime_error(
            "malformed flight log header; expected timestamp,lat,lon,alt_m,rsrp_dbm");
    }

    FlightLogParse parse;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        auto fields = split_csv_line(line);
        if (fields.size() != 5) {
            parse.rejected.push_back({line_no, "wrong field count"});
            continue;
        }
        double values[5];
        std::string reason;
        for (int f = 0; f < 5; ++f) {
            if (fields[f].empty()) {
                reason = std::string("missing ") + kFieldNames[f];
                break;
            }
            if (!parse_double(fields[f], values[f]) || !std::isfinite(values[f])) {
                reason = std::string("invalid ") + kFieldNames[f];
                break;
            }
            if (!in_range(f, values[f])) {
                reason = std::string("out-of-range ") + kFieldNames[f];
                break;
            }
        }
        if (!reason.empty()) {
            parse.rejected.push_back({line_no, std::move(reason)});
            continue;
        }
        parse.records.push_back({values[0], values[1], values[2], values[3], values[4]});
        if (values[4] < -140.0 || values[4] > -40.0) {
            parse.outlier_lines.push_back(line_no);
        }
    }
    return parse;
}

FlightLogParse parse_flight_log_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open flight log: " + path);
    return parse_flight_log(in);
}

void write_flight_log(std::ostream& out, std::span<const FlightLogRecord> records) {
    out << "timestamp,lat,lon,alt_m,rsrp_dbm\n";
    for (const FlightLogRecord& r : records) {
        // 17 significant digits so a write/parse round trip is lossless.
        out << format_num(r.timestamp_s, 17) << ',' << format_num(r.lat_deg, 17) << ','
            << format_num(r.lon_deg, 17) << ',' << format_num(r.altitude_m, 17) << ','
            << format_num(r.rsrp_dbm, 17) << '\n';
    }
}

double ground_distance_m(double lat1_deg, double lon1_deg, double lat2_deg, double lon2_deg) {
    double dphi = (lat2_deg - lat1_deg) * kDegToRad;
    double dlambda = (lon2_deg - lon1_deg) * kDegToRad;
    double cos_mid = std::cos(0.5 * (lat1_deg + lat2_deg) * kDegToRad);
    return kEarthRadiusM * std::hypot(dphi, cos_mid * dlambda);
}

LocalProjection::LocalProjection(double ref_lat_deg, double ref_lon_deg)
    : ref_lat_deg_(ref_lat_deg), ref_lon_deg_(ref_lon_deg),
      cos_ref_lat_(std::cos(ref_lat_deg * kDegToRad)) {
    if (!(ref_lat_deg >= -90.0 && ref_lat_deg <= 90.0 && ref_lon_deg >= -180.0 &&
          ref_lon_deg <= 180.0)) {
        throw std::invalid_argument("projection reference outside lat/lon bounds");
    }
}

std::array<double, 2> LocalProjection::to_xy(double lat_deg, double lon_deg) const {
    double x = kEarthRadiusM * (lon_deg - ref_lon_deg_) * kDegToRad * cos_ref_lat_;
    double y = kEarthRadiusM * (lat_deg - ref_lat_deg_) * kDegToRad;
    return {x, y};
}

std::vector<MeasurementSample> to_samples(std::span<const FlightLogRecord> records,
                                          double base_lat_deg, double base_lon_deg,
                                          double h_c_m) {
    if (!(std::isfinite(h_c_m) && h_c_m >= 0.0)) {
        throw std::invalid_argument("crop height must be non-negative");
    }
    LocalProjection proj(base_lat_deg, base_lon_deg);
    std::vector<MeasurementSample> samples;
    samples.reserve(records.size());
    for (const FlightLogRecord& r : records) {
        auto xy = proj.to_xy(r.lat_deg, r.lon_deg);
        double d = std::hypot(xy[0], xy[1]);
        samples.push_back({LinkGeometry(d, r.altitude_m, h_c_m), r.rsrp_dbm, r.timestamp_s,
                           xy});
    }
    return samples;
}

FieldGrid grid_interpolate(std::span<const MeasurementSample> samples,
                           const FieldGridSpec& spec) {
    if (spec.nx < 1 || spec.ny < 1 || !(spec.spacing_m > 0.0)) {
        throw std::invalid_argument("invalid field grid spec");
    }

    // Deduplicate exact position repeats, averaging their values.
    std::vector<std::array<double, 2>> points;
    std::vector<double> sums;
    std::vector<std::size_t> counts;
    std::map<std::pair<double, double>, std::size_t> seen;
    for (const MeasurementSample& s : samples) {
        if (!s.position_m) {
            throw std::invalid_argument("sample lacks a planar position");
        }
        auto key = std::make_pair((*s.position_m)[0], (*s.position_m)[1]);
        auto [it, inserted] = seen.try_emplace(key, points.size());
        if (inserted) {
            points.push_back(*s.position_m);
            sums.push_back(s.rsrp_dbm);
            counts.push_back(1);
        } else {
            sums[it->second] += s.rsrp_dbm;
            counts[it->second] += 1;
        }
    }
    if (points.size() < 3) {
        throw std::invalid_argument("need at least 3 distinct sample positions");
    }
    std::vector<double> values(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        values[i] = sums[i] / static_cast<double>(counts[i]);
    }

    std::vector<Triangle> tris = delaunay_triangulate(points);
    if (tris.empty()) {
        throw std::invalid_argument("sample positions are collinear; cannot interpolate");
    }

    FieldGrid grid;
    grid.spec = spec;
    std::size_t cells = static_cast<std::size_t>(spec.nx) * static_cast<std::size_t>(spec.ny);
    grid.values_dbm.assign(cells, std::numeric_limits<double>::quiet_NaN());
    grid.valid.assign(cells, 0);

    for (int iy = 0; iy < spec.ny; ++iy) {
        for (int ix = 0; ix < spec.nx; ++ix) {
            std::array<double, 2> p = {grid.cell_x(ix), grid.cell_y(iy)};
            for (const Triangle& t : tris) {
                auto w = barycentric_weights(p, points[t.v[0]], points[t.v[1]],
                                             points[t.v[2]]);
                if (!w) continue;
                std::size_t idx = grid.index(ix, iy);
                grid.values_dbm[idx] = (*w)[0] * values[t.v[0]] + (*w)[1] * values[t.v[1]] +
                                       (*w)[2] * values[t.v[2]];
                grid.valid[idx] = 1;
                break;
            }
        }
    }
    return grid;
}

void write_field_grid(std::ostream& out, const FieldGrid& grid) {
    out << "x_m,y_m,rsrp_dbm,valid\n";
    for (int iy = 0; iy < grid.spec.ny; ++iy) {
        for (int ix = 0; ix < grid.spec.nx; ++ix) {
            std::size_t idx = grid.index(ix, iy);
            out << format_num(grid.cell_x(ix)) << ',' << format_num(grid.cell_y(iy)) << ',';
            if (grid.valid[idx]) {
                out << format_num(grid.values_dbm[idx]);
            } else {
                out << "nan";
            }
            out << ',' << static_cast<int>(grid.valid[idx]) << '\n';
        }
    }
}

std::vector<MeasurementSample> synth_generate(const ModelParams& params,
                                              const GeometryRanges& ranges, std::size_t n,
                                              double noise_sigma_db, std::uint64_t seed) {
    auto ordered = [](double lo, double hi) {
        return std::isfinite(lo) && std::isfinite(hi) && lo <= hi;
    };
    if (n < 1) throw std::invalid_argument("need at least 1 sample");
    if (!(ordered(ranges.d_min_m, ranges.d_max_m) && ranges.d_min_m > 0.0) ||
        !(ordered(ranges.h_bs_min_m, ranges.h_bs_max_m) && ranges.h_bs_min_m >= 0.0) ||
        !(ordered(ranges.h_c_min_m, ranges.h_c_max_m) && ranges.h_c_min_m >= 0.0)) {
        throw std::invalid_argument("invalid geometry ranges");
    }
    if (!(std::isfinite(noise_sigma_db) && noise_sigma_db >= 0.0)) {
        throw std::invalid_argument("noise sigma must be non-negative");
    }

    Rng rng(seed);
    std::vector<MeasurementSample> samples;
    samples.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        // Fixed per-sample draw order: d, h_bs, h_c, bearing, noise.
        double d = rng.uniform(ranges.d_min_m, ranges.d_max_m);
        double h_bs = rng.uniform(ranges.h_bs_min_m, ranges.h_bs_max_m);
        double h_c = rng.uniform(ranges.h_c_min_m, ranges.h_c_max_m);
        double bearing = rng.uniform(0.0, kTwoPi);
        double noise = rng.normal();
        LinkGeometry geom(d, h_bs, h_c);
        double rsrp = predict_rsrp(params, geom).rsrp_dbm + noise_sigma_db * noise;
        samples.push_back({geom, rsrp, 0.5 * static_cast<double>(i),
                           std::array<double, 2>{d * std::cos(bearing), d * std::sin(bearing)}});
    }
    return samples;
}

}  // namespace croplink
