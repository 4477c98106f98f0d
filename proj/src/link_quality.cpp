#include "croplink/link_quality.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "croplink/coverage.hpp"
#include "croplink/csv.hpp"

namespace croplink {

namespace {

double knot_rate(const CurveKnot& k, Direction direction) {
    return direction == Direction::Uplink ? k.uplink_mbps : k.downlink_mbps;
}

}  // namespace

LinkQualityCurve::LinkQualityCurve(std::vector<CurveKnot> knots, std::string source)
    : knots_(std::move(knots)), source_(std::move(source)) {
    if (knots_.empty()) throw std::invalid_argument("link quality curve has no knots");
    for (std::size_t i = 0; i < knots_.size(); ++i) {
        const CurveKnot& k = knots_[i];
        if (!(std::isfinite(k.rsrp_dbm) && std::isfinite(k.downlink_mbps) &&
              std::isfinite(k.uplink_mbps) && k.downlink_mbps >= 0.0 &&
              k.uplink_mbps >= 0.0)) {
            throw std::invalid_argument("curve knot values must be finite and non-negative");
        }
        if (i > 0) {
            if (!(k.rsrp_dbm > knots_[i - 1].rsrp_dbm)) {
                throw std::invalid_argument("curve knots must strictly increase in RSRP");
            }
            if (k.downlink_mbps < knots_[i - 1].downlink_mbps ||
                k.uplink_mbps < knots_[i - 1].uplink_mbps) {
                throw std::invalid_argument("curve throughput must be non-decreasing");
            }
        }
    }
}

LinkQualityCurve LinkQualityCurve::from_csv(std::istream& in, std::string source) {
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("empty curve file");
    auto header = split_csv_line(line);
    if (header.size() != 3 || to_lower(header[0]) != "rsrp_dbm" ||
        to_lower(header[1]) != "downlink_mbps" || to_lower(header[2]) != "uplink_mbps") {
        throw std::runtime_error("curve header must be rsrp_dbm,downlink_mbps,uplink_mbps");
    }
    std::vector<CurveKnot> knots;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        auto fields = split_csv_line(line);
        CurveKnot k{};
        if (fields.size() != 3 || !parse_double(fields[0], k.rsrp_dbm) ||
            !parse_double(fields[1], k.downlink_mbps) ||
            !parse_double(fields[2], k.uplink_mbps)) {
            throw std::runtime_error("curve line " + std::to_string(line_no) +
                                     ": expected three numeric fields");
        }
        knots.push_back(k);
    }
    return LinkQualityCurve(std::move(knots), std::move(source));
}

LinkQualityCurve LinkQualityCurve::from_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open curve file: " + path);
    return from_csv(in, path);
}

LinkQualityCurve LinkQualityCurve::synthetic_default() {
    // Logistic shape between the observed saturation rates; stands in until
    // a measured table is loaded.
    std::vector<CurveKnot> knots;
    for (int rsrp = -130; rsrp <= -50; rsrp += 5) {
        double r = static_cast<double>(rsrp);
        knots.push_back({r, 100.0 / (1.0 + std::exp(-(r + 85.0) / 7.0)),
                         20.0 / (1.0 + std::exp(-(r + 88.0) / 7.0))});
    }
    return LinkQualityCurve(std::move(knots), "synthetic-default");
}

double LinkQualityCurve::throughput_mbps(double rsrp_dbm, Direction direction) const {
    if (rsrp_dbm <= knots_.front().rsrp_dbm) return knot_rate(knots_.front(), direction);
    if (rsrp_dbm >= knots_.back().rsrp_dbm) return knot_rate(knots_.back(), direction);
    auto hi = std::upper_bound(
        knots_.begin(), knots_.end(), rsrp_dbm,
        [](double value, const CurveKnot& k) { return value < k.rsrp_dbm; });
    auto lo = hi - 1;
    double t = (rsrp_dbm - lo->rsrp_dbm) / (hi->rsrp_dbm - lo->rsrp_dbm);
    return knot_rate(*lo, direction) + t * (knot_rate(*hi, direction) - knot_rate(*lo, direction));
}

std::optional<double> LinkQualityCurve::min_rsrp_for(double rate_mbps,
                                                     Direction direction) const {
    if (rate_mbps <= knot_rate(knots_.front(), direction)) {
        return -std::numeric_limits<double>::infinity();
    }
    for (std::size_t i = 1; i < knots_.size(); ++i) {
        double lo = knot_rate(knots_[i - 1], direction);
        double hi = knot_rate(knots_[i], direction);
        if (rate_mbps <= hi) {
            double t = (rate_mbps - lo) / (hi - lo);  // hi > lo here
            return knots_[i - 1].rsrp_dbm +
                   t * (knots_[i].rsrp_dbm - knots_[i - 1].rsrp_dbm);
        }
    }
    return std::nullopt;
}

int teleop_capacity(double uplink_capacity_mbps, double per_stream_mbps, double headroom) {
    if (!(uplink_capacity_mbps > 0.0) || !(per_stream_mbps > 0.0)) {
        throw std::invalid_argument("capacity and per-stream rate must be positive");
    }
    if (!(headroom > 0.0 && headroom <= 1.0)) {
        throw std::invalid_argument("headroom must lie in (0, 1]");
    }
    return static_cast<int>(std::floor(uplink_capacity_mbps * headroom / per_stream_mbps));
}

StreamProfileTable::StreamProfileTable(std::vector<StreamProfile> rows)
    : rows_(std::move(rows)) {
    if (rows_.empty()) throw std::invalid_argument("stream profile table is empty");
    for (const StreamProfile& row : rows_) {
        if (row.resolution.empty()) throw std::invalid_argument("empty resolution label");
        if (!(row.compression_pct >= 0.0 && row.compression_pct <= 100.0)) {
            throw std::invalid_argument("compression must lie in [0, 100]");
        }
        if (!(row.bitrate_mbps > 0.0)) throw std::invalid_argument("bitrate must be positive");
    }
}

StreamProfileTable StreamProfileTable::from_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("empty stream profile file");
    auto header = split_csv_line(line);
    if (header.size() != 3 || to_lower(header[0]) != "resolution" ||
        to_lower(header[1]) != "compression_pct" || to_lower(header[2]) != "bitrate_mbps") {
        throw std::runtime_error(
            "stream profile header must be resolution,compression_pct,bitrate_mbps");
    }
    std::vector<StreamProfile> rows;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        auto fields = split_csv_line(line);
        StreamProfile row;
        if (fields.size() != 3 || !parse_double(fields[1], row.compression_pct) ||
            !parse_double(fields[2], row.bitrate_mbps)) {
            throw std::runtime_error("stream profile line " + std::to_string(line_no) +
                                     ": expected resolution,compression,bitrate");
        }
        row.resolution = to_lower(fields[0]);
        rows.push_back(std::move(row));
    }
    return StreamProfileTable(std::move(rows));
}

StreamProfileTable StreamProfileTable::from_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open stream profile file: " + path);
    return from_csv(in);
}

double StreamProfileTable::bitrate_mbps(const std::string& resolution,
                                        double compression_pct) const {
    if (!(compression_pct >= 0.0 && compression_pct <= 100.0)) {
        throw std::invalid_argument("compression must lie in [0, 100]");
    }
    std::string wanted = to_lower(trim(resolution));
    std::vector<std::pair<double, double>> points;  // (compression, bitrate)
    for (const StreamProfile& row : rows_) {
        if (row.resolution == wanted) points.emplace_back(row.compression_pct, row.bitrate_mbps);
    }
    if (points.empty()) throw std::invalid_argument("unknown resolution '" + resolution + "'");
    std::sort(points.begin(), points.end());

    if (compression_pct <= points.front().first) return points.front().second;
    if (compression_pct >= points.back().first) return points.back().second;
    for (std::size_t i = 1; i < points.size(); ++i) {
        if (compression_pct <= points[i].first) {
            double span = points[i].first - points[i - 1].first;
            if (span <= 0.0) return points[i - 1].second;
            double t = (compression_pct - points[i - 1].first) / span;
            return points[i - 1].second + t * (points[i].second - points[i - 1].second);
        }
    }
    return points.back().second;
}

double teleop_range_m(const ModelParams& params, double h_c_m, const MastConstraints& mast,
                      const LinkQualityCurve& curve, double min_uplink_mbps, double d_max_m) {
    std::optional<double> threshold = curve.min_rsrp_for(min_uplink_mbps, Direction::Uplink);
    if (!threshold) return 0.0;
    return coverage_radius(params, h_c_m, mast, *threshold, d_max_m);
}

}  // namespace croplink
