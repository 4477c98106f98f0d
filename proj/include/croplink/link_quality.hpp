#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "croplink/height.hpp"
#include "croplink/model.hpp"

namespace croplink {

enum class Direction { Downlink, Uplink };

struct CurveKnot {
    double rsrp_dbm;
    double downlink_mbps;
    double uplink_mbps;
};

// Monotone RSRP-to-throughput mapping. Knots must be strictly increasing in
// RSRP with non-decreasing rates; queries interpolate linearly and clamp to
// the end knots outside the range.
class LinkQualityCurve {
public:
    LinkQualityCurve(std::vector<CurveKnot> knots, std::string source);

    // CSV with header rsrp_dbm,downlink_mbps,uplink_mbps.
    static LinkQualityCurve from_csv(std::istream& in, std::string source);
    static LinkQualityCurve from_csv_file(const std::string& path);

    // Logistic placeholder saturating at 100 Mbps down / 20 Mbps up, for
    // running the pipeline before a measured curve is available.
    static LinkQualityCurve synthetic_default();

    double throughput_mbps(double rsrp_dbm, Direction direction) const;

    // Smallest RSRP that reaches rate_mbps; -inf when even the weakest knot
    // does, nullopt when the curve never does.
    std::optional<double> min_rsrp_for(double rate_mbps, Direction direction) const;

    const std::vector<CurveKnot>& knots() const { return knots_; }
    const std::string& source() const { return source_; }

private:
    std::vector<CurveKnot> knots_;
    std::string source_;
};

// floor(uplink_capacity * headroom / per_stream), the number of concurrent
// video streams the shared uplink carries.
int teleop_capacity(double uplink_capacity_mbps, double per_stream_mbps, double headroom);

struct StreamProfile {
    std::string resolution;  // e.g. "640x480"
    double compression_pct;  // [0, 100]
    double bitrate_mbps;
};

// Per-resolution bitrate table, linearly interpolated over compression.
class StreamProfileTable {
public:
    explicit StreamProfileTable(std::vector<StreamProfile> rows);

    // CSV with header resolution,compression_pct,bitrate_mbps.
    static StreamProfileTable from_csv(std::istream& in);
    static StreamProfileTable from_csv_file(const std::string& path);

    double bitrate_mbps(const std::string& resolution, double compression_pct) const;

    const std::vector<StreamProfile>& rows() const { return rows_; }

private:
    std::vector<StreamProfile> rows_;
};

// Largest distance whose optimal-height RSRP still sustains min_uplink_mbps
// through the curve. 0 when unreachable, d_max_m at the search cap.
double teleop_range_m(const ModelParams& params, double h_c_m, const MastConstraints& mast,
                      const LinkQualityCurve& curve, double min_uplink_mbps,
                      double d_max_m = 10000.0);

}  // namespace croplink
