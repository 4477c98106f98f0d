#include <cmath>
#include <sstream>
#include <stdexcept>

#include "doctest.h"
#include "oracles.hpp"

#include "croplink/telemetry.hpp"

using namespace croplink;

TEST_CASE("flight log parsing") {
    SUBCASE("well-formed rows all parse") {
        std::stringstream in(
            "timestamp,lat,lon,alt_m,rsrp_dbm\n"
            "0.0,40.1,-88.2,5.0,-80.5\n"
            "0.5,40.1001,-88.2,6.0,-81.0\n"
            "1.0,40.1002,-88.2,7.0,-82.0\n");
        FlightLogParse parse = parse_flight_log(in);
        CHECK(parse.records.size() == 3);
        CHECK(parse.rejected.empty());
        CHECK(parse.outlier_lines.empty());
        CHECK(parse.records[1].altitude_m == 6.0);
    }
    SUBCASE("header is case-insensitive") {
        std::stringstream in("Timestamp,LAT,Lon,Alt_M,RSRP_dBm\n0,40,-88,5,-80\n");
        CHECK(parse_flight_log(in).records.size() == 1);
    }
    SUBCASE("missing rsrp is rejected with the field name") {
        std::stringstream in("timestamp,lat,lon,alt_m,rsrp_dbm\n0.0,40.1,-88.2,5.0,\n");
        FlightLogParse parse = parse_flight_log(in);
        CHECK(parse.records.empty());
        REQUIRE(parse.rejected.size() == 1);
        CHECK(parse.rejected[0].reason == "missing rsrp");
        CHECK(parse.rejected[0].line == 2);
    }
    SUBCASE("bad fields carry reasons") {
        std::stringstream in(
            "timestamp,lat,lon,alt_m,rsrp_dbm\n"
            "0.0,95.0,-88.2,5.0,-80\n"
            "0.5,40.1,-88.2,-2.0,-80\n"
            "1.0,40.1,-88.2,abc,-80\n"
            "1.5,40.1,-88.2,5.0\n");
        FlightLogParse parse = parse_flight_log(in);
        CHECK(parse.records.empty());
        REQUIRE(parse.rejected.size() == 4);
        CHECK(parse.rejected[0].reason == "out-of-range lat");
        CHECK(parse.rejected[1].reason == "out-of-range alt");
        CHECK(parse.rejected[2].reason == "invalid alt");
        CHECK(parse.rejected[3].reason == "wrong field count");
    }
    SUBCASE("rsrp outliers are kept but flagged") {
        std::stringstream in("timestamp,lat,lon,alt_m,rsrp_dbm\n0.0,40.1,-88.2,5.0,-10.0\n");
        FlightLogParse parse = parse_flight_log(in);
        CHECK(parse.records.size() == 1);
        CHECK(parse.rejected.empty());
        REQUIRE(parse.outlier_lines.size() == 1);
        CHECK(parse.outlier_lines[0] == 2);
    }
    SUBCASE("malformed header and empty input throw") {
        std::stringstream bad("time,lat,lon,alt,rsrp\n0,40,-88,5,-80\n");
        CHECK_THROWS_AS(parse_flight_log(bad), std::runtime_error);
        std::stringstream empty("");
        CHECK_THROWS_AS(parse_flight_log(empty), std::runtime_error);
    }
    SUBCASE("a one-minute capture at 2 Hz yields 120 records") {
        std::stringstream in;
        in << "timestamp,lat,lon,alt_m,rsrp_dbm\n";
        for (int i = 0; i < 120; ++i) {
            in << 0.5 * i << ",40.1,-88.2," << 1.0 + 0.2 * i << ",-85\n";
        }
        CHECK(parse_flight_log(in).records.size() == 120);
    }
}

TEST_CASE("flight log write/parse round trip is lossless") {
    Rng rng(41);
    std::vector<FlightLogRecord> records;
    for (int i = 0; i < 50; ++i) {
        records.push_back({rng.uniform(0.0, 600.0), rng.uniform(40.0, 40.05),
                           rng.uniform(-88.25, -88.2), rng.uniform(0.0, 30.0),
                           rng.uniform(-130.0, -50.0)});
    }
    std::stringstream buf;
    write_flight_log(buf, records);
    FlightLogParse parse = parse_flight_log(buf);
    REQUIRE(parse.records.size() == records.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
        CHECK(parse.records[i].timestamp_s == records[i].timestamp_s);
        CHECK(parse.records[i].lat_deg == records[i].lat_deg);
        CHECK(parse.records[i].lon_deg == records[i].lon_deg);
        CHECK(parse.records[i].altitude_m == records[i].altitude_m);
        CHECK(parse.records[i].rsrp_dbm == records[i].rsrp_dbm);
    }
}

TEST_CASE("ground distance") {
    CHECK(ground_distance_m(40.0, -88.0, 40.001, -88.0) ==
          doctest::Approx(111.19).epsilon(1e-3));
    CHECK(ground_distance_m(40.0, -88.0, 40.0, -88.0) == 0.0);

    Rng rng(42);
    for (int i = 0; i < 200; ++i) {
        double lat1 = rng.uniform(39.9, 40.1);
        double lon1 = rng.uniform(-88.3, -88.1);
        double lat2 = rng.uniform(39.9, 40.1);
        double lon2 = rng.uniform(-88.3, -88.1);
        CHECK(ground_distance_m(lat1, lon1, lat2, lon2) ==
              ground_distance_m(lat2, lon2, lat1, lon1));
    }
}

TEST_CASE("records convert to samples through the local projection") {
    std::vector<FlightLogRecord> records = {
        {0.0, 40.1, -88.2, 12.5, -80.0},
        {0.5, 40.101, -88.2, 8.0, -85.0},
    };
    std::vector<MeasurementSample> samples = to_samples(records, 40.1, -88.2, 1.0);
    REQUIRE(samples.size() == 2);

    CHECK(samples[0].geometry.d() == 0.0);
    CHECK(samples[0].geometry.h_bs() == 12.5);
    CHECK(samples[0].geometry.h_c() == 1.0);
    CHECK(samples[0].rsrp_dbm == -80.0);
    CHECK(*samples[0].timestamp_s == 0.0);

    CHECK(samples[1].geometry.d() == doctest::Approx(111.19).epsilon(1e-3));
    CHECK((*samples[1].position_m)[1] == doctest::Approx(111.19).epsilon(1e-3));
}

TEST_CASE("grid interpolation") {
    auto sample_at = [](double x, double y, double v) {
        return MeasurementSample{LinkGeometry(std::max(std::hypot(x, y), 1.0), 5.0, 0.0), v,
                                 {}, std::array<double, 2>{x, y}};
    };
    std::vector<MeasurementSample> square = {
        sample_at(5.0, 5.0, -80.0), sample_at(15.0, 5.0, -90.0), sample_at(5.0, 15.0, -84.0),
        sample_at(15.0, 15.0, -86.0)};

    SUBCASE("cell centers on samples reproduce their values") {
        FieldGrid grid = grid_interpolate(square, {0.0, 0.0, 2, 2, 10.0});
        for (int iy = 0; iy < 2; ++iy) {
            for (int ix = 0; ix < 2; ++ix) CHECK(grid.valid[grid.index(ix, iy)] == 1);
        }
        CHECK(grid.values_dbm[grid.index(0, 0)] == doctest::Approx(-80.0).epsilon(1e-9));
        CHECK(grid.values_dbm[grid.index(1, 0)] == doctest::Approx(-90.0).epsilon(1e-9));
        CHECK(grid.values_dbm[grid.index(0, 1)] == doctest::Approx(-84.0).epsilon(1e-9));
        CHECK(grid.values_dbm[grid.index(1, 1)] == doctest::Approx(-86.0).epsilon(1e-9));
    }
    SUBCASE("hull-edge midpoint blends its two samples") {
        FieldGrid grid = grid_interpolate(square, {5.0, 0.0, 1, 1, 10.0});  // center (10, 5)
        REQUIRE(grid.valid[0] == 1);
        CHECK(grid.values_dbm[0] == doctest::Approx(-85.0).epsilon(1e-9));
    }
    SUBCASE("cells outside the hull stay masked") {
        FieldGrid grid = grid_interpolate(square, {20.0, 0.0, 1, 1, 10.0});  // center (25, 5)
        CHECK(grid.valid[0] == 0);
        CHECK(std::isnan(grid.values_dbm[0]));
    }
    SUBCASE("interpolated values stay inside the sample range") {
        Rng rng(43);
        std::vector<MeasurementSample> cloud;
        double lo = 1e30, hi = -1e30;
        for (int i = 0; i < 60; ++i) {
            double v = rng.uniform(-110.0, -60.0);
            lo = std::min(lo, v);
            hi = std::max(hi, v);
            cloud.push_back(sample_at(rng.uniform(0.0, 100.0), rng.uniform(0.0, 100.0), v));
        }
        FieldGrid grid = grid_interpolate(cloud, {0.0, 0.0, 20, 20, 5.0});
        int valid_cells = 0;
        for (std::size_t i = 0; i < grid.values_dbm.size(); ++i) {
            if (!grid.valid[i]) continue;
            ++valid_cells;
            CHECK(grid.values_dbm[i] >= lo - 1e-9);
            CHECK(grid.values_dbm[i] <= hi + 1e-9);
        }
        CHECK(valid_cells > 200);
    }
    SUBCASE("degenerate sample sets are rejected") {
        std::vector<MeasurementSample> two = {sample_at(0.0, 0.0, -80.0),
                                              sample_at(10.0, 0.0, -82.0)};
        CHECK_THROWS_AS(grid_interpolate(two, {0.0, 0.0, 2, 2, 5.0}), std::invalid_argument);

        std::vector<MeasurementSample> line = {sample_at(0.0, 0.0, -80.0),
                                               sample_at(10.0, 0.0, -82.0),
                                               sample_at(20.0, 0.0, -84.0)};
        CHECK_THROWS_AS(grid_interpolate(line, {0.0, 0.0, 2, 2, 5.0}), std::invalid_argument);

        std::vector<MeasurementSample> no_pos = {
            {LinkGeometry(10.0, 5.0, 0.0), -80.0, {}, {}}};
        CHECK_THROWS_AS(grid_interpolate(no_pos, {0.0, 0.0, 2, 2, 5.0}),
                        std::invalid_argument);
    }
}

TEST_CASE("field grid CSV") {
    auto sample_at = [](double x, double y, double v) {
        return MeasurementSample{LinkGeometry(std::max(std::hypot(x, y), 1.0), 5.0, 0.0), v,
                                 {}, std::array<double, 2>{x, y}};
    };
    std::vector<MeasurementSample> tri = {sample_at(0.0, 0.0, -80.0),
                                          sample_at(20.0, 0.0, -90.0),
                                          sample_at(0.0, 20.0, -86.0)};
    FieldGrid grid = grid_interpolate(tri, {0.0, 0.0, 2, 2, 10.0});
    std::stringstream out;
    write_field_grid(out, grid);
    std::string text = out.str();
    CHECK(text.rfind("x_m,y_m,rsrp_dbm,valid\n", 0) == 0);
    CHECK(text.find(",0\n") != std::string::npos);  // the far cell is masked
}

TEST_CASE("synthetic generation") {
    ModelParams params = oracles::corn_peak_params();
    GeometryRanges ranges{10.0, 60.0, 0.5, 30.0, 0.0, 2.0};

    SUBCASE("zero noise reproduces the model exactly") {
        auto samples = synth_generate(params, ranges, 200, 0.0, 7);
        for (const MeasurementSample& s : samples) {
            CHECK(s.rsrp_dbm == predict_rsrp(params, s.geometry).rsrp_dbm);
        }
    }
    SUBCASE("same seed, same dataset") {
        auto a = synth_generate(params, ranges, 200, 3.0, 7);
        auto b = synth_generate(params, ranges, 200, 3.0, 7);
        REQUIRE(a.size() == b.size());
        for (std::size_t i = 0; i < a.size(); ++i) {
            CHECK(a[i].geometry.d() == b[i].geometry.d());
            CHECK(a[i].geometry.h_bs() == b[i].geometry.h_bs());
            CHECK(a[i].geometry.h_c() == b[i].geometry.h_c());
            CHECK(a[i].rsrp_dbm == b[i].rsrp_dbm);
            CHECK((*a[i].position_m)[0] == (*b[i].position_m)[0]);
        }
        auto c = synth_generate(params, ranges, 200, 3.0, 8);
        CHECK(c[0].rsrp_dbm != a[0].rsrp_dbm);
    }
    SUBCASE("noise statistics match sigma") {
        auto samples = synth_generate(params, ranges, 10000, 3.0, 9);
        double sum = 0.0, sum2 = 0.0;
        for (const MeasurementSample& s : samples) {
            double err = s.rsrp_dbm - predict_rsrp(params, s.geometry).rsrp_dbm;
            sum += err;
            sum2 += err * err;
        }
        double n = static_cast<double>(samples.size());
        double std_dev = std::sqrt(sum2 / n - (sum / n) * (sum / n));
        CHECK(std_dev > 2.9);
        CHECK(std_dev < 3.1);
    }
    SUBCASE("bad inputs throw") {
        CHECK_THROWS_AS(synth_generate(params, ranges, 0, 0.0, 1), std::invalid_argument);
        GeometryRanges bad = ranges;
        bad.d_min_m = 0.0;
        CHECK_THROWS_AS(synth_generate(params, bad, 10, 0.0, 1), std::invalid_argument);
        CHECK_THROWS_AS(synth_generate(params, ranges, 10, -1.0, 1), std::invalid_argument);
    }
}
