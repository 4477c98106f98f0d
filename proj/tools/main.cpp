// croplink: canopy-aware link planning for farm base stations.

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "croplink/calibration.hpp"
#include "croplink/coverage.hpp"
#include "croplink/csv.hpp"
#include "croplink/height.hpp"
#include "croplink/link_quality.hpp"
#include "croplink/params_io.hpp"
#include "croplink/telemetry.hpp"

namespace {

using nlohmann::json;
using namespace croplink;

constexpr double kDefaultBaseLat = 40.1;
constexpr double kDefaultBaseLon = -88.2;

// All report numbers pass through 6-significant-digit formatting so output
// files stay byte-stable.
double round6(double v) {
    double out = 0.0;
    parse_double(format_num(v), out);
    return out;
}

json json_num_list(const std::vector<double>& values) {
    json arr = json::array();
    for (double v : values) arr.push_back(round6(v));
    return arr;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    return out;
}

struct ParamOverrides {
    std::optional<double> alpha, beta, gamma, g;

    void add_flags(CLI::App* cmd) {
        cmd->add_option("--alpha", alpha, "override alpha (dB/m)");
        cmd->add_option("--beta", beta, "override beta");
        cmd->add_option("--gamma", gamma, "override gamma");
        cmd->add_option("--g", g, "override lumped gain (dBm)");
    }

    ModelParams resolve(const std::string& params_path) const {
        std::optional<ModelParams> base;
        if (!params_path.empty()) base = read_params_file(params_path);
        if (!base && !(alpha && beta && gamma && g)) {
            throw std::runtime_error(
                "model parameters required: pass --params or all of --alpha --beta --gamma --g");
        }
        return ModelParams(alpha.value_or(base ? base->alpha() : 0.0),
                           beta.value_or(base ? base->beta() : 0.0),
                           gamma.value_or(base ? base->gamma() : 0.0),
                           g.value_or(base ? base->g() : 0.0));
    }
};

struct MastFlags {
    double h_min = 1.0;
    double h_max = 30.0;
    double step = 0.25;

    void add_flags(CLI::App* cmd) {
        cmd->add_option("--h-min", h_min, "lowest mast height, m");
        cmd->add_option("--h-max", h_max, "highest mast height, m");
        cmd->add_option("--step", step, "coarse search step, m");
    }

    MastConstraints resolve() const { return MastConstraints(h_min, h_max, step); }
};

std::vector<ClientSite> read_clients_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open clients file: " + path);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("empty clients file");
    auto header = split_csv_line(line);
    if (header.size() != 3 || to_lower(header[0]) != "d_m" || to_lower(header[1]) != "h_c_m" ||
        to_lower(header[2]) != "weight") {
        throw std::runtime_error("clients header must be d_m,h_c_m,weight");
    }
    std::vector<ClientSite> clients;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        auto fields = split_csv_line(line);
        double d = 0.0, h_c = 0.0, w = 1.0;
        if (fields.size() != 3 || !parse_double(fields[0], d) || !parse_double(fields[1], h_c) ||
            (!fields[2].empty() && !parse_double(fields[2], w))) {
            throw std::runtime_error("clients line " + std::to_string(line_no) +
                                     ": expected d_m,h_c_m,weight");
        }
        clients.emplace_back(d, h_c, fields[2].empty() ? 1.0 : w);
    }
    if (clients.empty()) throw std::runtime_error("clients file has no rows");
    return clients;
}

std::vector<WorkArea> read_work_areas_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open work-areas file: " + path);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("empty work-areas file");
    auto header = split_csv_line(line);
    if (header.size() != 3 || to_lower(header[0]) != "day" || to_lower(header[1]) != "x_m" ||
        to_lower(header[2]) != "y_m") {
        throw std::runtime_error("work-areas header must be day,x_m,y_m");
    }
    std::vector<WorkArea> areas;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        auto fields = split_csv_line(line);
        WorkArea area{};
        if (fields.size() != 3 || !parse_int(fields[0], area.day) ||
            !parse_double(fields[1], area.x_m) || !parse_double(fields[2], area.y_m)) {
            throw std::runtime_error("work-areas line " + std::to_string(line_no) +
                                     ": expected day,x_m,y_m");
        }
        areas.push_back(area);
    }
    return areas;
}

GridSpec parse_grid_flag(const std::string& text) {
    auto fields = split_csv_line(text);
    GridSpec grid{};
    if (fields.size() != 6 || !parse_double(fields[0], grid.x_min) ||
        !parse_double(fields[1], grid.x_max) || !parse_double(fields[2], grid.y_min) ||
        !parse_double(fields[3], grid.y_max) || !parse_int(fields[4], grid.nx) ||
        !parse_int(fields[5], grid.ny)) {
        throw std::runtime_error("--grid expects x_min,x_max,y_min,y_max,nx,ny");
    }
    return grid;
}

MultiObjective parse_objective(const std::string& name) {
    if (name == "mean") return MultiObjective::MeanDbm;
    if (name == "min") return MultiObjective::MinDbm;
    if (name == "mean-linear") return MultiObjective::MeanLinearPower;
    throw std::runtime_error("unknown objective '" + name + "' (mean, min, mean-linear)");
}

void write_profile_csv(const std::string& path,
                       const std::vector<std::pair<double, double>>& profile) {
    std::ofstream out = open_out(path);
    out << "height_m,objective_dbm\n";
    for (const auto& [h, v] : profile) {
        out << format_num(h) << ',' << format_num(v) << '\n';
    }
}

// ---- fit ----------------------------------------------------------------

struct FitCmd {
    std::string log_path;
    std::string out_params;
    std::string report_path;
    double h_c = 0.0;
    double base_lat = kDefaultBaseLat;
    double base_lon = kDefaultBaseLon;
    std::optional<double> init_alpha, init_beta, init_gamma, init_g;
    FitOptions options;

    int run() const {
        FlightLogParse parsed = parse_flight_log_file(log_path);
        for (const ParseRejection& r : parsed.rejected) {
            std::cerr << "rejected line " << r.line << ": " << r.reason << "\n";
        }
        std::vector<MeasurementSample> samples =
            to_samples(parsed.records, base_lat, base_lon, h_c);

        // Default start: mid-range shape parameters; gain from inverting the
        // free-space term at the strongest sample.
        double max_rsrp = -1e30;
        double min_r = 1e30;
        for (const MeasurementSample& s : samples) {
            max_rsrp = std::max(max_rsrp, s.rsrp_dbm);
            min_r = std::min(min_r, s.geometry.slant_range());
        }
        double g0 = samples.empty() ? -60.0 : max_rsrp + 20.0 * std::log10(std::max(min_r, 1.0));
        ModelParams initial(init_alpha.value_or(0.1), init_beta.value_or(0.5),
                            init_gamma.value_or(1.0), init_g.value_or(g0));

        FitResult result = fit(samples, initial, options);
        write_params_file(out_params, result.params);

        GoodnessStats stats = goodness(result.params, samples);
        json report;
        report["params"] = {{"alpha", round6(result.params.alpha())},
                            {"beta", round6(result.params.beta())},
                            {"gamma", round6(result.params.gamma())},
                            {"g", round6(result.params.g())}};
        report["rmse_db"] = round6(result.rmse_db);
        report["median_abs_error_db"] = round6(result.median_abs_error_db);
        report["max_abs_error_db"] = round6(stats.max_abs_error_db);
        report["iterations"] = result.iterations;
        report["converged"] = result.converged;
        report["active_bounds"] = result.active_bounds;
        report["cost_trace"] = json_num_list(result.cost_trace);
        report["n_samples"] = samples.size();
        report["n_rejected"] = parsed.rejected.size();
        report["n_rsrp_outliers"] = parsed.outlier_lines.size();
        if (!report_path.empty()) open_out(report_path) << report.dump(2) << "\n";

        std::cout << "fitted alpha: " << format_num(result.params.alpha()) << "\n"
                  << "fitted beta: " << format_num(result.params.beta()) << "\n"
                  << "fitted gamma: " << format_num(result.params.gamma()) << "\n"
                  << "fitted g: " << format_num(result.params.g()) << "\n"
                  << "rmse_db: " << format_num(result.rmse_db) << "\n"
                  << "median_abs_error_db: " << format_num(result.median_abs_error_db) << "\n"
                  << "converged: " << (result.converged ? "true" : "false") << "\n";
        return result.converged ? 0 : 2;
    }
};

// ---- predict ------------------------------------------------------------

struct PredictCmd {
    std::string params_path;
    ParamOverrides overrides;
    double d = 0.0;
    double h_bs = 0.0;
    double h_c = 0.0;

    int run() const {
        ModelParams params = overrides.resolve(params_path);
        RsrpPrediction p = predict_rsrp(params, LinkGeometry(d, h_bs, h_c));
        std::cout << "rsrp_dbm: " << format_num(p.rsrp_dbm) << "\n"
                  << "path_loss_db: " << format_num(p.path_loss_db) << "\n"
                  << "crop_attenuation_db: " << format_num(p.crop_attenuation_db) << "\n"
                  << "directivity_gain_db: " << format_num(p.directivity_gain_db) << "\n";
        return 0;
    }
};

// ---- optimize-height ----------------------------------------------------

struct OptimizeHeightCmd {
    std::string params_path;
    ParamOverrides overrides;
    std::string clients_path;
    std::optional<double> d;
    double h_c = 0.0;
    double weight = 1.0;
    MastFlags mast;
    std::string objective_name = "mean";
    std::string profile_out;
    std::optional<double> fixed_height;

    int run() const {
        ModelParams params = overrides.resolve(params_path);
        std::vector<ClientSite> clients;
        if (!clients_path.empty()) {
            clients = read_clients_csv(clients_path);
        } else if (d) {
            clients.emplace_back(*d, h_c, weight);
        } else {
            throw std::runtime_error("pass --clients or --d");
        }
        MastConstraints constraints = mast.resolve();
        MultiObjective objective = parse_objective(objective_name);

        HeightDecision decision = optimal_height_multi(params, clients, constraints, objective);
        std::cout << "h_star_m: " << format_num(decision.h_star_m) << "\n"
                  << "objective_dbm: " << format_num(decision.predicted_rsrp_dbm) << "\n";
        if (fixed_height) {
            double gain =
                gain_vs_fixed_db(params, clients, *fixed_height, constraints, objective);
            std::cout << "gain_vs_fixed_db: " << format_num(gain) << "\n";
        }
        if (!profile_out.empty()) write_profile_csv(profile_out, decision.profile);
        return 0;
    }
};

// ---- coverage -----------------------------------------------------------

struct CoverageCmd {
    std::string params_path;
    ParamOverrides overrides;
    std::string grid_text = "10,60,-25,25,20,20";
    double h_c = 0.0;
    double fixed_height = 5.0;
    MastFlags mast;
    std::string out_grid;
    std::string out_report;

    int run() const {
        ModelParams params = overrides.resolve(params_path);
        CoverageReport report = field_comparison(params, parse_grid_flag(grid_text), h_c,
                                                 fixed_height, mast.resolve());
        std::cout << "median_gain_db: " << format_num(report.median_gain_db) << "\n"
                  << "mean_gain_db: " << format_num(report.mean_gain_db) << "\n"
                  << "p90_gain_db: " << format_num(report.p90_gain_db) << "\n";
        if (!out_grid.empty()) {
            std::ofstream out = open_out(out_grid);
            out << "x_m,y_m,rsrp_fixed_dbm,rsrp_variable_dbm,delta_db\n";
            for (const CoveragePoint& p : report.grid) {
                out << format_num(p.x_m) << ',' << format_num(p.y_m) << ','
                    << format_num(p.rsrp_fixed_dbm) << ',' << format_num(p.rsrp_variable_dbm)
                    << ',' << format_num(p.delta_db) << '\n';
            }
        }
        if (!out_report.empty()) {
            json doc;
            doc["median_gain_db"] = round6(report.median_gain_db);
            doc["mean_gain_db"] = round6(report.mean_gain_db);
            doc["p90_gain_db"] = round6(report.p90_gain_db);
            doc["n_points"] = report.grid.size();
            doc["fixed_height_m"] = round6(fixed_height);
            doc["cdf_fixed_dbm"] = json_num_list(report.cdf_fixed_dbm);
            doc["cdf_variable_dbm"] = json_num_list(report.cdf_variable_dbm);
            open_out(out_report) << doc.dump(2) << "\n";
        }
        return 0;
    }
};

// ---- plan ---------------------------------------------------------------

struct PlanCmd {
    double farm_width = 0.0;
    double farm_height = 0.0;
    double radius = 0.0;
    std::string policy = "paper";
    std::string work_areas_path;
    bool edge_only = false;
    std::string out_schedule;
    std::string out_summary;

    int run() const {
        SpacingPolicy spacing;
        if (policy == "paper") {
            spacing = SpacingPolicy::TangentCircles;
        } else if (policy == "full-cover") {
            spacing = SpacingPolicy::FullCover;
        } else {
            throw std::runtime_error("unknown policy '" + policy + "' (paper, full-cover)");
        }
        FarmExtent farm(farm_width, farm_height);
        std::vector<WorkArea> areas;
        if (!work_areas_path.empty()) areas = read_work_areas_csv(work_areas_path);
        MobilityPlan plan = mobile_plan(farm, areas, radius, edge_only, spacing);
        std::cout << "static sites: " << plan.sites_static << ", mobile: " << plan.sites_mobile
                  << "\n";
        if (!out_schedule.empty()) {
            std::ofstream out = open_out(out_schedule);
            out << "day,area_x_m,area_y_m,gateway_x_m,gateway_y_m\n";
            for (const MobilityPlan::Stop& stop : plan.schedule) {
                out << stop.day << ',' << format_num(stop.area_x_m) << ','
                    << format_num(stop.area_y_m) << ',' << format_num(stop.gateway_x_m) << ','
                    << format_num(stop.gateway_y_m) << '\n';
            }
        }
        if (!out_summary.empty()) {
            json doc;
            doc["sites_static"] = plan.sites_static;
            doc["sites_mobile"] = plan.sites_mobile;
            doc["policy"] = policy;
            doc["radius_m"] = round6(radius);
            json days = json::array();
            for (const MobilityPlan::Stop& stop : plan.schedule) {
                days.push_back({{"day", stop.day},
                                {"area_x_m", round6(stop.area_x_m)},
                                {"area_y_m", round6(stop.area_y_m)},
                                {"gateway_x_m", round6(stop.gateway_x_m)},
                                {"gateway_y_m", round6(stop.gateway_y_m)}});
            }
            doc["schedule"] = days;
            open_out(out_summary) << doc.dump(2) << "\n";
        }
        return 0;
    }
};

// ---- teleop -------------------------------------------------------------

struct TeleopCmd {
    double capacity = 0.0;
    std::optional<double> per_stream;
    double headroom = 0.9;
    std::string profiles_path;
    std::string resolution;
    std::optional<double> compression;
    std::string params_path;
    ParamOverrides overrides;
    std::optional<double> min_uplink;
    double h_c = 0.0;
    MastFlags mast;
    std::string curve_path;
    double d_max = 10000.0;

    int run() const {
        double stream_mbps;
        if (per_stream) {
            stream_mbps = *per_stream;
        } else {
            if (profiles_path.empty() || resolution.empty() || !compression) {
                throw std::runtime_error(
                    "pass a per-stream rate, or --profiles with --resolution and "
                    "--compression");
            }
            StreamProfileTable table = StreamProfileTable::from_csv_file(profiles_path);
            stream_mbps = table.bitrate_mbps(resolution, *compression);
            std::cout << "per_stream_mbps: " << format_num(stream_mbps) << "\n";
        }
        std::cout << "supported streams: " << teleop_capacity(capacity, stream_mbps, headroom)
                  << "\n";
        if (min_uplink) {
            ModelParams params = overrides.resolve(params_path);
            LinkQualityCurve curve = curve_path.empty()
                                         ? LinkQualityCurve::synthetic_default()
                                         : LinkQualityCurve::from_csv_file(curve_path);
            double range =
                teleop_range_m(params, h_c, mast.resolve(), curve, *min_uplink, d_max);
            std::cout << "teleop_range_m: " << format_num(range) << "\n";
        }
        return 0;
    }
};

// ---- synth --------------------------------------------------------------

struct SynthCmd {
    std::string params_path;
    ParamOverrides overrides;
    std::size_t n = 0;
    std::uint64_t seed = 1;
    double noise = 0.0;
    double d_min = 10.0;
    double d_max = 60.0;
    double alt_min = 0.5;
    double alt_max = 30.0;
    double h_c = 0.0;
    double base_lat = kDefaultBaseLat;
    double base_lon = kDefaultBaseLon;
    std::string out_path;

    int run() const {
        ModelParams params = overrides.resolve(params_path);
        GeometryRanges ranges{d_min, d_max, alt_min, alt_max, h_c, h_c};
        std::vector<MeasurementSample> samples = synth_generate(params, ranges, n, noise, seed);

        // Positions map back to lat/lon around the base station, so the log
        // round-trips through the same projection used when fitting.
        constexpr double earth_r = 6371000.0;
        constexpr double rad_to_deg = 57.29577951308232087680;
        double cos_lat = std::cos(base_lat / rad_to_deg);
        std::vector<FlightLogRecord> records;
        records.reserve(samples.size());
        for (const MeasurementSample& s : samples) {
            const auto& xy = *s.position_m;
            records.push_back({*s.timestamp_s,
                               base_lat + (xy[1] / earth_r) * rad_to_deg,
                               base_lon + (xy[0] / (earth_r * cos_lat)) * rad_to_deg,
                               s.geometry.h_bs(), s.rsrp_dbm});
        }
        std::ofstream out = open_out(out_path);
        write_flight_log(out, records);
        std::cout << "wrote " << records.size() << " records\n";
        return 0;
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"canopy-aware link planning for farm base stations"};
    app.require_subcommand(1);

    FitCmd fit_cmd;
    CLI::App* fit_app = app.add_subcommand("fit", "fit model parameters to a flight log");
    fit_app->add_option("log", fit_cmd.log_path, "flight log CSV")->required();
    fit_app->add_option("--h-c", fit_cmd.h_c, "crop height during capture, m");
    fit_app->add_option("--base-lat", fit_cmd.base_lat, "base station latitude, deg");
    fit_app->add_option("--base-lon", fit_cmd.base_lon, "base station longitude, deg");
    fit_app->add_option("--init-alpha", fit_cmd.init_alpha, "initial alpha");
    fit_app->add_option("--init-beta", fit_cmd.init_beta, "initial beta");
    fit_app->add_option("--init-gamma", fit_cmd.init_gamma, "initial gamma");
    fit_app->add_option("--init-g", fit_cmd.init_g, "initial g");
    fit_app->add_option("--max-iter", fit_cmd.options.max_iterations, "iteration cap");
    fit_app->add_option("--tol", fit_cmd.options.tolerance, "convergence tolerance");
    fit_app->add_option("--starts", fit_cmd.options.starts, "multi-start count");
    fit_app->add_flag("--fd-jacobian", fit_cmd.options.finite_difference_jacobian,
                      "finite-difference Jacobian instead of the analytic one");
    fit_app->add_option("--out-params", fit_cmd.out_params, "fitted parameter file")->required();
    fit_app->add_option("--report", fit_cmd.report_path, "fit report JSON");

    PredictCmd predict_cmd;
    CLI::App* predict_app = app.add_subcommand("predict", "predict RSRP for one link");
    predict_app->add_option("--params", predict_cmd.params_path, "model parameter file");
    predict_cmd.overrides.add_flags(predict_app);
    predict_app->add_option("--d", predict_cmd.d, "horizontal distance, m")->required();
    predict_app->add_option("--h-bs", predict_cmd.h_bs, "antenna height, m")->required();
    predict_app->add_option("--h-c", predict_cmd.h_c, "crop height, m");

    OptimizeHeightCmd opt_cmd;
    CLI::App* opt_app = app.add_subcommand("optimize-height", "choose the best mast height");
    opt_app->add_option("--params", opt_cmd.params_path, "model parameter file");
    opt_cmd.overrides.add_flags(opt_app);
    opt_app->add_option("--clients", opt_cmd.clients_path, "clients CSV (d_m,h_c_m,weight)");
    opt_app->add_option("--d", opt_cmd.d, "single client distance, m");
    opt_app->add_option("--h-c", opt_cmd.h_c, "single client crop height, m");
    opt_app->add_option("--weight", opt_cmd.weight, "single client weight");
    opt_cmd.mast.add_flags(opt_app);
    opt_app->add_option("--objective", opt_cmd.objective_name, "mean, min or mean-linear");
    opt_app->add_option("--profile-out", opt_cmd.profile_out, "write profile CSV here");
    opt_app->add_option("--fixed-height", opt_cmd.fixed_height,
                        "also report the gain over this fixed height, m");

    CoverageCmd cov_cmd;
    CLI::App* cov_app = app.add_subcommand("coverage", "fixed vs optimized field comparison");
    cov_app->add_option("--params", cov_cmd.params_path, "model parameter file");
    cov_cmd.overrides.add_flags(cov_app);
    cov_app->add_option("--grid", cov_cmd.grid_text, "x_min,x_max,y_min,y_max,nx,ny");
    cov_app->add_option("--h-c", cov_cmd.h_c, "crop height, m");
    cov_app->add_option("--fixed-height", cov_cmd.fixed_height, "baseline mast height, m");
    cov_cmd.mast.add_flags(cov_app);
    cov_app->add_option("--out-grid", cov_cmd.out_grid, "per-point CSV");
    cov_app->add_option("--out-report", cov_cmd.out_report, "aggregate JSON");

    PlanCmd plan_cmd;
    CLI::App* plan_app = app.add_subcommand("plan", "static grid vs one mobile gateway");
    plan_app->add_option("--farm-width", plan_cmd.farm_width, "farm width, m")->required();
    plan_app->add_option("--farm-height", plan_cmd.farm_height, "farm height, m")->required();
    plan_app->add_option("--radius", plan_cmd.radius, "coverage radius, m")->required();
    plan_app->add_option("--policy", plan_cmd.policy, "site spacing: paper or full-cover");
    plan_app->add_option("--work-areas", plan_cmd.work_areas_path, "CSV day,x_m,y_m");
    plan_app->add_flag("--edge-only", plan_cmd.edge_only, "gateway restricted to field edges");
    plan_app->add_option("--out-schedule", plan_cmd.out_schedule, "schedule CSV");
    plan_app->add_option("--out-summary", plan_cmd.out_summary, "plan summary JSON");

    TeleopCmd teleop_cmd;
    CLI::App* teleop_app = app.add_subcommand("teleop", "stream capacity and range");
    teleop_app->add_option("capacity", teleop_cmd.capacity, "uplink capacity, Mbps")
        ->required();
    teleop_app->add_option("per-stream", teleop_cmd.per_stream, "per-stream rate, Mbps");
    teleop_app->add_option("--headroom", teleop_cmd.headroom, "usable capacity fraction");
    teleop_app->add_option("--profiles", teleop_cmd.profiles_path,
                           "stream profile CSV to derive the per-stream rate");
    teleop_app->add_option("--resolution", teleop_cmd.resolution, "video resolution, e.g. 640x480");
    teleop_app->add_option("--compression", teleop_cmd.compression, "compression percent");
    teleop_app->add_option("--min-uplink", teleop_cmd.min_uplink,
                           "also report range for this uplink rate, Mbps");
    teleop_app->add_option("--params", teleop_cmd.params_path, "model parameter file");
    teleop_cmd.overrides.add_flags(teleop_app);
    teleop_app->add_option("--h-c", teleop_cmd.h_c, "crop height, m");
    teleop_cmd.mast.add_flags(teleop_app);
    teleop_app->add_option("--curve", teleop_cmd.curve_path, "RSRP-to-throughput curve CSV");
    teleop_app->add_option("--d-max", teleop_cmd.d_max, "range search cap, m");

    SynthCmd synth_cmd;
    CLI::App* synth_app = app.add_subcommand("synth", "generate a synthetic flight log");
    synth_app->add_option("--params", synth_cmd.params_path, "model parameter file");
    synth_cmd.overrides.add_flags(synth_app);
    synth_app->add_option("--n", synth_cmd.n, "sample count")->required();
    synth_app->add_option("--seed", synth_cmd.seed, "generator seed");
    synth_app->add_option("--noise", synth_cmd.noise, "Gaussian noise sigma, dB");
    synth_app->add_option("--d-min", synth_cmd.d_min, "min distance, m");
    synth_app->add_option("--d-max", synth_cmd.d_max, "max distance, m");
    synth_app->add_option("--alt-min", synth_cmd.alt_min, "min altitude, m");
    synth_app->add_option("--alt-max", synth_cmd.alt_max, "max altitude, m");
    synth_app->add_option("--h-c", synth_cmd.h_c, "crop height, m");
    synth_app->add_option("--base-lat", synth_cmd.base_lat, "base station latitude, deg");
    synth_app->add_option("--base-lon", synth_cmd.base_lon, "base station longitude, deg");
    synth_app->add_option("--out", synth_cmd.out_path, "flight log CSV")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (fit_app->parsed()) return fit_cmd.run();
        if (predict_app->parsed()) return predict_cmd.run();
        if (opt_app->parsed()) return opt_cmd.run();
        if (cov_app->parsed()) return cov_cmd.run();
        if (plan_app->parsed()) return plan_cmd.run();
        if (teleop_app->parsed()) return teleop_cmd.run();
        if (synth_app->parsed()) return synth_cmd.run();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
