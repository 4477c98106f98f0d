#include "croplink/params_io.hpp"

#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "croplink/csv.hpp"

namespace croplink {

ModelParams read_params(std::istream& in) {
    std::map<std::string, double> values;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::string stripped = trim(line);
        if (stripped.empty()) continue;
        auto eq = stripped.find('=');
        if (eq == std::string::npos) {
            throw std::runtime_error("params line " + std::to_string(line_no) +
                                     ": expected 'key = value'");
        }
        std::string key = to_lower(trim(stripped.substr(0, eq)));
        double value = 0.0;
        if (!parse_double(stripped.substr(eq + 1), value)) {
            throw std::runtime_error("params line " + std::to_string(line_no) +
                                     ": bad numeric value for '" + key + "'");
        }
        if (key != "alpha" && key != "beta" && key != "gamma" && key != "g") {
            throw std::runtime_error("params line " + std::to_string(line_no) +
                                     ": unknown key '" + key + "'");
        }
        values[key] = value;
    }
    for (const char* key : {"alpha", "beta", "gamma", "g"}) {
        if (!values.count(key)) {
            throw std::runtime_error(std::string("params file missing key '") + key + "'");
        }
    }
    return ModelParams(values["alpha"], values["beta"], values["gamma"], values["g"]);
}

ModelParams read_params_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open params file: " + path);
    return read_params(in);
}

void write_params(std::ostream& out, const ModelParams& params) {
    out << "# model parameters: alpha dB/m, beta and gamma dimensionless, g dBm\n";
    out << "alpha = " << format_num(params.alpha(), 9) << "\n";
    out << "beta = " << format_num(params.beta(), 9) << "\n";
    out << "gamma = " << format_num(params.gamma(), 9) << "\n";
    out << "g = " << format_num(params.g(), 9) << "\n";
}

void write_params_file(const std::string& path, const ModelParams& params) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write params file: " + path);
    write_params(out, params);
}

}  // namespace croplink
