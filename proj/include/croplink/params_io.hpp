#pragma once

#include <iosfwd>
#include <string>

#include "croplink/model.hpp"

namespace croplink {

// Flat key-value parameter file: one "key = value" per line, keys alpha,
// beta, gamma, g, '#' comments and blank lines allowed. All four keys are
// required.
ModelParams read_params(std::istream& in);
ModelParams read_params_file(const std::string& path);

void write_params(std::ostream& out, const ModelParams& params);
void write_params_file(const std::string& path, const ModelParams& params);

}  // namespace croplink
