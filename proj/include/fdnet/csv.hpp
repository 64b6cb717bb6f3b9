#pragma once

#include <string>
#include <vector>

#include "fdnet/harness.hpp"

namespace fdnet {

// Renders records as CSV with header
//   sweep_param,sweep_value,metric,mean,stderr,trials
// Numbers carry 12 significant digits; output is newline-terminated and
// byte-stable for identical inputs.
std::string emit_csv(const std::vector<ResultRecord>& records);

}  // namespace fdnet
