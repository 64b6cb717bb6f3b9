#include "fdnet/csv.hpp"

#include <charconv>
#include <string>

namespace fdnet {

namespace {

// Locale-independent formatting with 12 significant digits.
std::string fmt(double v) {
  char buf[64];
  const auto [ptr, ec] =
      std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 12);
  (void)ec;
  return std::string(buf, ptr);
}

}  // namespace

std::string emit_csv(const std::vector<ResultRecord>& records) {
  std::string out = "sweep_param,sweep_value,metric,mean,stderr,trials\n";
  for (const auto& r : records) {
    out += r.sweep_param;
    out += ',';
    out += fmt(r.sweep_value);
    out += ',';
    out += r.metric;
    out += ',';
    out += fmt(r.mean);
    out += ',';
    out += fmt(r.std_error);
    out += ',';
    out += std::to_string(r.trials);
    out += '\n';
  }
  return out;
}

}  // namespace fdnet
