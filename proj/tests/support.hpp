#ifndef HAMMERSTEIN_TESTS_SUPPORT_HPP_
#define HAMMERSTEIN_TESTS_SUPPORT_HPP_

#include <cmath>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "hammerstein/cli.hpp"
#include "hammerstein/loader.hpp"

namespace testing {

inline hammer::ModelConfig shipped(const std::string& name,
                                   const hammer::Constants& overrides = {}) {
  return hammer::load_model_text(hammer::cli::shipped_config(name), overrides);
}

// Composite trapezoid rule with `n` points on [lo,hi].
inline double trapezoid(const std::function<double(double)>& h, double lo,
                        double hi, int n = 100000) {
  const double dx = (hi - lo) / (n - 1);
  double sum = 0.5 * (h(lo) + h(hi));
  for (int i = 1; i < n - 1; ++i) sum += h(lo + i * dx);
  return sum * dx;
}

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

inline CliResult run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = hammer::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

// Value of `key = value` in a report, NaN when absent.
inline double report_value(const std::string& text, const std::string& key) {
  std::istringstream in(text);
  std::string line;
  const std::string prefix = key + " = ";
  while (std::getline(in, line))
    if (line.rfind(prefix, 0) == 0) return std::stod(line.substr(prefix.size()));
  return std::nan("");
}

inline std::string report_text(const std::string& text, const std::string& key) {
  std::istringstream in(text);
  std::string line;
  const std::string prefix = key + " = ";
  while (std::getline(in, line))
    if (line.rfind(prefix, 0) == 0) return line.substr(prefix.size());
  return {};
}

}  // namespace testing

#endif  // HAMMERSTEIN_TESTS_SUPPORT_HPP_
