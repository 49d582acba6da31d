#ifndef HAMMERSTEIN_CORE_HPP_
#define HAMMERSTEIN_CORE_HPP_

#include <functional>
#include <stdexcept>
#include <string>

namespace hammer {

using RealFn = std::function<double(double)>;
using KernelFn = std::function<double(double, double)>;

struct Interval {
  double lo = 0.0;
  double hi = 1.0;

  double width() const { return hi - lo; }
  bool contains(double x, double eps = 0.0) const {
    return x >= lo - eps && x <= hi + eps;
  }
};

enum class Extremum { Sup, Inf };

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the admissible range of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

class InvalidMeasure : public Error {
 public:
  using Error::Error;
};

// Inconsistent or incomplete problem description.
class SpecificationError : public Error {
 public:
  using Error::Error;
};

// A check was routed through the path of a different kernel class.
class ClassMismatch : public Error {
 public:
  using Error::Error;
};

class DivergenceError : public Error {
 public:
  DivergenceError(const std::string& what, int iteration)
      : Error(what), iteration_(iteration) {}
  int iteration() const { return iteration_; }

 private:
  int iteration_;
};

// Numerical knobs shared by every check; copied into each report.
struct Settings {
  int panels = 64;
  int nodes_per_panel = 4;
  int grid_n = 512;       // t-grid for sup/inf of integrals
  int box_grid = 128;     // points per axis in box extrema
  int bound_grid = 256;   // tensor grid for kernel bound checks
  double tol = 1e-6;      // margin required by strict inequalities
};

}  // namespace hammer

#endif  // HAMMERSTEIN_CORE_HPP_
