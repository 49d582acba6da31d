#ifndef HAMMERSTEIN_LOADER_HPP_
#define HAMMERSTEIN_LOADER_HPP_

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hammerstein/config.hpp"
#include "hammerstein/elliptic.hpp"
#include "hammerstein/solver.hpp"
#include "hammerstein/systems.hpp"

namespace hammer {

using Constants = std::map<std::string, double>;

// A number, or a string holding a closed expression.
double config_number(const ConfigValue& v, const Constants& c);
double config_number(const ConfigValue& table, std::string_view key,
                     const Constants& c, std::optional<double> fallback = {});

StieltjesMeasure load_measure(const ConfigValue& v, const Constants& c);
Settings load_settings(const ConfigValue* table, Settings base = {});

struct CheckSpec {
  IndexKind kind = IndexKind::I1;
  std::array<double, 2> rho{0.0, 0.0};
  StieltjesMeasure alpha;  // single equations
  MeasureGrid grid;        // systems
  int certify = 0;         // diamond variant
  int line = 0;
};

struct SolvePlan {
  bool present = false;
  double u0 = 1.0, v0 = 1.0;
  SolverSettings settings;
  std::vector<LocalizationWindow> windows;
};

struct NonexistPlan {
  bool present = false;
  NonexistenceMode mode = NonexistenceMode::Super;
  int sub_index = 0;
  StieltjesMeasure alpha;
  ReducedMeasures reduced;
  Interval u_range{1e-6, 1e3};
  Interval v_range{-1e3, 1e3};
  int grid_n = 2048;
};

// Expression sources of an annulus problem, kept for re-emission.
struct EllipticSource {
  std::array<std::string, 2> g, f;
  EllipticAnnulusProblem problem;
};

enum class ModelKind { Single, System, Elliptic };

struct ModelConfig {
  std::string name;
  ModelKind kind = ModelKind::Single;
  Constants constants;
  Settings settings;
  std::optional<Problem> problem;
  std::optional<SystemSpec> system;
  std::optional<EllipticTransform> elliptic;
  std::optional<EllipticSource> elliptic_source;
  std::vector<CheckSpec> checks;
  SolvePlan solve;
  NonexistPlan nonexist;

  bool is_system() const { return kind != ModelKind::Single; }
};

ModelConfig load_model(const ConfigValue& root, const Constants& overrides = {});
ModelConfig load_model_text(const std::string& text,
                            const Constants& overrides = {});

// [[check]] entries of `root`; `system` selects the measure layout.
std::vector<CheckSpec> load_checks(const ConfigValue& root, bool system,
                                   const Constants& c);

// Config text describing the transformed system of an annulus model.
std::string emit_system_config(const ModelConfig& model);

}  // namespace hammer

#endif  // HAMMERSTEIN_LOADER_HPP_
