#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ppa/countfn.hpp"
#include "ppa/moduli.hpp"
#include "ppa/operators.hpp"
#include "ppa/schedule.hpp"

namespace ppa {

struct Diagnostic {
  std::size_t line;  // 1-based; 0 when not tied to a line
  std::string message;
};

/// Parse or validation failure carrying every located problem found.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<Diagnostic> diagnostics);
  const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

 private:
  std::vector<Diagnostic> diagnostics_;
};

struct RunSettings {
  std::size_t horizon = 1000;
  std::vector<std::size_t> ks = {0};
  std::vector<std::string> fspecs = {"const 0"};
  Budget budget{};
  /// strict: moduli violations abort a run; warn: they are reported only.
  bool strict = true;
};

/// One experiment: operator, start data, schedule, moduli and run settings.
///
/// Text format: `[section]` headers, `key = value` lines, `#` comments.
/// Sections problem, start, schedule and moduli are required; run is
/// optional. Vectors are comma-separated reals, matrices rows separated by
/// `;`, functions FSpec strings.
struct ExperimentConfig {
  OperatorKind kind;
  Point zero;
  std::optional<Point> target;
  Point u;
  Point z0;
  Schedule schedule;
  Moduli moduli;
  bool gamma_given = false;
  RunSettings run;
  /// Non-fatal messages from parsing (e.g. majorized tables).
  std::vector<std::string> notices;

  ResolventOperator make_operator() const;
  std::vector<CountFn> counterfunctions() const;
};

/// Throws ConfigError listing every problem with its line.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);

/// Canonical text; parse_config(serialize_config(c)) reproduces c.
std::string serialize_config(const ExperimentConfig& config);

}  // namespace ppa
