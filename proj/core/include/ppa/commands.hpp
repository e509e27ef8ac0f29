#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ppa/calculus.hpp"
#include "ppa/config.hpp"
#include "ppa/iteration.hpp"
#include "ppa/moduli.hpp"

namespace ppa {

enum class ExitCode : int { Ok = 0, PropertyFailure = 1, UsageError = 2 };

enum class RunVerdict { Consistent, Violation, BoundIncomputable, NoWitnessInHorizon };

std::string to_string(RunVerdict v);

/// Compares an empirical index with a bound. `window_fits` says whether the
/// window at the bound lies inside the trace, so a missing witness there is
/// a violation rather than a short horizon.
RunVerdict classify(const std::optional<std::size_t>& empirical, const BoundValue& bound,
                    bool window_fits);

struct MetastabilityRow {
  std::size_t k;
  std::string fspec;
  std::optional<std::size_t> empirical;
  BoundValue bound;
  RunVerdict verdict;
};

struct AsymptoticRow {
  std::size_t k;
  std::string fspec;
  std::string residual;  // dz, res_Jn or res_J
  std::optional<std::size_t> first_below;
  std::optional<std::size_t> empirical;  // window form
  BoundValue bound;
  RunVerdict verdict;
};

enum class CheckStatus { Pass, Fail, Info };

struct CheckRow {
  std::string name;
  CheckStatus status;
  std::string value;
  std::string detail;
};

struct RunReport {
  Trace trace;
  ModuliReport moduli;
  bool aborted = false;  // strict validation failed; nothing was evaluated
  std::vector<MetastabilityRow> metastability;
  std::vector<AsymptoticRow> asymptotic;
  std::vector<CheckRow> checks;
  std::vector<std::string> notices;

  const CheckRow* check(const std::string& name) const;
  /// No failed check and no VIOLATION verdict.
  bool ok() const;
};

/// Runs the experiment and every check. The budget is the config's, with
/// PPA_BUDGET_BITS applied on top.
RunReport execute_run(const ExperimentConfig& config);

/// Writes trace.csv, metastability.csv, asymptotic.csv and checks.csv into
/// out_dir (created if missing).
void write_run_outputs(const RunReport& report, const ExperimentConfig& config,
                       const std::string& out_dir);

/// Runs, writes outputs, prints a summary; 0 if report.ok(), else 1.
int cmd_run(const ExperimentConfig& config, const std::string& out_dir, std::ostream& out,
            std::ostream& err);

struct BoundArgs {
  std::string name;
  std::size_t k = 0;
  std::size_t n = 0;
  std::string fspec = "const 0";
  std::size_t M = 0;
  std::size_t t = 1;
  std::optional<std::string> N;  // defaults to the derived N
  std::optional<std::string> D;  // defaults to the derived D
};

const std::vector<std::string>& bound_names();

/// Evaluates one named bound; throws std::invalid_argument for an unknown
/// name or bad arguments.
BoundValue evaluate_bound(const Moduli& moduli, const Budget& budget, const BoundArgs& args);

/// Prints `name,k,f_spec,value` with its header.
int cmd_bound(const ExperimentConfig& config, const BoundArgs& args, std::ostream& out,
              std::ostream& err);

/// Default trial counts per lemma.
std::size_t default_trials(const std::string& lemma);

/// Runs the named suite (or all of them when lemma is empty) and prints
/// `lemma,trials,passed,verdict`, then the first counterexample of each
/// failing suite as its own table. 1 iff a trial failed.
int cmd_oracle(const std::string& lemma, std::uint64_t seed, std::optional<std::size_t> trials,
               std::ostream& out, std::ostream& err);

/// The experiment's run plus every oracle suite at its default size and the
/// calculus self-checks, one `check,status,detail` row each.
int cmd_verify(const ExperimentConfig& config, std::ostream& out, std::ostream& err);

}  // namespace ppa
