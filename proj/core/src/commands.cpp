#include "ppa/commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include "ppa/csv.hpp"
#include "ppa/oracle.hpp"

namespace ppa {
namespace {

constexpr double kIdentityTol = 1e-8;

std::string index_string(const std::optional<std::size_t>& i) { return i ? std::to_string(*i) : ""; }

std::string status_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "PASS";
    case CheckStatus::Fail: return "FAIL";
    case CheckStatus::Info: return "INFO";
  }
  return "";
}

CheckRow threshold_check(std::string name, double value, double limit, std::string what) {
  const bool pass = std::isfinite(value) && value <= limit;
  return {std::move(name), pass ? CheckStatus::Pass : CheckStatus::Fail, format_real(value),
          what + " <= " + format_real(limit)};
}

bool window_fits(const BoundValue& bound, const CountFn& f, std::size_t len, const Budget& budget) {
  if (!bound.is_exact() || bound.value() >= len) return false;
  const BoundValue fb = f.eval(bound.value(), budget);
  return fb.is_exact() && fb.value() < len - bound.value();
}

// Sample of at most 64 trace points, evenly spaced.
std::vector<Point> sample_points(const std::vector<Point>& z) {
  std::vector<Point> out;
  const std::size_t step = std::max<std::size_t>(1, z.size() / 64);
  for (std::size_t i = 0; i < z.size(); i += step) out.push_back(z[i]);
  return out;
}

void add_resolvent_checks(RunReport& r, const ResolventOperator& op) {
  const auto pts = sample_points(r.trace.z);
  double identity = 0.0;
  bool scaling = true;
  for (const auto& x : pts) {
    for (auto [a, b] : {std::pair{0.5, 1.0}, {1.0, 2.0}, {1.0, 10.0}}) {
      identity = std::max(identity, check_resolvent_identity(op, a, b, x));
      scaling = scaling && check_resolvent_scaling(op, a, b, x, kIdentityTol);
    }
  }
  r.checks.push_back(threshold_check("resolvent_identity", identity, kIdentityTol,
                                     "max residual over " + std::to_string(pts.size()) + " points"));
  r.checks.push_back({"resolvent_scaling", scaling ? CheckStatus::Pass : CheckStatus::Fail,
                      scaling ? "0" : "1", "|J_a x - x| <= 2|J_b x - x| for a <= b"});
}

void add_trace_checks(RunReport& r, const ExperimentConfig& config, const ResolventOperator& op,
                      const BoundCalculus& calc) {
  const Trace& t = r.trace;
  const Point& s = config.zero;
  const BoundContext& ctx = calc.context();
  const double N0 = to_double(ctx.N0);
  const double a = to_double(config.moduli.a);
  const double c = to_double(config.moduli.c);

  double zmax = 0.0;
  for (const auto& z : t.z) zmax = std::max(zmax, distance(z, s));
  r.checks.push_back({"boundedness", boundedness_check(t.z, s, N0) ? CheckStatus::Pass : CheckStatus::Fail,
                      format_real(zmax), "max |z_n - s| <= N0 = " + format_real(N0)});

  double wmax = 0.0;
  for (const auto& w : t.w) wmax = std::max(wmax, distance(w, s));
  r.checks.push_back({"wbound", wbound_check(t.w, s, a, N0) ? CheckStatus::Pass : CheckStatus::Fail,
                      format_real(wmax), "max |w_n - s| <= 2aN0 = " + format_real(2 * a * N0)});

  if (t.horizon() > 0) {
    r.checks.push_back(threshold_check("recurrence", recurrence_check(t, op, s, to_double(ctx.M1)),
                                       kIdentityTol, "max violation"));
    r.checks.push_back(threshold_check("ineq_jc", ineq_jc_check(t, c, N0), kIdentityTol, "max violation"));
    r.checks.push_back(threshold_check("w_reconstruction", w_reconstruction_error(t), kIdentityTol,
                                       "max error"));
  }

  std::vector<std::pair<std::size_t, Natural>> nus;
  std::string skipped;
  for (std::size_t k = 0; k <= 5; ++k) {
    const BoundValue v = calc.nu(k);
    if (v.is_exact())
      nus.emplace_back(k, v.value());
    else
      skipped += (skipped.empty() ? "" : " ") + std::to_string(k);
  }
  const auto viol = wdiff_check(t, nus);
  std::string detail = "violations for k in 0..5 from nu(k) to H-2";
  if (!viol.empty())
    detail += "; first k=" + std::to_string(viol.front().k) + " n=" + std::to_string(viol.front().n) +
              " excess=" + format_real(viol.front().excess);
  if (!skipped.empty()) detail += "; nu incomputable for k " + skipped;
  r.checks.push_back({"wdiff", viol.empty() ? CheckStatus::Pass : CheckStatus::Fail,
                      std::to_string(viol.size()), detail});

  add_resolvent_checks(r, op);

  if (config.target) {
    double best = INFINITY;
    std::size_t at = 0;
    for (std::size_t n = 0; n < t.z.size(); ++n) {
      const double d = distance(t.z[n], *config.target);
      if (d < best) best = d, at = n;
    }
    r.checks.push_back({"target_distance", CheckStatus::Info, format_real(best),
                        "min |z_n - target| at n=" + std::to_string(at) + "; final " +
                            format_real(distance(t.z.back(), *config.target))});
  }
}

void add_tables(RunReport& r, const ExperimentConfig& config, const BoundCalculus& calc,
                const Budget& budget) {
  const Trace& t = r.trace;
  const auto fs = config.counterfunctions();
  for (std::size_t k : config.run.ks) {
    for (std::size_t i = 0; i < fs.size(); ++i) {
      const CountFn& f = fs[i];
      const auto emp = empirical_metastability(t.z, k, f, budget);
      const BoundValue phi = calc.phi(k, f);
      r.metastability.push_back(
          {k, config.run.fspecs[i], emp, phi, classify(emp, phi, window_fits(phi, f, t.z.size(), budget))});
    }
  }
  struct Column {
    const char* name;
    const std::vector<double>* values;
    BoundValue (BoundCalculus::*bound)(const Natural&, const CountFn&) const;
  };
  const Column columns[] = {{"dz", &t.dz, &BoundCalculus::dz_bound},
                            {"res_Jn", &t.res_jn, &BoundCalculus::jn_bound},
                            {"res_J", &t.res_j, &BoundCalculus::j_bound}};
  for (std::size_t k : config.run.ks) {
    for (std::size_t i = 0; i < fs.size(); ++i) {
      const CountFn& f = fs[i];
      for (const auto& col : columns) {
        const auto emp = window_below(*col.values, k, f, budget);
        const BoundValue b = (calc.*col.bound)(k, f);
        r.asymptotic.push_back({k, config.run.fspecs[i], col.name, first_below(*col.values, k), emp, b,
                                classify(emp, b, window_fits(b, f, col.values->size(), budget))});
      }
    }
  }
}

void write_checks(std::ostream& out, const std::vector<CheckRow>& checks) {
  CsvWriter w(out, {"check", "status", "value", "detail"});
  for (const auto& c : checks) w.row({c.name, status_string(c.status), c.value, c.detail});
}

void print_summary(const RunReport& r, std::ostream& out) {
  for (const auto& c : r.checks) out << c.name << ": " << status_string(c.status) << "\n";
  std::size_t counts[4] = {};
  for (const auto& m : r.metastability) ++counts[static_cast<int>(m.verdict)];
  for (const auto& a : r.asymptotic) ++counts[static_cast<int>(a.verdict)];
  for (int v = 0; v < 4; ++v)
    if (counts[v]) out << to_string(static_cast<RunVerdict>(v)) << ": " << counts[v] << "\n";
}

}  // namespace

std::string to_string(RunVerdict v) {
  switch (v) {
    case RunVerdict::Consistent: return "CONSISTENT";
    case RunVerdict::Violation: return "VIOLATION";
    case RunVerdict::BoundIncomputable: return "BOUND_INCOMPUTABLE";
    case RunVerdict::NoWitnessInHorizon: return "NO_WITNESS_IN_HORIZON";
  }
  return "";
}

RunVerdict classify(const std::optional<std::size_t>& empirical, const BoundValue& bound,
                    bool window_fits) {
  if (!bound.is_exact()) return RunVerdict::BoundIncomputable;
  if (empirical) return Natural(*empirical) <= bound.value() ? RunVerdict::Consistent : RunVerdict::Violation;
  return window_fits ? RunVerdict::Violation : RunVerdict::NoWitnessInHorizon;
}

const CheckRow* RunReport::check(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

bool RunReport::ok() const {
  if (aborted) return false;
  for (const auto& c : checks)
    if (c.status == CheckStatus::Fail) return false;
  for (const auto& m : metastability)
    if (m.verdict == RunVerdict::Violation) return false;
  for (const auto& a : asymptotic)
    if (a.verdict == RunVerdict::Violation) return false;
  return true;
}

RunReport execute_run(const ExperimentConfig& config) {
  const Budget budget = config.run.budget.with_env();
  const ResolventOperator op = config.make_operator();
  RunReport r;
  r.notices = config.notices;
  r.moduli = validate_moduli(config.schedule, config.moduli, config.run.horizon, config.u, config.z0,
                             config.zero, budget);
  if (r.moduli.ok()) {
    r.checks.push_back({"moduli", CheckStatus::Pass, "0", "hypotheses hold up to the horizon"});
  } else {
    for (const auto& v : r.moduli.violations) r.checks.push_back({"moduli", CheckStatus::Fail, "1", v});
    if (config.run.strict) {
      r.aborted = true;
      r.notices.push_back("run aborted: moduli do not fit the schedule (validate = strict)");
      r.trace = run(op, config.schedule, config.u, config.z0, 0);
      return r;
    }
  }

  const double j_param = 1.0 / to_double(config.moduli.c);
  r.trace = run(op, config.schedule, config.u, config.z0, config.run.horizon, j_param);
  const BoundCalculus calc(config.moduli, budget);
  add_trace_checks(r, config, op, calc);
  if (config.run.horizon == 0)
    r.notices.push_back("horizon 0: metastability and asymptotic tables are empty");
  else
    add_tables(r, config, calc, budget);
  return r;
}

void write_run_outputs(const RunReport& r, const ExperimentConfig& config, const std::string& out_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  auto open = [&](const char* name) {
    std::ofstream f(fs::path(out_dir) / name, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + (fs::path(out_dir) / name).string());
    return f;
  };
  {
    auto f = open("trace.csv");
    CsvWriter w(f, {"n", "znorm_dist_s", "dz", "res_Jn", "res_J", "dist_target"});
    const Trace& t = r.trace;
    for (std::size_t n = 0; n < t.z.size(); ++n) {
      w.row({std::to_string(n), format_real(distance(t.z[n], config.zero)),
             n < t.dz.size() ? format_real(t.dz[n]) : "",
             n < t.res_jn.size() ? format_real(t.res_jn[n]) : "",
             n < t.res_j.size() ? format_real(t.res_j[n]) : "",
             config.target ? format_real(distance(t.z[n], *config.target)) : ""});
    }
  }
  {
    auto f = open("metastability.csv");
    CsvWriter w(f, {"k", "f_spec", "empirical_index", "phi_bound", "verdict"});
    for (const auto& m : r.metastability)
      w.row({std::to_string(m.k), m.fspec, index_string(m.empirical), m.bound.to_string(), to_string(m.verdict)});
  }
  {
    auto f = open("asymptotic.csv");
    CsvWriter w(f, {"k", "f_spec", "residual", "first_below", "empirical_index", "bound", "verdict"});
    for (const auto& a : r.asymptotic)
      w.row({std::to_string(a.k), a.fspec, a.residual, index_string(a.first_below), index_string(a.empirical),
             a.bound.to_string(), to_string(a.verdict)});
  }
  {
    auto f = open("checks.csv");
    write_checks(f, r.checks);
  }
}

int cmd_run(const ExperimentConfig& config, const std::string& out_dir, std::ostream& out, std::ostream& err) {
  const RunReport r = execute_run(config);
  write_run_outputs(r, config, out_dir);
  for (const auto& n : r.notices) err << "notice: " << n << "\n";
  print_summary(r, out);
  if (r.aborted) {
    for (const auto& v : r.moduli.violations) err << "moduli: " << v << "\n";
    return static_cast<int>(ExitCode::UsageError);
  }
  return static_cast<int>(r.ok() ? ExitCode::Ok : ExitCode::PropertyFailure);
}

const std::vector<std::string>& bound_names() {
  static const std::vector<std::string> names = {"zeta", "sigma", "theta", "R",   "nu",  "mu",   "xi",
                                                 "psi",  "Psi",   "Theta", "phi", "proj", "proj3"};
  return names;
}

BoundValue evaluate_bound(const Moduli& m, const Budget& budget, const BoundArgs& args) {
  const auto& names = bound_names();
  if (std::find(names.begin(), names.end(), args.name) == names.end())
    throw std::invalid_argument("unknown bound '" + args.name + "'");
  const BoundCalculus calc(m, budget);
  const BoundContext& ctx = calc.context();
  const CountFn f = parse_fspec(args.fspec);
  const Natural k = args.k, n = args.n, M = args.M, t = args.t;
  const Natural N = args.N ? parse_natural(*args.N) : ctx.N;
  const Natural D = args.D ? parse_natural(*args.D) : ctx.D;
  const std::string& name = args.name;

  if (name == "zeta") return evaluate(budget, [&](EvalContext& cx) { return zeta(cx, k, n, m.c, m.Cmaj); });
  if (name == "sigma") return evaluate(budget, [&](EvalContext& cx) { return sigma(cx, k, n, m.L, D); });
  if (name == "theta") return evaluate(budget, [&](EvalContext& cx) { return theta(cx, k, M, t, N, f); });
  if (name == "R") return evaluate(budget, [&](EvalContext& cx) { return R_const(cx, m.a, k, t); });
  if (name == "proj") return evaluate(budget, [&](EvalContext& cx) { return proj_bound(cx, k, f, N); });
  if (name == "proj3") return evaluate(budget, [&](EvalContext& cx) { return proj3_bound(cx, k, f, N); });
  if (name == "nu") return calc.nu(k);
  if (name == "mu") return calc.mu(k);
  if (name == "xi") return calc.xi(k, f);
  if (name == "psi") return calc.psi(k, f);
  if (name == "Psi") return calc.Psi(k, f);
  if (name == "Theta") return calc.Theta(k, f);
  return calc.phi(k, f);
}

int cmd_bound(const ExperimentConfig& config, const BoundArgs& args, std::ostream& out, std::ostream& err) {
  std::vector<std::string> notes;
  parse_fspec(args.fspec, &notes);
  for (const auto& n : notes) err << "notice: " << n << "\n";
  const BoundValue v = evaluate_bound(config.moduli, config.run.budget.with_env(), args);
  CsvWriter w(out, {"name", "k", "f_spec", "value"});
  w.row({args.name, std::to_string(args.k), args.fspec, v.to_string()});
  return static_cast<int>(ExitCode::Ok);
}

std::size_t default_trials(const std::string& lemma) {
  if (lemma == "ratap" || lemma == "limsup2") return 1000;
  return 100;
}

int cmd_oracle(const std::string& lemma, std::uint64_t seed, std::optional<std::size_t> trials,
               std::ostream& out, std::ostream& err) {
  std::vector<std::string> lemmas;
  if (lemma.empty()) {
    lemmas = suite_names();
  } else {
    const auto& names = suite_names();
    if (std::find(names.begin(), names.end(), lemma) == names.end())
      throw std::invalid_argument("unknown lemma '" + lemma + "'");
    lemmas = {lemma};
  }
  std::vector<SuiteResult> results;
  for (const auto& l : lemmas) results.push_back(run_suite(l, seed, trials ? *trials : default_trials(l)));

  bool all = true;
  {
    CsvWriter w(out, {"lemma", "trials", "passed", "verdict"});
    for (const auto& r : results) {
      w.row({r.lemma, std::to_string(r.trials), std::to_string(r.passed), r.pass() ? "PASS" : "FAIL"});
      for (const auto& n : r.notices) err << "notice: " << r.lemma << ": " << n << "\n";
      all = all && r.pass();
    }
  }
  for (const auto& r : results) {
    if (r.counterexample.empty()) continue;
    out << "\n";
    std::vector<std::string> header = {"lemma"};
    header.insert(header.end(), r.counterexample_header.begin(), r.counterexample_header.end());
    std::vector<std::string> row = {r.lemma};
    row.insert(row.end(), r.counterexample.begin(), r.counterexample.end());
    CsvWriter w(out, header);
    w.row(row);
  }
  return static_cast<int>(all ? ExitCode::Ok : ExitCode::PropertyFailure);
}

int cmd_verify(const ExperimentConfig& config, std::ostream& out, std::ostream& err) {
  CsvWriter w(out, {"check", "status", "detail"});
  bool all = true;
  auto emit = [&](const std::string& name, bool pass, const std::string& detail) {
    w.row({name, pass ? "PASS" : "FAIL", detail});
    all = all && pass;
  };

  const RunReport r = execute_run(config);
  for (const auto& n : r.notices) err << "notice: " << n << "\n";
  for (const auto& c : r.checks)
    if (c.status != CheckStatus::Info) emit("run." + c.name, c.status == CheckStatus::Pass, c.detail);
  std::size_t meta_bad = 0, asym_bad = 0;
  for (const auto& m : r.metastability) meta_bad += m.verdict == RunVerdict::Violation;
  for (const auto& a : r.asymptotic) asym_bad += a.verdict == RunVerdict::Violation;
  emit("run.metastability", !r.aborted && meta_bad == 0,
       std::to_string(r.metastability.size()) + " rows, " + std::to_string(meta_bad) + " violations");
  emit("run.asymptotic", !r.aborted && asym_bad == 0,
       std::to_string(r.asymptotic.size()) + " rows, " + std::to_string(asym_bad) + " violations");

  // Monotonicity in k of the calculus on this config's moduli.
  const BoundCalculus calc(config.moduli, config.run.budget.with_env());
  const CountFn f = config.counterfunctions().front();
  const std::pair<const char*, BoundValue (BoundCalculus::*)(const Natural&, const CountFn&) const> fns[] = {
      {"chi0", &BoundCalculus::chi0}, {"xi", &BoundCalculus::xi}, {"phi", &BoundCalculus::phi}};
  bool mono = true;
  for (const auto& [name, fn] : fns) {
    std::optional<Natural> prev;
    for (std::size_t k = 0; k <= 5; ++k) {
      const BoundValue v = (calc.*fn)(k, f);
      if (!v.is_exact()) break;
      if (prev && v.value() < *prev) mono = false;
      prev = v.value();
    }
  }
  for (std::size_t k = 0; k < 5; ++k) {
    const BoundValue a = calc.nu(k), b = calc.nu(k + 1), c = calc.mu(k), d = calc.mu(k + 1);
    if (a.is_exact() && b.is_exact() && b.value() < a.value()) mono = false;
    if (c.is_exact() && d.is_exact() && d.value() < c.value()) mono = false;
  }
  emit("calculus.monotone_in_k", mono, "nu, mu, chi0, xi, phi on k = 0..5 where computable");

  for (const auto& l : suite_names()) {
    const SuiteResult s = run_suite(l, 7, default_trials(l));
    for (const auto& n : s.notices) err << "notice: " << l << ": " << n << "\n";
    emit("oracle." + l, s.pass(), std::to_string(s.passed) + "/" + std::to_string(s.trials));
  }
  return static_cast<int>(all ? ExitCode::Ok : ExitCode::PropertyFailure);
}

}  // namespace ppa
