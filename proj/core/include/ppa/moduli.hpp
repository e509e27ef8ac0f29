#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "ppa/countfn.hpp"
#include "ppa/point.hpp"
#include "ppa/schedule.hpp"

namespace ppa {

/// Which form of nu to use: the general one needs Gamma, the constant one
/// applies when c_n is constant.
enum class NuForm { ConstantC, General };

/// Quantitative data for the schedule:
///   ell    rate of convergence of lambda_n to 0
///   L      rate of divergence of sum lambda_n
///   Gamma  rate of convergence of |c_{n+1} - c_n| to 0
///   E      Cauchy rate for sum |e_n|
/// together with 1/a <= gamma_n <= 1 - 1/a, c_n >= 1/c, the majorant Cmaj
/// of c_n and the norm bounds N1, N2, N3.
struct Moduli {
  Natural a = 1;
  Natural c = 1;
  CountFn Cmaj = CountFn::constant(1);
  CountFn ell = CountFn::constant(0);
  CountFn L = CountFn::constant(0);
  CountFn Gamma = CountFn::constant(0);
  CountFn E = CountFn::constant(0);
  Natural N1 = 1;
  Natural N2 = 1;
  Natural N3 = 1;
  NuForm nu_form = NuForm::ConstantC;

  /// Type-level checks: a, c, N1, N3 >= 1, all functions monotone.
  void check() const;
};

/// Constants derived from the moduli.
struct BoundContext {
  Natural N0;  // N2 + N3
  Natural N;   // max{2 N3, N2 + N3}
  Natural M1;  // 3 N2 + 4 N
  Natural M2;  // M1 + 2 (N3 + N)
  Natural D;   // 4 N^2
  CountFn G;   // k -> E(M2 (k+1))
};

BoundContext derive_constants(const Moduli& m);

/// General form: max{Gamma(10 a c N0 (k+1)), ell(10 a (N0+N1+N3)(k+1)), E(5a(k+1)) + 1}.
/// Constant-c form: max{ell(8a(N0+N1+N3)(k+1)), E(4a(k+1)) + 1}.
Natural nu(EvalContext& cx, const Moduli& m, const Natural& k, NuForm form);

/// max{ell(4a(k+1)(N0+N3)), E(4a(k+1)) + 1}.
Natural mu(EvalContext& cx, const Moduli& m, const Natural& k);

/// nu and mu as monotone CountFns reporting themselves as budget stages.
CountFn nu_fn(const Moduli& m, NuForm form);
CountFn mu_fn(const Moduli& m);

/// Result of checking the hypotheses on a concrete experiment up to a horizon.
struct ModuliReport {
  std::size_t horizon = 0;
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

/// Checks the six rate hypotheses for every n <= horizon (and every k whose
/// relevant index lies within the horizon) plus the norm bounds
/// N1 >= |u|, N2 >= sum_{i <= E(0)} |e_i| + 1, N3 >= max{|u - s|, |z0 - s|}.
/// Inequalities allow 1e-9 slack.
ModuliReport validate_moduli(const Schedule& s, const Moduli& m, std::size_t horizon,
                             const Point& u, const Point& z0, const Point& zero,
                             const Budget& budget = {});

/// Nearest double to x, saturating at the largest finite value.
double to_double(const Natural& x);

}  // namespace ppa
