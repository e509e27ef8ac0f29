#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ppa/countfn.hpp"
#include "ppa/operators.hpp"
#include "ppa/schedule.hpp"

namespace ppa {

/// z_{n+1} = lambda_n u + gamma_n z_n + delta_n J_{c_n}(z_n) + e_n.
Point step(const ResolventOperator& op, const Schedule& schedule, const Point& u, const Point& z,
           std::size_t n);

/// A completed run z_0..z_H with derived columns.
struct Trace {
  Schedule schedule;
  std::string operator_name;
  Point u;
  double j_param = 1.0;      // J = J_{j_param}, i.e. 1/c
  std::vector<Point> z;      // z_0..z_H
  std::vector<Point> jz;     // J_{c_n}(z_n), n <= H
  std::vector<Point> w;      // w_n = (z_{n+1} - gamma_n z_n)/(1 - gamma_n), n < H
  std::vector<double> dz;    // |z_{n+1} - z_n|, n < H
  std::vector<double> res_jn;  // |J_{c_n}(z_n) - z_n|, n <= H
  std::vector<double> res_j;   // |J(z_n) - z_n|, n <= H

  std::size_t horizon() const { return z.size() - 1; }
};

/// Runs the iteration for `horizon` steps. j_param is the parameter of the
/// fixed resolvent J used for the third residual column (1/c).
Trace run(const ResolventOperator& op, const Schedule& schedule, const Point& u, const Point& z0,
          std::size_t horizon, double j_param = 1.0);

/// Least n with n + f(n) <= horizon and diameter{z_i : i in [n, n+f(n)]}
/// <= 1/(k+1); nothing if no such window fits in the trace.
std::optional<std::size_t> empirical_metastability(const std::vector<Point>& z, std::size_t k,
                                                   const CountFn& f,
                                                   const Budget& budget = {});

/// Least m with column[m] <= 1/(k+1).
std::optional<std::size_t> first_below(const std::vector<double>& column, std::size_t k);

/// Least n with column[m] <= 1/(k+1) for every m in [n, n+f(n)], the
/// window lying inside the column.
std::optional<std::size_t> window_below(const std::vector<double>& column, std::size_t k,
                                        const CountFn& f, const Budget& budget = {});

struct ResidualRow {
  std::size_t n;
  double dz;
  double res_jn;
  double res_j;
};

/// Per-n residual table for n < H.
std::vector<ResidualRow> asymptotic_residuals(const Trace& trace);

/// max_m s_{m+1} - [(1-lambda_m)(s_m + v_m) + lambda_m r_m + g_m] with
/// s_m = |z_m - p|^2, v_m = |J_m p - p| (|J_m p - p| + 2|z_m - p|),
/// r_m = 2<u - p, z_{m+1} - p>, g_m = |e_m| (M1 + 2 lambda_m |u - p|).
double recurrence_check(const Trace& trace, const ResolventOperator& op, const Point& p,
                        double M1);

/// max_m |J_{m+1} z_{m+1} - J_m z_m| - |z_{m+1} - z_m| - 2 c N0 |c_{m+1} - c_m|.
double ineq_jc_check(const Trace& trace, double c, double N0);

/// |z_n - s| <= N0 + 1e-9 for every n.
bool boundedness_check(const std::vector<Point>& z, const Point& s, double N0);

/// |w_n - s| <= 2 a N0 + 1e-9 for every n.
bool wbound_check(const std::vector<Point>& w, const Point& s, double a, double N0);

struct WdiffViolation {
  std::size_t k;
  std::size_t n;
  double excess;
};

/// For each (k, nu(k)) with nu(k) <= H - 2, checks
/// |w_{n+1} - w_n| - |z_{n+1} - z_n| <= 1/(k+1) + 1e-9 for n in [nu(k), H-2].
/// Pairs with nu(k) beyond the trace are skipped.
std::vector<WdiffViolation> wdiff_check(const Trace& trace,
                                        const std::vector<std::pair<std::size_t, Natural>>& nu_values);

/// max_n |z_{n+1} - (gamma_n z_n + (1 - gamma_n) w_n)|.
double w_reconstruction_error(const Trace& trace);

}  // namespace ppa
