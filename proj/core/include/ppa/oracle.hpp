#pragma once

#include <boost/rational.hpp>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ppa/countfn.hpp"
#include "ppa/point.hpp"

namespace ppa {

using Rational = boost::rational<std::int64_t>;

/// A finite sequence of rationals in [0, N], extended by repeating its last
/// value.
class BoundedSeq {
 public:
  BoundedSeq(std::vector<Rational> values, std::int64_t N);

  const Rational& at(std::size_t i) const;
  std::int64_t N() const { return N_; }
  std::size_t size() const { return values_.size(); }
  /// max of x_i over [lo, hi].
  Rational window_max(std::size_t lo, std::size_t hi) const;

 private:
  std::vector<Rational> values_;
  std::int64_t N_;
  std::vector<std::vector<std::size_t>> sparse_;  // argmax tables, level j covers 2^j cells
};

/// Least p < N(k+1) with some x_m >= p/(k+1) and every x_m <= (p+1)/(k+1)
/// for m in [n, n+f(n)], by exhaustive search.
std::optional<std::int64_t> ratap_witness(const BoundedSeq& xs, std::int64_t k, std::size_t n,
                                          const CountFn& f);

struct Limsup2Witness {
  std::size_t m;
  std::int64_t p;
  Natural theta;
};

/// Least (m, p) in lexicographic order with M <= m <= theta(k, M, t, N, f),
/// p < N(k+1), x_{m+t} >= p/(k+1) and x_n <= (p+1)/(k+1) on [m, m+f(m)].
/// Nothing if none exists or theta is not computable under the budget.
std::optional<Limsup2Witness> rationalapprox2_witness(const BoundedSeq& xs, std::int64_t k,
                                                      std::size_t M, std::size_t t,
                                                      const CountFn& f,
                                                      const Budget& budget = {});

/// A Xu-type recursive inequality instance. All lists share one length;
/// indices are checked within it and gamma is taken as 0 beyond it.
struct XuInstance {
  std::vector<double> s, v, r, gamma, lambda;
  CountFn L;
  Natural D;
  std::size_t k = 0, n = 0, p = 0;
};

enum class Verdict { Holds, Fails, Indeterminate };

struct XuResult {
  Verdict verdict;
  std::string detail;
};

/// Checks the premises (bounds by D, the rate L, conditions (i)-(iii)); if
/// they hold, reports whether s_m <= 1/(k+1) on [sigma(k, n), p].
XuResult qtxu1_check(const XuInstance& inst, const Budget& budget = {});

/// z_{n+1} = alpha_n w_n + (1 - alpha_n) z_n; z is always derived.
class SyntheticPair {
 public:
  SyntheticPair(Point z0, std::vector<Point> w, std::vector<double> alpha, std::int64_t a);

  const std::vector<Point>& z() const { return z_; }
  const std::vector<Point>& w() const { return w_; }
  const std::vector<double>& alpha() const { return alpha_; }
  std::int64_t a() const { return a_; }
  std::size_t size() const { return w_.size(); }
  /// |w_n - z_n|
  double gap(std::size_t n) const;

 private:
  std::vector<Point> z_, w_;
  std::vector<double> alpha_;
  std::int64_t a_;
};

/// Premise check for the Suzuki-type lemmas up to the pair's length: the
/// alpha range (two-sided when two_sided), the bound N (on the gap when
/// gap_bound, else on |z_n| and |w_n|), and the nu condition for every
/// k <= max_k. Returns the first failure.
std::optional<std::string> suzuki_premises(const SyntheticPair& pair, const CountFn& nu,
                                           std::int64_t N, std::size_t max_k, bool two_sided,
                                           bool gap_bound, const Budget& budget = {});

struct Suzuki1Witness {
  std::size_t m;
  Natural p;
};

/// Least (m, p), m >= l in increasing order, with p < R N and
///   |w_{m+t} - z_m| - (1 + sum_{i<t} alpha_{m+i}) (p+1)/R >= -1/(k+1),
///   |w_{m+t} - z_{m+t}| >= p/R,
///   |w_n - z_n| <= (p+1)/R for n in [m, m+t+f(m)],
/// where R = R(a, k, t). Searches m while the window fits in the pair.
std::optional<Suzuki1Witness> suzuki1_witness(const SyntheticPair& pair, std::size_t k,
                                              std::size_t l, std::size_t t, const CountFn& f,
                                              std::int64_t N, const Budget& budget = {});

/// Least n with |w_m - z_m| <= 1/(k+1) for all m in [n, n+f(n)] within the
/// pair.
std::optional<std::size_t> suzuki2_index(const SyntheticPair& pair, std::size_t k,
                                         const CountFn& f, const Budget& budget = {});

/// Summary of a seeded randomized suite.
struct SuiteResult {
  std::string lemma;
  std::size_t trials = 0;
  std::size_t passed = 0;
  std::vector<std::string> counterexample_header;
  std::vector<std::string> counterexample;  // first failing trial, empty if none
  std::vector<std::string> notices;
  bool pass() const { return passed == trials; }
};

/// Lemma names accepted by run_suite.
const std::vector<std::string>& suite_names();

/// Runs `trials` seeded random instances of the named lemma
/// (ratap, limsup2, xu, suzuki1, suzuki2). Throws std::invalid_argument for
/// an unknown name.
SuiteResult run_suite(std::string_view lemma, std::uint64_t seed, std::size_t trials);

}  // namespace ppa
