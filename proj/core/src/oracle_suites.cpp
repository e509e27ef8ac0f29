#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <stdexcept>
#include <tuple>

#include "ppa/bounds.hpp"
#include "ppa/csv.hpp"
#include "ppa/moduli.hpp"
#include "ppa/oracle.hpp"

namespace ppa {
namespace {

using Rng = std::mt19937_64;

std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

double uniform_real(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

// Counterfunctions used by the suites: const 0..3 and the identity.
const std::vector<CountFn>& battery() {
  static const std::vector<CountFn> fs = {CountFn::constant(0), CountFn::constant(1),
                                          CountFn::constant(2), CountFn::constant(3),
                                          CountFn::identity()};
  return fs;
}

BoundedSeq random_seq(Rng& rng, std::int64_t N, std::size_t max_len) {
  std::vector<Rational> values(uniform(rng, 1, max_len));
  for (auto& v : values) {
    const auto den = static_cast<std::int64_t>(uniform(rng, 1, 12));
    const auto num = static_cast<std::int64_t>(uniform(rng, 0, static_cast<std::size_t>(N * den)));
    v = Rational(num, den);
  }
  return BoundedSeq(std::move(values), N);
}

std::string join_seq(const BoundedSeq& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) s += ' ';
    s += std::to_string(xs.at(i).numerator()) + "/" + std::to_string(xs.at(i).denominator());
  }
  return s;
}

void record_failure(SuiteResult& r, std::vector<std::string> row) {
  if (r.counterexample.empty()) r.counterexample = std::move(row);
}

SuiteResult ratap_suite(Rng& rng, std::size_t trials) {
  SuiteResult r;
  r.lemma = "ratap";
  r.trials = trials;
  r.counterexample_header = {"trial", "N", "k", "n", "f", "values"};
  for (std::size_t i = 0; i < trials; ++i) {
    const auto N = static_cast<std::int64_t>(uniform(rng, 1, 3));
    const BoundedSeq xs = random_seq(rng, N, 20);
    const auto k = static_cast<std::int64_t>(uniform(rng, 0, 4));
    const std::size_t n = uniform(rng, 0, 10);
    const CountFn& f = battery()[uniform(rng, 0, battery().size() - 1)];
    const auto p = ratap_witness(xs, k, n, f);
    if (p && *p < N * (k + 1))
      ++r.passed;
    else
      record_failure(r, {std::to_string(i), std::to_string(N), std::to_string(k), std::to_string(n),
                         f.describe(), join_seq(xs)});
  }
  return r;
}

SuiteResult limsup2_suite(Rng& rng, std::size_t trials) {
  SuiteResult r;
  r.lemma = "limsup2";
  r.trials = trials;
  r.counterexample_header = {"trial", "N", "k", "M", "t", "f", "values"};
  for (std::size_t i = 0; i < trials; ++i) {
    const auto N = static_cast<std::int64_t>(uniform(rng, 1, 3));
    const BoundedSeq xs = random_seq(rng, N, 30);
    const auto k = static_cast<std::int64_t>(uniform(rng, 0, 4));
    const std::size_t M = uniform(rng, 0, 10);
    const std::size_t t = uniform(rng, 1, 3);
    const CountFn& f = battery()[uniform(rng, 0, battery().size() - 1)];
    const auto w = rationalapprox2_witness(xs, k, M, t, f);
    if (w && w->m >= M && w->m <= w->theta && w->p < N * (k + 1))
      ++r.passed;
    else
      record_failure(r, {std::to_string(i), std::to_string(N), std::to_string(k), std::to_string(M),
                         std::to_string(t), f.describe(), join_seq(xs)});
  }
  return r;
}

// Instances built to satisfy the premises: constant lambda = 1/q with the
// exact divergence rate L(k) = qk, gamma small from n on, and s chosen at
// or below the right-hand side of the recursive inequality.
XuInstance random_xu(Rng& rng) {
  XuInstance in;
  in.k = uniform(rng, 0, 2);
  const std::size_t q = uniform(rng, 2, 4);
  in.L = CountFn::affine(q, 0);
  in.D = uniform(rng, 1, 5);
  in.n = uniform(rng, 0, 5);
  const Natural sig = evaluate(Budget{}, [&](EvalContext& cx) {
                        return sigma(cx, in.k, in.n, in.L, in.D);
                      }).value();
  in.p = static_cast<std::size_t>(sig) + uniform(rng, 0, 20);
  const std::size_t len = in.p + 1 + uniform(rng, 0, 5);
  const double k1 = static_cast<double>(in.k + 1);
  const double v_cap = 1.0 / (4.0 * k1 * static_cast<double>(in.p + 1));
  const double r_cap = 1.0 / (4.0 * k1);
  const double D = to_double(in.D);
  in.lambda.assign(len, 1.0 / static_cast<double>(q));
  in.v.resize(len);
  in.r.resize(len);
  in.gamma.resize(len);
  in.s.resize(len);
  for (std::size_t m = 0; m < len; ++m) {
    const bool inside = m >= in.n && m <= in.p;
    in.v[m] = inside ? uniform_real(rng, 0.0, v_cap) : uniform_real(rng, 0.0, 0.5);
    in.r[m] = inside ? uniform_real(rng, -r_cap, r_cap) : uniform_real(rng, -0.5, 0.5);
    in.gamma[m] = m < in.n ? uniform_real(rng, 0.0, 0.5)
                           : uniform_real(rng, 0.0, r_cap / static_cast<double>(2 * len));
  }
  in.s[0] = uniform_real(rng, 0.0, D);
  for (std::size_t m = 0; m + 1 < len; ++m) {
    auto rhs = [&] {
      return (1.0 - in.lambda[m]) * (in.s[m] + in.v[m]) + in.lambda[m] * in.r[m] + in.gamma[m];
    };
    if (rhs() < 0.0) in.r[m] = 0.0;
    const double cap = std::min(D, rhs());
    in.s[m + 1] = uniform(rng, 0, 1) ? cap : cap * uniform_real(rng, 0.0, 1.0);
  }
  return in;
}

SuiteResult xu_suite(Rng& rng, std::size_t trials) {
  SuiteResult r;
  r.lemma = "xu";
  r.trials = trials;
  r.counterexample_header = {"trial", "k", "n", "p", "D", "L", "verdict", "detail"};
  for (std::size_t i = 0; i < trials; ++i) {
    const XuInstance in = random_xu(rng);
    const XuResult res = qtxu1_check(in);
    if (res.verdict == Verdict::Holds) {
      ++r.passed;
    } else {
      record_failure(r, {std::to_string(i), std::to_string(in.k), std::to_string(in.n),
                         std::to_string(in.p), to_string(in.D), in.L.describe(),
                         res.verdict == Verdict::Fails ? "FAILS" : "INDETERMINATE", res.detail});
    }
  }
  return r;
}

SuiteResult suzuki1_suite(Rng& rng, std::size_t trials) {
  SuiteResult r;
  r.lemma = "suzuki1";
  r.trials = trials;
  r.counterexample_header = {"trial", "a", "N", "k", "l", "t", "f", "detail"};
  const CountFn nu = CountFn::identity();
  for (std::size_t i = 0; i < trials; ++i) {
    const auto a = static_cast<std::int64_t>(uniform(rng, 2, 3));
    const auto N = static_cast<std::int64_t>(uniform(rng, 1, 3));
    const std::size_t k = uniform(rng, 0, 2);
    const std::size_t l = uniform(rng, 0, 5);
    const std::size_t t = uniform(rng, 1, 2);
    const CountFn& f = battery()[uniform(rng, 0, 3)];
    auto fail = [&](const std::string& why) {
      record_failure(r, {std::to_string(i), std::to_string(a), std::to_string(N), std::to_string(k),
                         std::to_string(l), std::to_string(t), f.describe(), why});
    };
    const BoundValue bound = evaluate(Budget{}, [&](EvalContext& cx) {
      return varphi_suzuki1(cx, k, f, l, t, a, nu, N);
    });
    if (!bound.is_exact() || bound.value() > 1'000'000) {
      fail("bound too large for a desk-scale pair: " + bound.to_string());
      continue;
    }
    const auto phi = static_cast<std::size_t>(bound.value());
    const std::size_t len = phi + t + static_cast<std::size_t>(f.eval(phi).value()) + 2;
    const double Nd = static_cast<double>(N);
    const double ad = static_cast<double>(a);
    std::vector<Point> w(len);
    std::vector<double> alpha(len);
    double x = uniform_real(rng, 0.0, Nd);
    for (std::size_t n = 0; n < len; ++n) {
      w[n] = Point{x};
      alpha[n] = uniform_real(rng, 1.0 / ad, 1.0 - 1.0 / ad);
      x = std::clamp(x + uniform_real(rng, -1.0, 1.0) / static_cast<double>(n + 1), 0.0, Nd);
    }
    const SyntheticPair pair(Point{uniform_real(rng, 0.0, Nd)}, std::move(w), std::move(alpha), a);
    const BoundValue Rv = evaluate(Budget{}, [&](EvalContext& cx) { return R_const(cx, a, k, t); });
    if (auto bad = suzuki_premises(pair, nu, N, static_cast<std::size_t>(Rv.value()), false, true)) {
      fail("premise: " + *bad);
      continue;
    }
    const auto wit = suzuki1_witness(pair, k, l, t, f, N);
    if (wit && wit->m >= l && wit->m <= phi)
      ++r.passed;
    else
      fail(wit ? "witness m=" + std::to_string(wit->m) + " beyond bound " + std::to_string(phi)
               : "no witness up to bound " + std::to_string(phi));
  }
  return r;
}

std::size_t ceil_log2(std::uint64_t x) {
  std::size_t n = 0;
  while ((std::uint64_t{1} << n) < x) ++n;
  return n;
}

// w == N, z_0 = 0, alpha = 1/2: the gap |w_n - z_n| is N 2^-n and nu = 0.
SuiteResult suzuki2_suite(Rng& rng, std::size_t trials) {
  SuiteResult r;
  r.lemma = "suzuki2";
  r.trials = trials;
  r.counterexample_header = {"trial", "N", "k", "f", "index", "expected", "chi_tilde"};
  const CountFn nu = CountFn::constant(0);
  const std::vector<CountFn> fs = {CountFn::constant(0), CountFn::constant(1), CountFn::constant(3),
                                   CountFn::identity()};
  std::map<std::tuple<std::int64_t, std::size_t, std::size_t>, BoundValue> bounds;
  for (std::size_t i = 0; i < trials; ++i) {
    const auto N = static_cast<std::int64_t>(uniform(rng, 1, 3));
    const std::size_t k = uniform(rng, 0, 3);
    const std::size_t fi = uniform(rng, 0, fs.size() - 1);
    const CountFn& f = fs[fi];
    const std::size_t expected = ceil_log2(static_cast<std::uint64_t>(N) * (k + 1));
    const std::size_t len = 2 * expected + 8;
    const double Nd = static_cast<double>(N);
    const SyntheticPair pair(Point{0.0}, std::vector<Point>(len, Point{Nd}),
                             std::vector<double>(len, 0.5), 2);
    auto key = std::tuple{N, k, fi};
    auto it = bounds.find(key);
    if (it == bounds.end()) {
      it = bounds.emplace(key, evaluate(Budget{}, [&](EvalContext& cx) {
                                 return chi_tilde(cx, k, f, 2, nu, N);
                               })).first;
    }
    const BoundValue& chi = it->second;
    const auto premise = suzuki_premises(pair, nu, N, 64, true, false);
    const auto idx = suzuki2_index(pair, k, f);
    const bool ok = !premise && idx && *idx == expected &&
                    (!chi.is_exact() || Natural(*idx) <= chi.value());
    if (ok)
      ++r.passed;
    else
      record_failure(r, {std::to_string(i), std::to_string(N), std::to_string(k), f.describe(),
                         idx ? std::to_string(*idx) : "none", std::to_string(expected),
                         chi.to_string()});
  }
  return r;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"ratap", "limsup2", "xu", "suzuki1", "suzuki2"};
  return names;
}

SuiteResult run_suite(std::string_view lemma, std::uint64_t seed, std::size_t trials) {
  Rng rng(seed);
  SuiteResult r;
  if (lemma == "ratap")
    r = ratap_suite(rng, trials);
  else if (lemma == "limsup2")
    r = limsup2_suite(rng, trials);
  else if (lemma == "xu")
    r = xu_suite(rng, trials);
  else if (lemma == "suzuki1")
    r = suzuki1_suite(rng, trials);
  else if (lemma == "suzuki2")
    r = suzuki2_suite(rng, trials);
  else
    throw std::invalid_argument("unknown lemma '" + std::string(lemma) + "'");
  if (trials == 0) r.notices.push_back("zero trials; the suite passes vacuously");
  return r;
}

}  // namespace ppa
