#include "ppa/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ppa/bounds.hpp"
#include "ppa/csv.hpp"
#include "ppa/moduli.hpp"

namespace ppa {
namespace {

constexpr double kSlack = 1e-9;

std::optional<std::size_t> eval_small(const CountFn& f, std::size_t n, const Budget& budget) {
  const BoundValue v = f.eval(n, budget);
  if (!v.is_exact()) return std::nullopt;
  const auto small = to_u64(v.value());
  if (!small || *small > (std::uint64_t{1} << 62)) return std::nullopt;
  return static_cast<std::size_t>(*small);
}

}  // namespace

BoundedSeq::BoundedSeq(std::vector<Rational> values, std::int64_t N)
    : values_(std::move(values)), N_(N) {
  if (values_.empty()) throw std::invalid_argument("bounded sequence needs at least one value");
  if (N_ < 1) throw std::invalid_argument("bound N must be positive");
  for (const auto& x : values_)
    if (x < Rational(0) || x > Rational(N_)) throw std::invalid_argument("sequence value outside [0, N]");
  std::vector<std::size_t> level(values_.size());
  for (std::size_t i = 0; i < level.size(); ++i) level[i] = i;
  sparse_.push_back(level);
  for (std::size_t width = 1; 2 * width <= values_.size(); width *= 2) {
    const auto& prev = sparse_.back();
    std::vector<std::size_t> next(values_.size() - 2 * width + 1);
    for (std::size_t i = 0; i < next.size(); ++i) {
      const std::size_t x = prev[i], y = prev[i + width];
      next[i] = values_[x] >= values_[y] ? x : y;
    }
    sparse_.push_back(std::move(next));
  }
}

const Rational& BoundedSeq::at(std::size_t i) const {
  return i < values_.size() ? values_[i] : values_.back();
}

Rational BoundedSeq::window_max(std::size_t lo, std::size_t hi) const {
  if (lo > hi) throw std::invalid_argument("empty window");
  const std::size_t last = values_.size() - 1;
  lo = std::min(lo, last);
  hi = std::min(hi, last);
  std::size_t level = 0;
  while ((std::size_t{2} << level) <= hi - lo + 1) ++level;
  const std::size_t x = sparse_[level][lo];
  const std::size_t y = sparse_[level][hi + 1 - (std::size_t{1} << level)];
  return std::max(values_[x], values_[y]);
}

std::optional<std::int64_t> ratap_witness(const BoundedSeq& xs, std::int64_t k, std::size_t n,
                                          const CountFn& f) {
  const auto fn = eval_small(f, n, Budget{});
  if (!fn) return std::nullopt;
  const std::size_t end = std::min(n + *fn, std::max(n, xs.size()));
  for (std::int64_t p = 0; p < xs.N() * (k + 1); ++p) {
    const Rational lo(p, k + 1), hi(p + 1, k + 1);
    bool some_above = false, all_below = true;
    for (std::size_t m = n; m <= end; ++m) {
      some_above = some_above || xs.at(m) >= lo;
      all_below = all_below && xs.at(m) <= hi;
    }
    if (some_above && all_below) return p;
  }
  return std::nullopt;
}

std::optional<Limsup2Witness> rationalapprox2_witness(const BoundedSeq& xs, std::int64_t k,
                                                      std::size_t M, std::size_t t,
                                                      const CountFn& f, const Budget& budget) {
  const BoundValue th = evaluate(budget, [&](EvalContext& cx) {
    return theta(cx, k, M, t, xs.N(), f);
  });
  if (!th.is_exact()) return std::nullopt;
  const std::int64_t P = xs.N() * (k + 1);
  for (Natural mm = M; mm <= th.value(); ++mm) {
    const auto m = static_cast<std::size_t>(mm);
    const auto fm = eval_small(f, m, budget);
    if (!fm) return std::nullopt;
    const Rational top = xs.window_max(m, m + *fm);
    const Rational ahead = xs.at(m + t);
    for (std::int64_t p = 0; p < P; ++p) {
      if (ahead >= Rational(p, k + 1) && top <= Rational(p + 1, k + 1))
        return Limsup2Witness{m, p, th.value()};
    }
  }
  return std::nullopt;
}

XuResult qtxu1_check(const XuInstance& in, const Budget& budget) {
  const std::size_t len = in.s.size();
  if (len == 0 || in.v.size() != len || in.r.size() != len || in.gamma.size() != len ||
      in.lambda.size() != len)
    return {Verdict::Indeterminate, "sequences must share one non-zero length"};
  if (in.p >= len) return {Verdict::Indeterminate, "p lies beyond the instance"};
  if (in.D < 1) return {Verdict::Indeterminate, "D must be positive"};
  const double D = to_double(in.D);
  const double k1 = static_cast<double>(in.k + 1);
  for (std::size_t m = 0; m < len; ++m) {
    if (!(in.s[m] >= 0.0 && in.s[m] <= D))
      return {Verdict::Indeterminate, "s_" + std::to_string(m) + " outside [0, D]"};
    if (!(in.lambda[m] > 0.0 && in.lambda[m] < 1.0))
      return {Verdict::Indeterminate, "lambda_" + std::to_string(m) + " outside (0,1)"};
    if (!(in.gamma[m] >= 0.0)) return {Verdict::Indeterminate, "gamma_" + std::to_string(m) + " negative"};
  }

  // The rate of divergence, on every k whose index is inside the instance.
  std::vector<double> prefix(len, 0.0);
  for (std::size_t i = 1; i < len; ++i) prefix[i] = prefix[i - 1] + in.lambda[i];
  for (std::size_t kk = 0;; ++kk) {
    const auto idx = eval_small(in.L, kk, budget);
    if (!idx || *idx >= len) break;
    if (prefix[*idx] + kSlack < static_cast<double>(kk))
      return {Verdict::Indeterminate, "L is not a rate of divergence at k=" + std::to_string(kk)};
  }

  // (i)
  const double v_cap = 1.0 / (4.0 * k1 * static_cast<double>(in.p + 1));
  const double r_cap = 1.0 / (4.0 * k1);
  for (std::size_t m = in.n; m <= in.p; ++m) {
    if (in.v[m] > v_cap) return {Verdict::Indeterminate, "(i) fails for v at m=" + std::to_string(m)};
    if (in.r[m] > r_cap) return {Verdict::Indeterminate, "(i) fails for r at m=" + std::to_string(m)};
  }
  // (ii): gamma is non-negative and zero past the instance, so the whole
  // tail from n is the largest partial sum.
  double tail = 0.0;
  for (std::size_t i = in.n; i < len; ++i) tail += in.gamma[i];
  if (tail > r_cap) return {Verdict::Indeterminate, "(ii) fails: tail sum " + format_real(tail)};
  // (iii)
  for (std::size_t m = 0; m + 1 < len; ++m) {
    const double rhs = (1.0 - in.lambda[m]) * (in.s[m] + in.v[m]) + in.lambda[m] * in.r[m] + in.gamma[m];
    if (in.s[m + 1] > rhs) return {Verdict::Indeterminate, "(iii) fails at m=" + std::to_string(m)};
  }

  const BoundValue sig = evaluate(budget, [&](EvalContext& cx) { return sigma(cx, in.k, in.n, in.L, in.D); });
  if (!sig.is_exact()) return {Verdict::Indeterminate, "sigma not computable: " + sig.to_string()};
  // The rate check above covers every k <= n + ceil(ln(4D(k+1))) whenever
  // sigma <= p < len, since L is monotone.
  if (sig.value() > in.p) return {Verdict::Holds, "vacuous: sigma > p"};
  const auto start = static_cast<std::size_t>(sig.value());
  for (std::size_t m = start; m <= in.p; ++m) {
    if (in.s[m] > 1.0 / k1 + kSlack)
      return {Verdict::Fails, "s_" + std::to_string(m) + " = " + format_real(in.s[m]) +
                                  " > 1/(k+1) with sigma = " + std::to_string(start)};
  }
  return {Verdict::Holds, "sigma = " + std::to_string(start)};
}

SyntheticPair::SyntheticPair(Point z0, std::vector<Point> w, std::vector<double> alpha, std::int64_t a)
    : w_(std::move(w)), alpha_(std::move(alpha)), a_(a) {
  if (w_.empty() || alpha_.size() != w_.size())
    throw std::invalid_argument("pair needs matching non-empty w and alpha");
  if (a_ < 1) throw std::invalid_argument("a must be positive");
  for (double al : alpha_)
    if (!(al >= 0.0 && al <= 1.0)) throw std::invalid_argument("alpha outside [0,1]");
  z_.reserve(w_.size());
  z_.push_back(std::move(z0));
  for (std::size_t n = 0; n + 1 < w_.size(); ++n)
    z_.push_back(alpha_[n] * w_[n] + (1.0 - alpha_[n]) * z_[n]);
}

double SyntheticPair::gap(std::size_t n) const { return distance(w_[n], z_[n]); }

std::optional<std::string> suzuki_premises(const SyntheticPair& pair, const CountFn& nu,
                                           std::int64_t N, std::size_t max_k, bool two_sided,
                                           bool gap_bound, const Budget& budget) {
  const std::size_t len = pair.size();
  const double a = static_cast<double>(pair.a());
  for (std::size_t n = static_cast<std::size_t>(pair.a()); n < len; ++n) {
    const double al = pair.alpha()[n];
    if (al > 1.0 - 1.0 / a + 1e-12 || (two_sided && al < 1.0 / a - 1e-12))
      return "alpha_" + std::to_string(n) + " outside the range allowed by a";
  }
  const double Nd = static_cast<double>(N);
  for (std::size_t n = 0; n < len; ++n) {
    if (gap_bound ? pair.gap(n) > Nd + kSlack
                  : (norm(pair.z()[n]) > Nd + kSlack || norm(pair.w()[n]) > Nd + kSlack))
      return "norm bound N fails at n=" + std::to_string(n);
  }
  if (len < 2) return std::nullopt;
  std::vector<double> excess(len - 1);
  for (std::size_t n = 0; n + 1 < len; ++n)
    excess[n] = distance(pair.w()[n + 1], pair.w()[n]) - distance(pair.z()[n + 1], pair.z()[n]);
  for (std::size_t n = excess.size() - 1; n-- > 0;) excess[n] = std::max(excess[n], excess[n + 1]);
  for (std::size_t k = 0; k <= max_k; ++k) {
    const auto start = eval_small(nu, k, budget);
    if (!start) return "nu(" + std::to_string(k) + ") not computable";
    if (*start >= excess.size()) continue;
    if (excess[*start] > 1.0 / static_cast<double>(k + 1) + kSlack)
      return "nu fails at k=" + std::to_string(k);
  }
  return std::nullopt;
}

std::optional<Suzuki1Witness> suzuki1_witness(const SyntheticPair& pair, std::size_t k,
                                              std::size_t l, std::size_t t, const CountFn& f,
                                              std::int64_t N, const Budget& budget) {
  if (t < 1) throw std::invalid_argument("t must be positive");
  const BoundValue Rv = evaluate(budget, [&](EvalContext& cx) { return R_const(cx, pair.a(), k, t); });
  if (!Rv.is_exact() || bit_length(Rv.value()) > 50) return std::nullopt;
  const double R = to_double(Rv.value());
  const double eps = 1.0 / static_cast<double>(k + 1);
  const std::size_t len = pair.size();
  for (std::size_t m = l; m + t < len; ++m) {
    const auto fm = eval_small(f, m, budget);
    if (!fm || m + t + *fm >= len) break;
    double top = 0.0;
    for (std::size_t n = m; n <= m + t + *fm; ++n) top = std::max(top, pair.gap(n));
    // Least p meeting the window condition; the other two conditions only
    // get harder as p grows.
    const double p_real = std::max(0.0, std::ceil(top * R - 1.0 - kSlack * R));
    const Natural p = static_cast<std::uint64_t>(p_real);
    if (p >= Rv.value() * N) continue;
    if (pair.gap(m + t) < p_real / R - kSlack) continue;
    double alpha_sum = 1.0;
    for (std::size_t i = 0; i < t; ++i) alpha_sum += pair.alpha()[m + i];
    const double lhs = distance(pair.w()[m + t], pair.z()[m]) - alpha_sum * (p_real + 1.0) / R;
    if (lhs < -eps - kSlack) continue;
    return Suzuki1Witness{m, p};
  }
  return std::nullopt;
}

std::optional<std::size_t> suzuki2_index(const SyntheticPair& pair, std::size_t k,
                                         const CountFn& f, const Budget& budget) {
  const std::size_t len = pair.size();
  const double eps = 1.0 / static_cast<double>(k + 1) + kSlack;
  std::vector<std::size_t> next_bad(len + 1, len);
  for (std::size_t i = len; i-- > 0;) next_bad[i] = pair.gap(i) > eps ? i : next_bad[i + 1];
  for (std::size_t n = 0; n < len; ++n) {
    const auto fn = eval_small(f, n, budget);
    if (!fn || n + *fn >= len) {
      if (f.monotone()) break;
      continue;
    }
    if (next_bad[n] > n + *fn) return n;
  }
  return std::nullopt;
}

}  // namespace ppa
