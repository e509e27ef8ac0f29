#include "ppa/iteration.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>

namespace ppa {
namespace {

constexpr double kSlack = 1e-9;

Point combine(const StepParams& p, const Point& u, const Point& z, const Point& jz) {
  Point next = p.lambda * u;
  next += p.gamma * z;
  next += p.delta * jz;
  next += p.e;
  return next;
}

// Running min and max of one coordinate over a sliding window whose ends
// never move left.
class SlidingRange {
 public:
  explicit SlidingRange(const std::vector<Point>& z, std::size_t coord) : z_(z), coord_(coord) {}

  void push(std::size_t i) {
    const double v = z_[i][coord_];
    while (!max_.empty() && z_[max_.back()][coord_] <= v) max_.pop_back();
    while (!min_.empty() && z_[min_.back()][coord_] >= v) min_.pop_back();
    max_.push_back(i);
    min_.push_back(i);
  }
  void drop_before(std::size_t i) {
    while (!max_.empty() && max_.front() < i) max_.pop_front();
    while (!min_.empty() && min_.front() < i) min_.pop_front();
  }
  void clear() {
    max_.clear();
    min_.clear();
  }
  double span() const { return z_[max_.front()][coord_] - z_[min_.front()][coord_]; }

 private:
  const std::vector<Point>& z_;
  std::size_t coord_;
  std::deque<std::size_t> max_, min_;
};

bool pairwise_within(const std::vector<Point>& z, std::size_t lo, std::size_t hi, double eps) {
  for (std::size_t i = lo; i <= hi; ++i)
    for (std::size_t j = i + 1; j <= hi; ++j)
      if (distance(z[i], z[j]) > eps) return false;
  return true;
}

}  // namespace

Point step(const ResolventOperator& op, const Schedule& schedule, const Point& u, const Point& z,
           std::size_t n) {
  const StepParams p = schedule.at(n, z.dim());
  return combine(p, u, z, op.resolvent(p.c, z));
}

Trace run(const ResolventOperator& op, const Schedule& schedule, const Point& u, const Point& z0,
          std::size_t horizon, double j_param) {
  require_same_dim(u, z0);
  require_same_dim(u, op.zero_witness());
  Trace t;
  t.schedule = schedule;
  t.operator_name = std::string(op.name());
  t.u = u;
  t.j_param = j_param;
  t.z.reserve(horizon + 1);
  t.z.push_back(z0);
  for (std::size_t n = 0;; ++n) {
    const Point& z = t.z[n];
    const StepParams p = schedule.at(n, z.dim());
    t.jz.push_back(op.resolvent(p.c, z));
    t.res_jn.push_back(distance(t.jz[n], z));
    t.res_j.push_back(distance(op.resolvent(j_param, z), z));
    if (n == horizon) break;
    Point next = combine(p, u, z, t.jz[n]);
    if (!next.is_finite()) throw std::runtime_error("iteration produced a non-finite point at n=" + std::to_string(n + 1));
    t.dz.push_back(distance(next, z));
    t.w.push_back((next - p.gamma * z) * (1.0 / (1.0 - p.gamma)));
    t.z.push_back(std::move(next));
  }
  return t;
}

std::optional<std::size_t> empirical_metastability(const std::vector<Point>& z, std::size_t k,
                                                   const CountFn& f, const Budget& budget) {
  if (z.empty()) return std::nullopt;
  const std::size_t H = z.size() - 1;
  const double eps = 1.0 / static_cast<double>(k + 1);
  const std::size_t dim = z[0].dim();
  std::vector<SlidingRange> ranges;
  for (std::size_t c = 0; c < dim; ++c) ranges.emplace_back(z, c);
  std::size_t pushed_to = 0;  // indices [0, pushed_to) have been pushed
  bool any_pushed = false;
  for (std::size_t n = 0; n <= H; ++n) {
    const BoundValue fn = f.eval(n, budget);
    if (!fn.is_exact() || fn.value() > H - n) {
      if (f.monotone()) break;
      continue;
    }
    const std::size_t end = n + static_cast<std::size_t>(fn.value());
    if (!any_pushed || end + 1 < pushed_to) {
      for (auto& r : ranges) r.clear();
      pushed_to = n;
      any_pushed = true;
    }
    for (auto& r : ranges) r.drop_before(n);
    pushed_to = std::max(pushed_to, n);
    for (; pushed_to <= end; ++pushed_to)
      for (auto& r : ranges) r.push(pushed_to);
    double lower = 0.0, upper_sq = 0.0;
    for (const auto& r : ranges) {
      const double s = r.span();
      lower = std::max(lower, s);
      upper_sq += s * s;
    }
    if (lower > eps) continue;
    if (std::sqrt(upper_sq) <= eps || pairwise_within(z, n, end, eps)) return n;
  }
  return std::nullopt;
}

std::optional<std::size_t> first_below(const std::vector<double>& column, std::size_t k) {
  const double eps = 1.0 / static_cast<double>(k + 1);
  for (std::size_t m = 0; m < column.size(); ++m)
    if (column[m] <= eps) return m;
  return std::nullopt;
}

std::optional<std::size_t> window_below(const std::vector<double>& column, std::size_t k,
                                        const CountFn& f, const Budget& budget) {
  const double eps = 1.0 / static_cast<double>(k + 1);
  const std::size_t len = column.size();
  // next_bad[i]: least j >= i with column[j] > eps, len if none
  std::vector<std::size_t> next_bad(len + 1, len);
  for (std::size_t i = len; i-- > 0;) next_bad[i] = column[i] > eps ? i : next_bad[i + 1];
  for (std::size_t n = 0; n < len; ++n) {
    const BoundValue fn = f.eval(n, budget);
    if (!fn.is_exact() || fn.value() >= len - n) {
      if (f.monotone()) break;
      continue;
    }
    if (next_bad[n] > n + static_cast<std::size_t>(fn.value())) return n;
  }
  return std::nullopt;
}

std::vector<ResidualRow> asymptotic_residuals(const Trace& trace) {
  std::vector<ResidualRow> rows;
  for (std::size_t n = 0; n < trace.dz.size(); ++n)
    rows.push_back({n, trace.dz[n], trace.res_jn[n], trace.res_j[n]});
  return rows;
}

double recurrence_check(const Trace& trace, const ResolventOperator& op, const Point& p,
                        double M1) {
  double worst = -INFINITY;
  const Point up = trace.u - p;
  const double up_norm = norm(up);
  for (std::size_t m = 0; m + 1 < trace.z.size(); ++m) {
    const StepParams sp = trace.schedule.at(m, p.dim());
    const double zm_p = distance(trace.z[m], p);
    const double s_m = zm_p * zm_p;
    const double s_next = std::pow(distance(trace.z[m + 1], p), 2);
    const double jp = distance(op.resolvent(sp.c, p), p);
    const double v_m = jp * (jp + 2.0 * zm_p);
    const double r_m = 2.0 * inner(up, trace.z[m + 1] - p);
    const double g_m = norm(sp.e) * (M1 + 2.0 * sp.lambda * up_norm);
    const double rhs = (1.0 - sp.lambda) * (s_m + v_m) + sp.lambda * r_m + g_m;
    worst = std::max(worst, s_next - rhs);
  }
  return worst;
}

double ineq_jc_check(const Trace& trace, double c, double N0) {
  double worst = -INFINITY;
  for (std::size_t m = 0; m + 1 < trace.z.size(); ++m) {
    const double cm = trace.schedule.c.at(m);
    const double cm1 = trace.schedule.c.at(m + 1);
    const double lhs = distance(trace.jz[m + 1], trace.jz[m]);
    const double rhs = trace.dz[m] + 2.0 * c * N0 * std::abs(cm1 - cm);
    worst = std::max(worst, lhs - rhs);
  }
  return worst;
}

bool boundedness_check(const std::vector<Point>& z, const Point& s, double N0) {
  return std::all_of(z.begin(), z.end(),
                     [&](const Point& p) { return distance(p, s) <= N0 + kSlack; });
}

bool wbound_check(const std::vector<Point>& w, const Point& s, double a, double N0) {
  return std::all_of(w.begin(), w.end(),
                     [&](const Point& p) { return distance(p, s) <= 2.0 * a * N0 + kSlack; });
}

std::vector<WdiffViolation> wdiff_check(
    const Trace& trace, const std::vector<std::pair<std::size_t, Natural>>& nu_values) {
  std::vector<WdiffViolation> out;
  if (trace.w.size() < 2) return out;
  const std::size_t last = trace.w.size() - 2;  // n + 1 must index w
  for (const auto& [k, nu] : nu_values) {
    if (nu > last) continue;
    const double eps = 1.0 / static_cast<double>(k + 1);
    for (auto n = static_cast<std::size_t>(nu); n <= last; ++n) {
      const double excess =
          distance(trace.w[n + 1], trace.w[n]) - trace.dz[n] - eps;
      if (excess > kSlack) out.push_back({k, n, excess});
    }
  }
  return out;
}

double w_reconstruction_error(const Trace& trace) {
  double worst = 0.0;
  for (std::size_t n = 0; n < trace.w.size(); ++n) {
    const double g = trace.schedule.gamma.at(n);
    const Point rebuilt = g * trace.z[n] + (1.0 - g) * trace.w[n];
    worst = std::max(worst, distance(rebuilt, trace.z[n + 1]));
  }
  return worst;
}

}  // namespace ppa
