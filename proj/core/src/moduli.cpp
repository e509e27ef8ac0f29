#include "ppa/moduli.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>

#include "ppa/csv.hpp"

namespace ppa {
namespace {

constexpr double kSlack = 1e-9;

// f(k) when it is at most limit, otherwise nothing. Budget failures count
// as "beyond the limit".
std::optional<std::size_t> index_within(const CountFn& f, std::size_t k, std::size_t limit,
                                        const Budget& budget) {
  const BoundValue v = f.eval(k, budget);
  if (!v.is_exact() || v.value() > limit) return std::nullopt;
  return static_cast<std::size_t>(v.value());
}

std::vector<double> suffix_max(std::vector<double> xs) {
  for (std::size_t i = xs.size(); i-- > 1;) xs[i - 1] = std::max(xs[i - 1], xs[i]);
  return xs;
}

}  // namespace

double to_double(const Natural& x) {
  if (bit_length(x) > 1000) return std::numeric_limits<double>::max();
  return x.convert_to<double>();
}

void Moduli::check() const {
  if (a < 1) throw std::invalid_argument("modulus a must be >= 1");
  if (c < 1) throw std::invalid_argument("modulus c must be >= 1");
  if (N1 < 1 || N3 < 1) throw std::invalid_argument("N1 and N3 must be >= 1");
  if (N2 < 0) throw std::invalid_argument("N2 must be a natural number");
  for (const CountFn* f : {&Cmaj, &ell, &L, &Gamma, &E})
    if (!f->monotone()) throw std::invalid_argument("moduli functions must be monotone");
}

BoundContext derive_constants(const Moduli& m) {
  BoundContext b;
  b.N0 = m.N2 + m.N3;
  b.N = std::max(Natural(2 * m.N3), Natural(m.N2 + m.N3));
  b.M1 = 3 * m.N2 + 4 * b.N;
  b.M2 = b.M1 + 2 * (m.N3 + b.N);
  b.D = 4 * b.N * b.N;
  const Natural M2 = b.M2;
  b.G = CountFn::closure(
      "G", [E = m.E, M2](EvalContext& cx, const Natural& k) { return E(cx, cx.bound(M2 * (k + 1))); },
      true, "k -> E(" + to_string(M2) + "(k+1))");
  return b;
}

Natural nu(EvalContext& cx, const Moduli& m, const Natural& k, NuForm form) {
  auto stage = cx.stage("nu");
  const Natural N0 = m.N2 + m.N3;
  const Natural k1 = k + 1;
  if (form == NuForm::ConstantC) {
    return std::max(m.ell(cx, cx.bound(8 * m.a * (N0 + m.N1 + m.N3) * k1)),
                    m.E(cx, cx.bound(4 * m.a * k1)) + 1);
  }
  return std::max({m.Gamma(cx, cx.bound(10 * m.a * m.c * N0 * k1)),
                   m.ell(cx, cx.bound(10 * m.a * (N0 + m.N1 + m.N3) * k1)),
                   m.E(cx, cx.bound(5 * m.a * k1)) + 1});
}

Natural mu(EvalContext& cx, const Moduli& m, const Natural& k) {
  auto stage = cx.stage("mu");
  const Natural N0 = m.N2 + m.N3;
  const Natural k1 = k + 1;
  return std::max(m.ell(cx, cx.bound(4 * m.a * k1 * (N0 + m.N3))),
                  m.E(cx, cx.bound(4 * m.a * k1)) + 1);
}

CountFn nu_fn(const Moduli& m, NuForm form) {
  return CountFn::closure(
      "", [m, form](EvalContext& cx, const Natural& k) { return nu(cx, m, k, form); }, true,
      form == NuForm::ConstantC ? "nu_constant_c" : "nu_general");
}

CountFn mu_fn(const Moduli& m) {
  return CountFn::closure("", [m](EvalContext& cx, const Natural& k) { return mu(cx, m, k); }, true,
                          "mu");
}

ModuliReport validate_moduli(const Schedule& s, const Moduli& m, std::size_t horizon,
                             const Point& u, const Point& z0, const Point& zero,
                             const Budget& budget) {
  ModuliReport report;
  report.horizon = horizon;
  auto& out = report.violations;
  const std::size_t H = horizon;
  const double a = to_double(m.a);
  const double c = to_double(m.c);

  std::vector<double> lambda(H + 1), gamma(H + 1), cs(H + 2), err(H + 1);
  for (std::size_t n = 0; n <= H; ++n) {
    lambda[n] = s.lambda.at(n);
    gamma[n] = s.gamma.at(n);
    cs[n] = s.c.at(n);
    err[n] = s.error.norm_at(n);
  }
  cs[H + 1] = s.c.at(H + 1);

  // (Q1) n >= ell(k) => lambda_n <= 1/(k+1)
  const auto lambda_tail = suffix_max(lambda);
  for (std::size_t k = 0; k <= H; ++k) {
    const auto start = index_within(m.ell, k, H, budget);
    if (!start) break;
    if (lambda_tail[*start] > 1.0 / (k + 1) + kSlack) {
      std::size_t n = *start;
      while (lambda[n] <= 1.0 / (k + 1) + kSlack) ++n;
      out.push_back("Q1 (ell): k=" + std::to_string(k) + " n=" + std::to_string(n) +
                    " lambda_n=" + format_real(lambda[n]));
      break;
    }
  }

  // (Q2) sum_{i=1}^{L(k)} lambda_i >= k
  std::vector<double> prefix(H + 1, 0.0);
  for (std::size_t n = 1; n <= H; ++n) prefix[n] = prefix[n - 1] + lambda[n];
  for (std::size_t k = 0;; ++k) {
    const auto end = index_within(m.L, k, H, budget);
    if (!end) break;
    if (prefix[*end] < static_cast<double>(k) - kSlack) {
      out.push_back("Q2 (L): k=" + std::to_string(k) + " L(k)=" + std::to_string(*end) +
                    " partial sum " + format_real(prefix[*end]));
      break;
    }
  }

  // (Q3) 1/a <= gamma_n <= 1 - 1/a and (Q4) c_n >= 1/c
  for (std::size_t n = 0; n <= H; ++n) {
    if (gamma[n] < 1.0 / a - kSlack || gamma[n] > 1.0 - 1.0 / a + kSlack) {
      out.push_back("Q3 (a): n=" + std::to_string(n) + " gamma_n=" + format_real(gamma[n]));
      break;
    }
  }
  for (std::size_t n = 0; n <= H; ++n) {
    if (cs[n] < 1.0 / c - kSlack) {
      out.push_back("Q4 (c): n=" + std::to_string(n) + " c_n=" + format_real(cs[n]));
      break;
    }
  }
  for (std::size_t n = 0; n <= H; ++n) {
    const BoundValue cm = m.Cmaj.eval(n, budget);
    if (cm.is_exact() && to_double(cm.value()) < cs[n] - kSlack) {
      out.push_back("Cmaj: n=" + std::to_string(n) + " Cmaj(n)=" + cm.to_string() +
                    " < c_n=" + format_real(cs[n]));
      break;
    }
  }

  // (Q5) n >= Gamma(k) => |c_{n+1} - c_n| <= 1/(k+1)
  std::vector<double> cdiff(H + 1);
  for (std::size_t n = 0; n <= H; ++n) cdiff[n] = std::abs(cs[n + 1] - cs[n]);
  const auto cdiff_tail = suffix_max(cdiff);
  for (std::size_t k = 0; k <= H; ++k) {
    const auto start = index_within(m.Gamma, k, H, budget);
    if (!start) break;
    if (cdiff_tail[*start] > 1.0 / (k + 1) + kSlack) {
      out.push_back("Q5 (Gamma): k=" + std::to_string(k) + " from n=" + std::to_string(*start) +
                    " |c_{n+1}-c_n| reaches " + format_real(cdiff_tail[*start]));
      break;
    }
  }

  // (Q6) sum_{i=E(k)+1}^{E(k)+n} |e_i| <= 1/(k+1); the largest n in range
  // gives the largest partial sum.
  std::vector<double> tail(H + 2, 0.0);
  for (std::size_t i = H + 1; i-- > 0;) tail[i] = tail[i + 1] + err[i];
  for (std::size_t k = 0; k <= H; ++k) {
    const auto start = index_within(m.E, k, H, budget);
    if (!start) break;
    if (tail[*start + 1] > 1.0 / (k + 1) + kSlack) {
      out.push_back("Q6 (E): k=" + std::to_string(k) + " tail sum " + format_real(tail[*start + 1]));
      break;
    }
  }

  // Norm bounds.
  const double N1 = to_double(m.N1), N2 = to_double(m.N2), N3 = to_double(m.N3);
  if (norm(u) > N1 + kSlack) out.push_back("N1: |u| = " + format_real(norm(u)) + " > N1");
  const double d3 = std::max(distance(u, zero), distance(z0, zero));
  if (d3 > N3 + kSlack) out.push_back("N3: max{|u-s|,|z0-s|} = " + format_real(d3) + " > N3");
  const BoundValue e0 = m.E.eval(0, budget);
  if (e0.is_exact()) {
    const auto last = to_u64(std::min(e0.value(), Natural(10'000'000)));
    double sum = 1.0;
    for (std::uint64_t i = 0; i <= *last; ++i) sum += s.error.norm_at(static_cast<std::size_t>(i));
    if (sum > N2 + kSlack) out.push_back("N2: sum_{i<=E(0)} |e_i| + 1 = " + format_real(sum) + " > N2");
  }
  return report;
}

}  // namespace ppa
