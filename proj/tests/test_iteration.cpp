#include <doctest.h>

#include <random>

#include "ppa/iteration.hpp"

using namespace ppa;

namespace {

ResolventOperator quad() { return ResolventOperator(QuadraticProx{{1, -1}, 1.0}, {1, -1}); }

// least n with n + f(n) <= H and all pairwise distances in the window <= 1/(k+1)
std::optional<std::size_t> brute_meta(const std::vector<Point>& z, std::size_t k, const CountFn& f) {
  const double eps = 1.0 / static_cast<double>(k + 1);
  const std::size_t H = z.size() - 1;
  for (std::size_t n = 0; n <= H; ++n) {
    const auto fn = to_u64(f.eval(n).value());
    if (!fn || *fn > H - n) continue;
    bool ok = true;
    for (std::size_t i = n; i <= n + *fn && ok; ++i)
      for (std::size_t j = i + 1; j <= n + *fn && ok; ++j) ok = distance(z[i], z[j]) <= eps;
    if (ok) return n;
  }
  return std::nullopt;
}

}  // namespace

TEST_CASE("one step by hand") {
  Schedule s;
  const Point z1 = step(quad(), s, {3, 2}, {0, 0}, 0);
  // 1/3 (3,2) + 1/2 (0,0) + 1/6 (0.5,-0.5)
  CHECK(z1[0] == doctest::Approx(1.0 + 1.0 / 12));
  CHECK(z1[1] == doctest::Approx(2.0 / 3 - 1.0 / 12));
}

TEST_CASE("trace shape") {
  Schedule s;
  const Trace t = run(quad(), s, {3, 2}, {0, 0}, 50);
  CHECK(t.horizon() == 50);
  CHECK(t.z.size() == 51);
  CHECK(t.jz.size() == 51);
  CHECK(t.w.size() == 50);
  CHECK(t.dz.size() == 50);
  CHECK(t.res_jn.size() == 51);
  CHECK(t.res_j.size() == 51);
  CHECK(w_reconstruction_error(t) <= 1e-12);

  const Trace t0 = run(quad(), s, {3, 2}, {0, 0}, 0);
  CHECK(t0.z.size() == 1);
  CHECK(t0.z[0] == Point{0, 0});
  CHECK(t0.w.empty());
}

TEST_CASE("strong convergence toward the zero") {
  Schedule s;
  const Trace t = run(quad(), s, {3, 2}, {0, 0}, 10000);
  const Point star{1, -1};
  CHECK(distance(t.z[10000], star) < distance(t.z[100], star));
  CHECK(boundedness_check(t.z, star, 5.0));
  CHECK(wbound_check(t.w, star, 2.0, 5.0));
  CHECK(recurrence_check(t, quad(), star, 35.0) <= 1e-8);
  CHECK(ineq_jc_check(t, 1.0, 5.0) <= 1e-8);
}

TEST_CASE("empirical metastability matches a pairwise scan") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1, 1);
  const std::vector<CountFn> fs = {CountFn::constant(0), CountFn::constant(3), CountFn::identity(),
                                   CountFn::affine(2, 1)};
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Point> z;
    Point x{u(rng), u(rng)};
    const double shrink = 0.5 + 0.5 * u(rng) * u(rng);
    for (int n = 0; n < 60; ++n) {
      z.push_back(x);
      x = shrink * x + Point{0.1 * u(rng), 0.1 * u(rng)};
    }
    for (const auto& f : fs)
      for (std::size_t k : {0u, 1u, 3u, 9u}) CHECK(empirical_metastability(z, k, f) == brute_meta(z, k, f));
  }
}

TEST_CASE("residual indices") {
  const std::vector<double> col = {2.0, 0.4, 0.6, 0.3, 0.2, 0.1};
  CHECK(first_below(col, 0) == 1u);
  CHECK(first_below(col, 1) == 1u);
  CHECK(first_below(col, 3) == 4u);
  CHECK(first_below(col, 100) == std::nullopt);
  CHECK(window_below(col, 1, CountFn::constant(0)) == 1u);
  CHECK(window_below(col, 1, CountFn::constant(1)) == 3u);
  CHECK(window_below(col, 1, CountFn::constant(2)) == 3u);
  CHECK(window_below(col, 1, CountFn::constant(3)) == std::nullopt);
  CHECK(window_below(col, 0, CountFn::identity()) == 1u);
}

TEST_CASE("wdiff over the ball projection") {
  Schedule s;
  const ResolventOperator ball(BallProjection{{0, 0}, 1.0}, {0, 0});
  const Trace t = run(ball, s, {2, 0}, {0, 0}, 2000);
  std::vector<std::pair<std::size_t, Natural>> nus;
  for (std::size_t k = 0; k <= 5; ++k) nus.emplace_back(k, Natural(k));
  CHECK(wdiff_check(t, nus).empty());
  // an index beyond the trace is skipped, not an error
  CHECK(wdiff_check(t, {{0, Natural(1) << 80}}).empty());
}

TEST_CASE("asymptotic residual rows") {
  Schedule s;
  const Trace t = run(quad(), s, {3, 2}, {0, 0}, 20);
  const auto rows = asymptotic_residuals(t);
  REQUIRE(rows.size() == 20);
  CHECK(rows[3].n == 3);
  CHECK(rows[3].dz == t.dz[3]);
  CHECK(rows[3].res_j == t.res_j[3]);
}
