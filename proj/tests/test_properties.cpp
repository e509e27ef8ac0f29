#include <doctest.h>

#include <random>

#include "battery.hpp"
#include "ppa/bounds.hpp"
#include "ppa/iteration.hpp"
#include "ppa/natural.hpp"
#include "ppa/operators.hpp"
#include "reference.hpp"

using namespace ppa;

namespace {

constexpr int kCases = 1000;

battery::FnDesc random_fn(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> kind(0, 2), small(0, 3);
  switch (kind(rng)) {
    case 0: return battery::c(small(rng));
    case 1: return battery::id();
    default: return battery::aff(small(rng) % 3 + 1, small(rng));
  }
}

Natural run_lib(auto body) {
  EvalContext cx{Budget{}};
  return body(cx);
}

}  // namespace

TEST_CASE("theta agrees with the reference") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long long> k(0, 3), M(0, 6), t(1, 3), N(1, 3);
  for (int i = 0; i < kCases; ++i) {
    const long long kk = k(rng), MM = M(rng), tt = t(rng), NN = N(rng);
    const auto f = random_fn(rng);
    CAPTURE(i);
    CHECK(run_lib([&](EvalContext& cx) { return theta(cx, kk, MM, tt, NN, f.lib()); }) ==
          ref::theta(kk, MM, tt, NN, f.reference()));
  }
}

TEST_CASE("closed-form bounds agree with the reference") {
  std::mt19937_64 rng(12);
  std::uniform_int_distribution<long long> small(0, 9), pos(1, 5);
  for (int i = 0; i < kCases; ++i) {
    const long long a = pos(rng), k = small(rng), t = pos(rng), n = small(rng), c = pos(rng), D = pos(rng);
    const auto g = random_fn(rng);
    const auto cmaj = battery::aff(pos(rng), pos(rng));
    CAPTURE(i);
    CHECK(run_lib([&](EvalContext& cx) { return R_const(cx, a, k, t); }) == ref::R_const(a, k, t));
    CHECK(run_lib([&](EvalContext& cx) { return zeta(cx, k, n, c, cmaj.lib()); }) == ref::zeta(k, n, c, cmaj.reference()));
    CHECK(run_lib([&](EvalContext& cx) { return sigma(cx, k, n, g.lib(), D); }) == ref::sigma(k, n, g.reference(), D));
  }
}

TEST_CASE("proj agrees with the reference") {
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<long long> k(0, 2), N(1, 2);
  for (int i = 0; i < kCases; ++i) {
    const long long kk = k(rng), NN = N(rng);
    // keep iterates small: constants and the identity
    const auto f = rng() % 2 ? battery::c(static_cast<long long>(rng() % 5)) : battery::id();
    CAPTURE(i);
    CHECK(run_lib([&](EvalContext& cx) { return proj_bound(cx, kk, f.lib(), NN); }) ==
          ref::proj(kk, f.reference(), NN));
  }
}

TEST_CASE("ceil_ln agrees with the reference") {
  std::mt19937_64 rng(14);
  for (int i = 0; i < kCases; ++i) {
    Natural x = 0;
    const int words = 1 + static_cast<int>(rng() % 4);
    for (int w = 0; w < words; ++w) x = (x << 64) + rng();
    x >>= rng() % 200;
    if (x == 0) x = 1;
    CAPTURE(x);
    CHECK(ceil_ln(x) == ref::ceil_ln(x));
  }
}

TEST_CASE("delta reconstructs the step weights") {
  std::mt19937_64 rng(15);
  std::uniform_real_distribution<double> q(1.5, 20.0), v(0.05, 0.45);
  for (int i = 0; i < kCases; ++i) {
    Schedule s;
    s.lambda = RealFamily::harmonic(q(rng));
    s.gamma = RealFamily::constant(v(rng));
    const std::size_t n = rng() % 1000;
    const StepParams p = s.at(n, 2);
    CHECK(p.lambda + p.gamma + p.delta == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(p.delta == s.delta(n));
    CHECK(p.delta > 0);
  }
}

TEST_CASE("step is the convex combination") {
  std::mt19937_64 rng(16);
  std::uniform_real_distribution<double> x(-5, 5), w(0.1, 3), g(0.05, 0.45);
  for (int i = 0; i < kCases; ++i) {
    const Point center{x(rng), x(rng)};
    const ResolventOperator op(QuadraticProx{center, w(rng)}, center);
    Schedule s;
    s.gamma = RealFamily::constant(g(rng));
    const Point u{x(rng), x(rng)}, z{x(rng), x(rng)};
    const std::size_t n = rng() % 100;
    const StepParams p = s.at(n, 2);
    const Point expect = p.lambda * u + p.gamma * z + p.delta * op.resolvent(p.c, z);
    CHECK(distance(step(op, s, u, z, n), expect) <= 1e-12);
    // nonexpansive resolvent, fixed zero
    CHECK(distance(op.resolvent(p.c, z), center) <= distance(z, center) + 1e-12);
  }
}
