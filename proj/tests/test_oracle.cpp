#include <doctest.h>

#include <cmath>

#include "ppa/bounds.hpp"
#include "ppa/oracle.hpp"

using namespace ppa;

namespace {

BoundedSeq seq(std::vector<Rational> v, std::int64_t N) { return BoundedSeq(std::move(v), N); }

// Rescan for the witness conditions of ratap at a given p.
bool ratap_ok(const BoundedSeq& xs, std::int64_t k, std::size_t n, std::size_t fn, std::int64_t p) {
  bool some = false, all = true;
  for (std::size_t m = n; m <= n + fn; ++m) {
    some = some || xs.at(m) >= Rational(p, k + 1);
    all = all && xs.at(m) <= Rational(p + 1, k + 1);
  }
  return some && all;
}

SyntheticPair geometric_pair(std::int64_t N, std::size_t len) {
  std::vector<Point> w(len, Point{static_cast<double>(N)});
  return SyntheticPair(Point{0.0}, std::move(w), std::vector<double>(len, 0.5), 2);
}

}  // namespace

TEST_CASE("bounded sequences") {
  const BoundedSeq xs = seq({Rational(1, 2), 1, 0}, 1);
  CHECK(xs.at(5) == Rational(0));
  CHECK(xs.window_max(0, 2) == Rational(1));
  CHECK(xs.window_max(2, 9) == Rational(0));
  CHECK_THROWS(seq({Rational(3, 2)}, 1));
  CHECK_THROWS(seq({}, 1));
}

TEST_CASE("ratap examples") {
  CHECK(ratap_witness(seq({Rational(9, 10), Rational(1, 10), Rational(1, 2)}, 1), 1, 0, CountFn::constant(2)) == 1);
  CHECK(ratap_witness(seq({0, 0, 0}, 2), 3, 1, CountFn::identity()) == 0);
  for (std::int64_t k = 0; k < 5; ++k)
    CHECK(ratap_witness(seq({3}, 3), k, 0, CountFn::constant(4)) == 3 * (k + 1) - 1);
}

TEST_CASE("ratap witness is least") {
  const BoundedSeq xs = seq({Rational(1, 3), Rational(2, 3), Rational(1, 5), 1, Rational(7, 8)}, 1);
  for (std::int64_t k = 0; k <= 4; ++k)
    for (std::size_t n = 0; n <= 5; ++n) {
      const auto p = ratap_witness(xs, k, n, CountFn::constant(2));
      REQUIRE(p);
      CHECK(ratap_ok(xs, k, n, 2, *p));
      for (std::int64_t q = 0; q < *p; ++q) CHECK_FALSE(ratap_ok(xs, k, n, 2, q));
    }
}

TEST_CASE("rationalapprox2 examples") {
  const auto c = rationalapprox2_witness(seq({Rational(1, 2)}, 1), 1, 4, 1, CountFn::identity());
  REQUIRE(c);
  CHECK(c->m == 4);
  CHECK(c->p == 0);
  const BoundedSeq xs = seq({0, 1, 0, 0}, 1);
  const auto w = rationalapprox2_witness(xs, 0, 0, 1, CountFn::identity());
  REQUIRE(w);
  CHECK(w->theta == 2);
  CHECK(w->m <= 2);
  // re-verify the conjuncts
  CHECK(xs.at(w->m + 1) >= Rational(w->p, 1));
  for (std::size_t n = w->m; n <= 2 * w->m; ++n) CHECK(xs.at(n) <= Rational(w->p + 1, 1));
}

TEST_CASE("qtXu1") {
  XuInstance in;
  const std::size_t len = 40;
  in.lambda.assign(len, 0.5);
  in.v.assign(len, 0.0);
  in.r.assign(len, 0.0);
  in.gamma.assign(len, 0.0);
  in.L = CountFn::affine(2, 0);  // sum_{i=1}^{2k} 1/2 = k
  in.D = 4;
  in.s.resize(len);
  in.s[0] = 4.0;
  for (std::size_t m = 1; m < len; ++m) in.s[m] = in.s[m - 1] / 2;
  for (std::size_t k = 0; k <= 2; ++k) {
    in.k = k;
    in.n = 0;
    in.p = len - 1;
    const XuResult r = qtxu1_check(in);
    CAPTURE(r.detail);
    CHECK(r.verdict == Verdict::Holds);
  }
  XuInstance zero = in;
  zero.s.assign(len, 0.0);
  CHECK(qtxu1_check(zero).verdict == Verdict::Holds);

  XuInstance bad = in;
  bad.s[5] = 3.0;  // breaks (iii)
  CHECK(qtxu1_check(bad).verdict == Verdict::Indeterminate);
  XuInstance slow = in;
  slow.L = CountFn::identity();  // not a divergence rate for 1/2
  CHECK(qtxu1_check(slow).verdict == Verdict::Indeterminate);
}

TEST_CASE("synthetic pairs derive z") {
  const SyntheticPair p(Point{0.0}, {Point{2.0}, Point{2.0}, Point{2.0}}, {0.5, 0.5, 0.5}, 2);
  CHECK(p.z()[1] == Point{1.0});
  CHECK(p.z()[2] == Point{1.5});
  CHECK(p.gap(2) == 0.5);
  CHECK_THROWS(SyntheticPair(Point{0.0}, {Point{1.0}}, {1.5}, 2));
}

TEST_CASE("suzuki1") {
  std::vector<Point> w(60, Point{0.7, -0.2});
  const SyntheticPair flat(Point{0.7, -0.2}, w, std::vector<double>(60, 0.5), 2);
  const auto c = suzuki1_witness(flat, 0, 3, 1, CountFn::constant(2), 1);
  REQUIRE(c);
  CHECK(c->m == 3);
  CHECK(c->p == 0);

  // fabricated nu: the walk w jumps by 1 each step while z moves by half of that
  std::vector<Point> jumpy;
  for (int n = 0; n < 30; ++n) jumpy.push_back(Point{n % 2 ? 1.0 : 0.0});
  const SyntheticPair pj(Point{0.0}, jumpy, std::vector<double>(30, 0.5), 2);
  CHECK(suzuki_premises(pj, CountFn::constant(0), 1, 3, true, false).has_value());
  CHECK_FALSE(suzuki_premises(flat, CountFn::constant(0), 1, 3, true, false).has_value());
}

TEST_CASE("suzuki2 on the geometric gap") {
  // |w_n - z_n| = N 2^-n
  for (std::int64_t N = 1; N <= 3; ++N) {
    const SyntheticPair p = geometric_pair(N, 64);
    for (std::size_t n = 0; n < 10; ++n) CHECK(p.gap(n) == doctest::Approx(N * std::ldexp(1.0, -static_cast<int>(n))));
    for (std::size_t k = 0; k <= 3; ++k) {
      const auto idx = suzuki2_index(p, k, CountFn::constant(3));
      REQUIRE(idx);
      CHECK(*idx == static_cast<std::size_t>(std::ceil(std::log2(static_cast<double>(N * (k + 1))))));
    }
  }
  std::vector<Point> same(10, Point{1.0});
  CHECK(suzuki2_index(SyntheticPair(Point{1.0}, same, std::vector<double>(10, 0.5), 2), 4, CountFn::identity()) == 0u);
}

TEST_CASE("suites") {
  for (const auto& name : suite_names()) {
    CAPTURE(name);
    const SuiteResult r = run_suite(name, 7, 50);
    CHECK(r.trials == 50);
    CHECK(r.pass());
    CHECK(r.counterexample.empty());
  }
  const SuiteResult none = run_suite("ratap", 7, 0);
  CHECK(none.pass());
  CHECK_FALSE(none.notices.empty());
  CHECK_THROWS_AS(run_suite("unknown", 7, 1), std::invalid_argument);
}

TEST_CASE("suites are deterministic per seed") {
  const SuiteResult a = run_suite("limsup2", 123, 40), b = run_suite("limsup2", 123, 40);
  CHECK(a.passed == b.passed);
  CHECK(a.counterexample == b.counterexample);
}
