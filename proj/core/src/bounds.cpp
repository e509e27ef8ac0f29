#include "ppa/bounds.hpp"

#include <algorithm>
#include <stdexcept>

namespace ppa {
namespace {

void require(bool ok, const char* message) {
  if (!ok) throw std::invalid_argument(message);
}

Natural checked_ceil_ln(EvalContext& cx, const Natural& x) {
  cx.tick();
  return ceil_ln(x);
}

}  // namespace

Natural zeta(EvalContext& cx, const Natural& k, const Natural& n, const Natural& c,
             const CountFn& cmaj) {
  auto stage = cx.stage("zeta");
  const Natural v = cx.bound(cmaj(cx, n) * c * (k + 1));
  require(v >= 1, "zeta requires C(n) * c >= 1");
  return v - 1;
}

Natural proj_bound(EvalContext& cx, const Natural& k, const CountFn& f, const Natural& N) {
  auto stage = cx.stage("proj");
  require(N >= 1, "proj requires N >= 1");
  const Natural r = cx.bound(N * N * (k + 1));
  return iterate(f, r)(cx, 0);
}

Natural proj3_bound(EvalContext& cx, const Natural& k, const CountFn& f, const Natural& N) {
  auto stage = cx.stage("proj3");
  require(N >= 1, "proj3 requires N >= 1");
  const Natural R = cx.bound(4 * N * N * N * N * (k + 1) * (k + 1));
  const CountFn check = CountFn::closure("", [f, N](EvalContext& c, const Natural& m) {
    const Natural q = c.bound(24 * N * (m + 1) * (m + 1));
    return std::max(f(c, q), q);
  });
  const Natural x = iterate(check, R)(cx, 0);
  return cx.bound(24 * N * (x + 1) * (x + 1));
}

Natural theta(EvalContext& cx, const Natural& k, const Natural& M, const Natural& t,
              const Natural& N, const CountFn& f) {
  auto stage = cx.stage("theta");
  require(t >= 1, "theta requires t >= 1");
  require(N >= 1, "theta requires N >= 1");
  const Natural P = cx.bound(N * (k + 1));
  const auto steps = to_u64(P);
  if (!steps || *steps > cx.remaining_calls()) cx.exceed();
  Natural r = 0;
  for (std::uint64_t i = *steps; i-- > 0;) {
    cx.tick();
    const Natural next_n = M + (i + 1) * t;
    r = cx.bound(t + r + f(cx, cx.bound(next_n + r)));
  }
  return cx.bound(M + (P - 1) * t + r);
}

Natural R_const(EvalContext& cx, const Natural& a, const Natural& k, const Natural& t) {
  auto stage = cx.stage("R");
  require(a >= 1, "R requires a >= 1");
  require(t >= 1, "R requires t >= 1");
  Natural power = 1;
  if (a >= 2) {
    const auto small_t = to_u64(t);
    if (!small_t || (bit_length(a) - 1) * static_cast<double>(*small_t) >
                        static_cast<double>(cx.budget().max_bits))
      cx.exceed();
    power = cx.bound(boost::multiprecision::pow(a, static_cast<unsigned>(*small_t)));
  }
  return cx.bound(t * (2 * t + 1) * power * (k + 1));
}

Natural varphi_suzuki1(EvalContext& cx, const Natural& k, const CountFn& f, const Natural& l,
                       const Natural& t, const Natural& a, const CountFn& nu,
                       const Natural& N) {
  auto stage = cx.stage("varphi");
  const Natural r = R_const(cx, a, k, t) - 1;
  const Natural start = std::max({a, l, nu(cx, r)});
  const CountFn g = CountFn::closure("", [f, t](EvalContext& c, const Natural& m) { return t + f(c, m); },
                                     f.monotone());
  return theta(cx, r, start, t, N, g);
}

Natural chi_tilde(EvalContext& cx, const Natural& k, const CountFn& f, const Natural& a,
                  const CountFn& nu, const Natural& N) {
  auto stage = cx.stage("chi_tilde");
  require(N >= 1, "chi_tilde requires N >= 1");
  const Natural t = std::max(cx.bound(2 * N * a * (k + 1)), Natural(1));
  return varphi_suzuki1(cx, k, f, a, t, a, nu, 2 * N);
}

Natural sigma(EvalContext& cx, const Natural& k, const Natural& n, const CountFn& L,
              const Natural& D) {
  auto stage = cx.stage("sigma");
  require(D >= 1, "sigma requires D >= 1");
  const Natural ln = checked_ceil_ln(cx, cx.bound(4 * D * (k + 1)));
  return L(cx, n + ln) + 1;
}

std::optional<std::pair<Natural, Natural>> qtxu_sigma_window(EvalContext& cx, const Natural& k,
                                                             const Natural& n, const Natural& p,
                                                             const CountFn& L, const Natural& D) {
  Natural lo = sigma(cx, k, n, L, D);
  if (lo > p) return std::nullopt;
  return std::pair{std::move(lo), p};
}

Natural xi(EvalContext& cx, const Natural& k, const CountFn& f, const Functional& chi,
           const CountFn& mu, const Natural& a) {
  auto stage = cx.stage("xi");
  const Natural j = 2 * k + 1;
  const Natural mj = mu(cx, j);
  const CountFn ft = CountFn::closure(
      "", [mj, f](EvalContext& c, const Natural& m) { return mj + f(c, std::max(mj, m)); },
      f.monotone());
  return std::max(mj, chi(cx, cx.bound(4 * a * (k + 1)), ft));
}

Natural xi_rate(EvalContext& cx, const Natural& k,
                const std::function<Natural(EvalContext&, const Natural&)>& chi, const CountFn& mu,
                const Natural& a) {
  auto stage = cx.stage("xi_rate");
  return std::max(mu(cx, 2 * k + 1), chi(cx, cx.bound(4 * a * (k + 1))));
}

Natural psi(EvalContext& cx, const Natural& k, const CountFn& f, const Functional& xi_fn,
            const Natural& N) {
  auto stage = cx.stage("psi");
  require(N >= 1, "psi requires N >= 1");
  const Natural R = cx.bound(N * N * N * N * (k + 1) * (k + 1));
  const CountFn fplus = shifted(f, 1);
  const CountFn check = CountFn::closure("", [f, fplus, xi_fn, N](EvalContext& c, const Natural& m) {
    const Natural q = c.bound(24 * N * (m + 1) * (m + 1));
    return std::max(f(c, xi_fn(c, q, fplus)), q);
  });
  const Natural x = iterate(check, R)(cx, 0);
  return xi_fn(cx, cx.bound(24 * N * (x + 1) * (x + 1)), fplus);
}

Natural Psi(EvalContext& cx, const Natural& k, const CountFn& f, const Functional& psi_fn,
            const Natural& N, const Natural& c, const CountFn& cmaj) {
  auto stage = cx.stage("Psi");
  const CountFn h = CountFn::closure("", [f, N, c, cmaj](EvalContext& e, const Natural& m) {
    const Natural fm = f(e, m);
    return zeta(e, e.bound((1 + 4 * N) * (fm + 1) - 1), fm, c, cmaj);
  }, f.monotone() && cmaj.monotone());
  return psi_fn(cx, 2 * k + 1, h);
}

Natural Theta(EvalContext& cx, const Natural& k, const CountFn& f, const CountFn& L,
              const Functional& Psi_fn, const CountFn& G, const Natural& D) {
  auto stage = cx.stage("Theta");
  require(D >= 1, "Theta requires D >= 1");
  const Natural k3 = 4 * k + 3;
  const Natural ln = checked_ceil_ln(cx, cx.bound(4 * D * (k + 1)));
  const Natural floor_h = G(cx, k3) + 1;
  const CountFn h = CountFn::closure(
      "", [floor_h, ln](EvalContext&, const Natural& m) { return std::max(m, floor_h) + ln; });
  const CountFn g = CountFn::closure("", [k, f, L, h](EvalContext& c, const Natural& m) {
    return c.bound(4 * (k + 1) * (f(c, L(c, h(c, m)) + 1) + 1));
  }, f.monotone());
  return L(cx, h(cx, Psi_fn(cx, k3, g))) + 1;
}

Natural phi_chi(EvalContext& cx, const Natural& k, const CountFn& f, const CountFn& L,
                const Functional& Psi_fn, const CountFn& G, const Natural& N) {
  auto stage = cx.stage("phi");
  const Natural kk = cx.bound(4 * (k + 1) * (k + 1) - 1);
  const CountFn step = CountFn::closure(
      "", [f](EvalContext& c, const Natural& m) { return m + f(c, m); }, f.monotone());
  return Theta(cx, kk, step, L, Psi_fn, G, cx.bound(4 * N * N));
}

}  // namespace ppa
