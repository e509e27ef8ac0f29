#pragma once

// Direct-recursion evaluator for the bound formulas, kept apart from the
// library: plain std::function over cpp_int, no budget, no CountFn.

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>
#include <functional>
#include <stdexcept>
#include <vector>

namespace ref {

using Nat = boost::multiprecision::cpp_int;
using Fn = std::function<Nat(const Nat&)>;
using Functional = std::function<Nat(const Nat& k, const Fn& f)>;

// Guard so a badly chosen instance fails instead of hanging.
inline thread_local long long steps = 0;
inline void tick() {
  if (++steps > 200'000'000LL) throw std::runtime_error("reference step limit");
}

inline Nat max(const Nat& a, const Nat& b) { return a < b ? b : a; }

inline Fn constant(long long c) { return [c](const Nat&) { return Nat(c); }; }
inline Fn identity() { return [](const Nat& n) { return n; }; }
inline Fn affine(long long a, long long b) { return [a, b](const Nat& n) { return a * n + b; }; }
inline Fn table(std::vector<long long> v) {
  return [v](const Nat& n) { return Nat(n >= v.size() ? v.back() : v[static_cast<std::size_t>(n)]); };
}

// f^maj(n) = max_{i <= n} f(i), by brute force.
inline Fn majorize(Fn f) {
  return [f](const Nat& n) {
    Nat best = f(0);
    for (Nat i = 1; i <= n; ++i) {
      tick();
      best = max(best, f(i));
    }
    return best;
  };
}

inline Nat iterate(const Fn& f, const Nat& r, Nat x) {
  for (Nat i = 0; i < r; ++i) {
    tick();
    x = f(x);
  }
  return x;
}

// least m with e^m >= x, from 100-digit floating logarithms
inline Nat ceil_ln(const Nat& x) {
  using F = boost::multiprecision::cpp_bin_float_100;
  if (x < 1) throw std::invalid_argument("ceil_ln of 0");
  if (x == 1) return 0;
  const F l = boost::multiprecision::log(F(x));
  Nat m = static_cast<Nat>(boost::multiprecision::ceil(l));
  // e^m never equals an integer > 1; nudge only if rounding landed on the wrong side
  while (m > 0 && boost::multiprecision::exp(F(m - 1)) >= F(x)) --m;
  while (boost::multiprecision::exp(F(m)) < F(x)) ++m;
  return m;
}

inline Nat pow(const Nat& a, const Nat& e) {
  Nat r = 1;
  for (Nat i = 0; i < e; ++i) r *= a;
  return r;
}

inline Nat zeta(const Nat& k, const Nat& n, const Nat& c, const Fn& cmaj) {
  return cmaj(n) * c * (k + 1) - 1;
}

inline Nat proj(const Nat& k, const Fn& f, const Nat& N) { return iterate(f, N * N * (k + 1), 0); }

inline Nat proj3(const Nat& k, const Fn& f, const Nat& N) {
  const Fn fc = [&](const Nat& m) {
    const Nat q = 24 * N * (m + 1) * (m + 1);
    return max(f(q), q);
  };
  const Nat R = 4 * N * N * N * N * (k + 1) * (k + 1);
  const Nat x = iterate(fc, R, 0) + 1;
  return 24 * N * x * x;
}

inline Nat theta(const Nat& k, const Nat& M, const Nat& t, const Nat& N, const Fn& f) {
  const Nat P = N * (k + 1);
  // r_P = 0, r_i = t + r_{i+1} + f(n_{i+1} + r_{i+1}), n_i = M + i t
  Nat r = 0;
  for (Nat i = P; i > 0; --i) {
    tick();
    const Nat n_next = M + i * t;
    r = t + r + f(n_next + r);
  }
  return M + (P - 1) * t + r;
}

inline Nat R_const(const Nat& a, const Nat& k, const Nat& t) { return t * (2 * t + 1) * pow(a, t) * (k + 1); }

inline Nat varphi(const Nat& k, const Fn& f, const Nat& l, const Nat& t, const Nat& a, const Fn& nu,
                  const Nat& N) {
  const Nat R = R_const(a, k, t);
  const Fn g = [&](const Nat& m) { return t + f(m); };
  const Nat h = max(max(a, l), nu(R - 1));
  return theta(R - 1, h, t, N, g);
}

inline Nat chi_tilde(const Nat& k, const Fn& f, const Nat& a, const Fn& nu, const Nat& N) {
  const Nat t = max(2 * N * a * (k + 1), 1);
  return varphi(k, f, a, t, a, nu, 2 * N);
}

struct Moduli {
  Nat a, c;
  Fn Cmaj, ell, L, Gamma, E;
  Nat N1, N2, N3;
  bool general_nu = false;

  Nat N0() const { return N2 + N3; }
  Nat N() const { return max(2 * N3, N2 + N3); }
  Nat M1() const { return 3 * N2 + 4 * N(); }
  Nat M2() const { return M1() + 2 * (N3 + N()); }
  Nat D() const { return 4 * N() * N(); }
  Fn G() const {
    return [E = E, M2 = M2()](const Nat& k) { return E(M2 * (k + 1)); };
  }
};

inline Nat nu(const Moduli& m, const Nat& k) {
  const Nat N0 = m.N0();
  if (m.general_nu)
    return max(max(m.Gamma(10 * m.a * m.c * N0 * (k + 1)), m.ell(10 * m.a * (N0 + m.N1 + m.N3) * (k + 1))),
               m.E(5 * m.a * (k + 1)) + 1);
  return max(m.ell(8 * m.a * (N0 + m.N1 + m.N3) * (k + 1)), m.E(4 * m.a * (k + 1)) + 1);
}

inline Nat mu(const Moduli& m, const Nat& k) {
  return max(m.ell(4 * m.a * (k + 1) * (m.N0() + m.N3)), m.E(4 * m.a * (k + 1)) + 1);
}

inline Functional chi0(const Moduli& m) {
  return [m](const Nat& k, const Fn& f) {
    const Fn nu_fn = [&](const Nat& r) { return nu(m, r); };
    return chi_tilde(k, f, m.a, nu_fn, 2 * m.a * m.N0() + m.N1 + m.N3);
  };
}

// xi_chi(k, f) = max{mu(2k+1), chi(4a(k+1), f~_{2k+1})}, f~_j(n) = mu(j) + f(max{mu(j), n})
inline Nat xi(const Nat& k, const Fn& f, const Functional& chi, const Fn& mu_fn, const Nat& a) {
  const Nat j = 2 * k + 1;
  const Nat mj = mu_fn(j);
  const Fn ft = [&](const Nat& n) { return mj + f(max(mj, n)); };
  return max(mj, chi(4 * a * (k + 1), ft));
}

inline Nat psi(const Nat& k, const Fn& f, const Functional& xi_fn, const Nat& N) {
  const Fn f1 = [&](const Nat& m) { return f(m) + 1; };
  const Fn g = [&](const Nat& m) { return f(xi_fn(m, f1)); };
  const Fn gc = [&](const Nat& m) {
    const Nat q = 24 * N * (m + 1) * (m + 1);
    return max(g(q), q);
  };
  const Nat R = N * N * N * N * (k + 1) * (k + 1);
  const Nat x = iterate(gc, R, 0) + 1;
  return xi_fn(24 * N * x * x, f1);
}

inline Nat Psi(const Nat& k, const Fn& f, const Functional& psi_fn, const Nat& N, const Nat& c,
               const Fn& cmaj) {
  const Fn h = [&](const Nat& m) { return zeta((1 + 4 * N) * (f(m) + 1) - 1, f(m), c, cmaj); };
  return psi_fn(2 * k + 1, h);
}

inline Nat sigma(const Nat& k, const Nat& n, const Fn& L, const Nat& D) {
  return L(n + ceil_ln(4 * D * (k + 1))) + 1;
}

inline Nat Theta(const Nat& k, const Fn& f, const Fn& L, const Functional& Psi_fn, const Fn& G,
                 const Nat& D) {
  const Nat k3 = 4 * k + 3;
  const Nat lnD = ceil_ln(4 * D * (k + 1));
  const Nat g0 = G(k3) + 1;
  const Fn h = [&](const Nat& m) { return max(m, g0) + lnD; };
  const Fn g = [&](const Nat& m) { return 4 * (k + 1) * (f(L(h(m)) + 1) + 1); };
  return L(h(Psi_fn(k3, g))) + 1;
}

inline Nat phi_chi(const Nat& k, const Fn& f, const Fn& L, const Functional& Psi_fn, const Fn& G,
                   const Nat& N) {
  const Fn mf = [&](const Nat& m) { return m + f(m); };
  return Theta(4 * (k + 1) * (k + 1) - 1, mf, L, Psi_fn, G, 4 * N * N);
}

}  // namespace ref
