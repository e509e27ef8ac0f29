#pragma once

#include <functional>
#include <optional>
#include <utility>

#include "ppa/countfn.hpp"

namespace ppa {

/// A bound that takes a precision k and a counterfunction f, such as chi,
/// xi, psi or Psi. Evaluated inside the caller's budget.
using Functional = std::function<Natural(EvalContext&, const Natural& k, const CountFn& f)>;

// Formula evaluators. Each runs inside the caller's EvalContext, reports
// itself as the budget stage, and throws BudgetExceededError when the
// budget runs out. Wrap a call in evaluate() to obtain a BoundValue.
// Preconditions are checked and raise std::invalid_argument.

/// C(n) * c * (k+1) - 1. Requires C(n) * c >= 1.
Natural zeta(EvalContext& cx, const Natural& k, const Natural& n, const Natural& c,
             const CountFn& cmaj);

/// f^(N^2 (k+1))(0). Requires N >= 1.
Natural proj_bound(EvalContext& cx, const Natural& k, const CountFn& f, const Natural& N);

/// 24N (fc^(R)(0) + 1)^2 with R = 4 N^4 (k+1)^2 and
/// fc(m) = max{f(24N(m+1)^2), 24N(m+1)^2}. Requires N >= 1.
Natural proj3_bound(EvalContext& cx, const Natural& k, const CountFn& f, const Natural& N);

/// M + (P-1) t + r_0 where P = N(k+1), n_i = M + i t, r_P = 0 and
/// r_i = t + r_{i+1} + f(n_{i+1} + r_{i+1}). Requires t, N >= 1.
Natural theta(EvalContext& cx, const Natural& k, const Natural& M, const Natural& t,
              const Natural& N, const CountFn& f);

/// t (2t+1) a^t (k+1). Requires a, t >= 1.
Natural R_const(EvalContext& cx, const Natural& a, const Natural& k, const Natural& t);

/// theta(R-1, h(R-1), t, N, g) with R = R_const(a, k, t), g(m) = t + f(m)
/// and h(r) = max{a, l, nu(r)}.
Natural varphi_suzuki1(EvalContext& cx, const Natural& k, const CountFn& f, const Natural& l,
                       const Natural& t, const Natural& a, const CountFn& nu,
                       const Natural& N);

/// varphi_suzuki1(k, f, a, t, a, nu, 2N) with t = max{2Na(k+1), 1}.
/// Requires N >= 1.
Natural chi_tilde(EvalContext& cx, const Natural& k, const CountFn& f, const Natural& a,
                  const CountFn& nu, const Natural& N);

/// L(n + ceil(ln(4D(k+1)))) + 1. Requires D >= 1.
Natural sigma(EvalContext& cx, const Natural& k, const Natural& n, const CountFn& L,
              const Natural& D);

/// The interval [sigma(k, n), p], or nothing when sigma(k, n) > p.
std::optional<std::pair<Natural, Natural>> qtxu_sigma_window(EvalContext& cx, const Natural& k,
                                                             const Natural& n, const Natural& p,
                                                             const CountFn& L, const Natural& D);

/// max{mu(2k+1), chi(4a(k+1), ft)} with ft(m) = mu(2k+1) + f(max{mu(2k+1), m}).
Natural xi(EvalContext& cx, const Natural& k, const CountFn& f, const Functional& chi,
           const CountFn& mu, const Natural& a);

/// max{mu(2k+1), chi(4a(k+1))} for a chi that ignores its counterfunction.
Natural xi_rate(EvalContext& cx, const Natural& k, const std::function<Natural(EvalContext&, const Natural&)>& chi,
                const CountFn& mu, const Natural& a);

/// xi(24N(gc^(R)(0)+1)^2, f+1) with R = N^4 (k+1)^2, g(m) = f(xi(m, f+1)),
/// gc(m) = max{g(24N(m+1)^2), 24N(m+1)^2}; f+1 is m -> f(m)+1.
/// Requires N >= 1.
Natural psi(EvalContext& cx, const Natural& k, const CountFn& f, const Functional& xi_fn,
            const Natural& N);

/// psi(2k+1, h) with h(m) = zeta((1+4N)(f(m)+1) - 1, f(m)).
Natural Psi(EvalContext& cx, const Natural& k, const CountFn& f, const Functional& psi_fn,
            const Natural& N, const Natural& c, const CountFn& cmaj);

/// L(h(Psi(4k+3, g))) + 1 with h(m) = max{m, G(4k+3)+1} + ceil(ln(4D(k+1)))
/// and g(m) = 4(k+1)(f(L(h(m))+1)+1). Requires D >= 1.
Natural Theta(EvalContext& cx, const Natural& k, const CountFn& f, const CountFn& L,
              const Functional& Psi_fn, const CountFn& G, const Natural& D);

/// Theta(4(k+1)^2 - 1, m -> m + f(m), L, Psi, G, 4N^2).
Natural phi_chi(EvalContext& cx, const Natural& k, const CountFn& f, const CountFn& L,
                const Functional& Psi_fn, const CountFn& G, const Natural& N);

}  // namespace ppa
