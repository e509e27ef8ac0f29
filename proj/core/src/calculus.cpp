#include "ppa/calculus.hpp"

#include <algorithm>

namespace ppa {

BoundCalculus::BoundCalculus(Moduli moduli, Budget budget)
    : moduli_(std::move(moduli)),
      ctx_(derive_constants(moduli_)),
      budget_(budget),
      nu_(nu_fn(moduli_, moduli_.nu_form)),
      mu_(mu_fn(moduli_)) {
  moduli_.check();
}

Functional BoundCalculus::chi0_functional() const {
  const Natural a = moduli_.a;
  const Natural bound = 2 * a * ctx_.N0 + moduli_.N1 + moduli_.N3;
  return [a, bound, nu = nu_](EvalContext& cx, const Natural& k, const CountFn& f) {
    auto stage = cx.stage("chi0");
    return chi_tilde(cx, k, f, a, nu, bound);
  };
}

Functional BoundCalculus::xi_functional(Functional chi) const {
  return [chi = std::move(chi), mu = mu_, a = moduli_.a](EvalContext& cx, const Natural& k,
                                                         const CountFn& f) {
    return ppa::xi(cx, k, f, chi, mu, a);
  };
}

Functional BoundCalculus::psi_functional(Functional xi_fn) const {
  return [xi_fn = std::move(xi_fn), N = ctx_.N](EvalContext& cx, const Natural& k, const CountFn& f) {
    return ppa::psi(cx, k, f, xi_fn, N);
  };
}

Functional BoundCalculus::Psi_functional(Functional psi_fn) const {
  return [psi_fn = std::move(psi_fn), N = ctx_.N, c = moduli_.c, cmaj = moduli_.Cmaj](
             EvalContext& cx, const Natural& k, const CountFn& f) {
    return ppa::Psi(cx, k, f, psi_fn, N, c, cmaj);
  };
}

Functional BoundCalculus::Psi_chain(Functional chi) const {
  return Psi_functional(psi_functional(xi_functional(std::move(chi))));
}

BoundValue BoundCalculus::nu(const Natural& k) const {
  return evaluate(budget_, [&](EvalContext& cx) { return ppa::nu(cx, moduli_, k, moduli_.nu_form); });
}

BoundValue BoundCalculus::mu(const Natural& k) const {
  return evaluate(budget_, [&](EvalContext& cx) { return ppa::mu(cx, moduli_, k); });
}

BoundValue BoundCalculus::chi0(const Natural& k, const CountFn& f) const {
  const Functional chi = chi0_functional();
  return evaluate(budget_, [&](EvalContext& cx) { return chi(cx, k, f); });
}

BoundValue BoundCalculus::xi(const Natural& k, const CountFn& f) const {
  return xi(k, f, chi0_functional());
}

BoundValue BoundCalculus::xi(const Natural& k, const CountFn& f, const Functional& chi) const {
  const Functional fn = xi_functional(chi);
  return evaluate(budget_, [&](EvalContext& cx) { return fn(cx, k, f); });
}

BoundValue BoundCalculus::psi(const Natural& k, const CountFn& f) const {
  return psi(k, f, chi0_functional());
}

BoundValue BoundCalculus::psi(const Natural& k, const CountFn& f, const Functional& chi) const {
  const Functional fn = psi_functional(xi_functional(chi));
  return evaluate(budget_, [&](EvalContext& cx) { return fn(cx, k, f); });
}

BoundValue BoundCalculus::Psi(const Natural& k, const CountFn& f) const {
  return Psi(k, f, chi0_functional());
}

BoundValue BoundCalculus::Psi(const Natural& k, const CountFn& f, const Functional& chi) const {
  const Functional fn = Psi_chain(chi);
  return evaluate(budget_, [&](EvalContext& cx) { return fn(cx, k, f); });
}

BoundValue BoundCalculus::Theta(const Natural& k, const CountFn& f) const {
  const Functional Psi_fn = Psi_chain(chi0_functional());
  return evaluate(budget_, [&](EvalContext& cx) {
    return ppa::Theta(cx, k, f, moduli_.L, Psi_fn, ctx_.G, ctx_.D);
  });
}

BoundValue BoundCalculus::phi_chi(const Natural& k, const CountFn& f, const Functional& chi) const {
  return phi_with_Psi(k, f, Psi_chain(chi));
}

BoundValue BoundCalculus::phi_with_Psi(const Natural& k, const CountFn& f,
                                       const Functional& Psi_fn) const {
  return evaluate(budget_, [&](EvalContext& cx) {
    return ppa::phi_chi(cx, k, f, moduli_.L, Psi_fn, ctx_.G, ctx_.N);
  });
}

BoundValue BoundCalculus::phi(const Natural& k, const CountFn& f) const {
  return phi_chi(k, majorize(f), chi0_functional());
}

BoundValue BoundCalculus::dz_bound(const Natural& k, const CountFn& f) const {
  return chi0(k, f);
}

BoundValue BoundCalculus::jn_bound(const Natural& k, const CountFn& f) const {
  const Functional chi = chi0_functional();
  return evaluate(budget_, [&](EvalContext& cx) {
    auto stage = cx.stage("jn_bound");
    const Natural mk = mu_(cx, k);
    const CountFn ft = CountFn::closure(
        "", [mk, f](EvalContext& c, const Natural& m) { return mk + f(c, std::max(mk, m)); },
        f.monotone());
    return std::max(mk, chi(cx, cx.bound(2 * moduli_.a * (k + 1)), ft));
  });
}

BoundValue BoundCalculus::j_bound(const Natural& k, const CountFn& f) const { return xi(k, f); }

}  // namespace ppa
