#pragma once

#include "ppa/bounds.hpp"
#include "ppa/moduli.hpp"

namespace ppa {

/// The bound calculus instantiated with concrete moduli.
///
/// The composite bounds are parameterized by an inner functional chi, as
/// in their general statements; the defaults use chi0, the bound produced
/// by the Suzuki-type lemma. Supplying another chi (for example one known
/// for a special class of problems) keeps every other formula unchanged.
class BoundCalculus {
 public:
  explicit BoundCalculus(Moduli moduli, Budget budget = Budget::from_env());

  const Moduli& moduli() const { return moduli_; }
  const BoundContext& context() const { return ctx_; }
  const Budget& budget() const { return budget_; }

  // Functionals for composition inside one evaluation.
  Functional chi0_functional() const;
  Functional xi_functional(Functional chi) const;
  Functional psi_functional(Functional xi_fn) const;
  Functional Psi_functional(Functional psi_fn) const;
  /// k, f -> Psi_chi(k, f) for the given chi.
  Functional Psi_chain(Functional chi) const;

  BoundValue nu(const Natural& k) const;
  BoundValue mu(const Natural& k) const;
  BoundValue chi0(const Natural& k, const CountFn& f) const;

  BoundValue xi(const Natural& k, const CountFn& f) const;
  BoundValue xi(const Natural& k, const CountFn& f, const Functional& chi) const;
  BoundValue psi(const Natural& k, const CountFn& f) const;
  BoundValue psi(const Natural& k, const CountFn& f, const Functional& chi) const;
  BoundValue Psi(const Natural& k, const CountFn& f) const;
  BoundValue Psi(const Natural& k, const CountFn& f, const Functional& chi) const;

  /// Theta(k, f, L, Psi_chi0, G, D).
  BoundValue Theta(const Natural& k, const CountFn& f) const;

  /// phi_chi(k, f) with Psi_chi built from chi.
  BoundValue phi_chi(const Natural& k, const CountFn& f, const Functional& chi) const;
  /// phi_chi(k, f) with an explicitly supplied Psi.
  BoundValue phi_with_Psi(const Natural& k, const CountFn& f, const Functional& Psi_fn) const;
  /// phi(k, f) = phi_chi0(k, f^maj).
  BoundValue phi(const Natural& k, const CountFn& f) const;

  // Asymptotic regularity bounds: |z_{m+1} - z_m|, |J_m z_m - z_m| and
  // |J z_m - z_m| are <= 1/(k+1) on a window [n, n+f(n)] with n below these.
  BoundValue dz_bound(const Natural& k, const CountFn& f) const;
  BoundValue jn_bound(const Natural& k, const CountFn& f) const;
  BoundValue j_bound(const Natural& k, const CountFn& f) const;

 private:
  Moduli moduli_;
  BoundContext ctx_;
  Budget budget_;
  CountFn nu_;
  CountFn mu_;
};

}  // namespace ppa
