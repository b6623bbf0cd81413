#pragma once

#include "prelie/cohomology.hpp"
#include "prelie/integration.hpp"

namespace prelie {

/// Curvature of zeta in the Hochschild A-infinity algebra of `a`:
/// kappa(zeta) = [mu, zeta] + sum_{i >= 2} mu{zeta, ..., zeta}. The arity is
/// bounded by the top weight of mu, so the sum is finite.
Cochain curvature(const AStructure& a, const Cochain& zeta, const WeightWindow& win);

struct ShuffleTerm {
  std::vector<BasisId> word;
  int sign = 1;
};

/// Signed (r, s)-shuffles of two words; Koszul crossings use the supplied
/// degrees. The spec-facing overload reads the stored (unshifted) degrees;
/// tensor-algebra call sites pass degrees shifted by one.
std::vector<ShuffleTerm> shuffle_words(const std::vector<BasisId>& u,
                                       const std::vector<int>& u_degrees,
                                       const std::vector<BasisId>& v,
                                       const std::vector<int>& v_degrees);
std::vector<ShuffleTerm> shuffle(const GradedGraph& g, const std::vector<BasisId>& u,
                                 const std::vector<BasisId>& v);

/// The Hochschild algebra of a structure, materialized as a one-object
/// A-infinity structure on the elementary slots of weight <= cutoff.
/// Truncation is a quotient: operations never lower the weight.
struct HochschildAlgebra {
  std::unique_ptr<GradedGraph> graph;
  AStructure structure;
  const AStructure* base = nullptr;
  int weight_cutoff = 0;
  std::vector<std::pair<ComponentKey, BasisId>> slots;  // per graph basis id
  std::vector<int> filtration;                          // weight per basis id

  /// Expands a base-side cochain into slot coordinates (drops weights beyond
  /// the cutoff, consistent with the quotient).
  TermList coordinates(const Cochain& c) const;
  Cochain element(BasisId slot) const;
};

HochschildAlgebra hochschild_algebra(const AStructure& a, int weight_cutoff);

struct TwistResult {
  std::unique_ptr<GradedGraph> graph;
  AStructure structure;
};

/// The twisted algebra C^zeta on the materialized Hochschild algebra:
/// mu^i twisted by shuffling copies of zeta into the arguments.
TwistResult twist_algebra(const HochschildAlgebra& c, const Cochain& zeta,
                          const WeightWindow& win);

/// The twisted right module C^[zeta], encoded as a two-object A-infinity
/// structure (module generator object + algebra object); its validation
/// residual is exactly the module-equation residual.
TwistResult twist_module(const HochschildAlgebra& c, const Cochain& zeta,
                         const WeightWindow& win);

/// Unshifted dg-algebra view of the Hochschild complex of a dg structure
/// (mu supported in weights 1 and 2): associative unital cup product,
/// Leibniz differential, and the translation of Maurer-Cartan elements
/// between the shifted curvature and the dg equation d(z) + z.z = 0.
struct DgView {
  const AStructure* base = nullptr;

  Cochain product(const Cochain& f, const Cochain& g, const WeightWindow& win) const;
  Cochain differential(const Cochain& f) const;
  Cochain unit() const;
  Cochain commutator(const Cochain& f, const Cochain& g, const WeightWindow& win) const;
  /// Involutive translation between shifted MC elements and dg MC elements.
  Cochain mc_dictionary(const Cochain& zeta) const;
  /// dg curvature d(z) + z.z of a translated element.
  Cochain dg_curvature(const Cochain& zeta_dg, const WeightWindow& win) const;
};

DgView dg_view(const AStructure& a);

struct GaugeWitness {
  Cochain c, d, u, v;
};

struct GaugeResiduals {
  Cochain eq_c, eq_d, eq_u, eq_v;
  bool zero() const { return eq_c.zero() && eq_d.zero() && eq_u.zero() && eq_v.zero(); }
};

/// The four strict homotopy gauge equations for dg ambients, evaluated in the
/// dg view; dg gauge equivalence is the sub-case u = v = 0 with c invertible.
GaugeResiduals gauge_check_dg(const AStructure& a, const Cochain& zeta, const Cochain& xi,
                              const GaugeWitness& w, const WeightWindow& win);

/// Classical gauge action e^u.xi for dg ambients; u has shifted degree -1 and
/// filtration >= 1, the result is Maurer-Cartan within the window.
Cochain gauge_action(const AStructure& a, const Cochain& u, const Cochain& xi,
                     const WeightWindow& win);

/// The invertible gauge element c = sum u^n / n! (cup powers).
Cochain gauge_element(const AStructure& a, const Cochain& u, const WeightWindow& win);

/// Polynomial forms in t and t dt with cochain coefficients.
struct PolynomialPath {
  std::map<int, Cochain> t_part;   // coefficient of t^k
  std::map<int, Cochain> dt_part;  // coefficient of t^k dt
  int t_cutoff = 0;
};

struct QuillenPair {
  PolynomialPath x;       // t-polynomial of MC elements
  PolynomialPath lambda;  // dt-coefficient
};

/// The explicit Quillen homotopy from a degree -1 polynomial path g with
/// d(g) in W_2: f = d(g), x = exp(f) - 1, lambda = exp(f) * g.
QuillenPair quillen_homotopy_build(const AStructure& a, const PolynomialPath& g,
                                   const WeightWindow& win);

struct QuillenResiduals {
  PolynomialPath ode;  // dx/dt - mu^1(lambda) - sum_i mu^i(sh(x^(i-1), lambda))
  Cochain mc_at_0, mc_at_1;
  bool zero() const;
};

QuillenResiduals quillen_verify(const AStructure& a, const QuillenPair& pair,
                                const WeightWindow& win);

enum class PushPull { push, pull };

/// Post/precomposition chain maps on relative Hochschild complexes
/// C(A, B, F) = Fun(A, B)(F, F).
struct RelativeComplexMap {
  PushPull direction = PushPull::push;
  const AFunctor* functor = nullptr;

  Prenatural apply(const Prenatural& eta, const WeightWindow& win) const;
};

RelativeComplexMap relative_pushpull(const AFunctor& f, PushPull direction);

}  // namespace prelie
