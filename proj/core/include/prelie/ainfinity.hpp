#pragma once

#include <memory>
#include <optional>

#include "prelie/hochschild.hpp"

namespace prelie {

/// A-infinity structure: a Maurer-Cartan element mu in W_1 C^1(G).
struct AStructure {
  Cochain mu;

  const GradedGraph& graph() const { return mu.in_graph(); }
  /// No weight-1 part.
  bool minimal() const { return mu.min_weight() >= 2; }
};

AStructure make_astructure(Cochain mu);

/// mu * mu truncated to the window; zero iff A-infinity up to the cutoff.
Cochain validate_astructure(const Cochain& mu, const WeightWindow& win);

/// Strict unit laws: m^1(Id) = 0, m^2 unit laws on both sides, higher m^i
/// vanish on words containing a unit. Checked in the m-convention.
bool strictly_unital(const AStructure& a);

/// Sign flip between the shifted (mu) and unshifted (m) conventions:
/// per input tuple, (-1)^(sum over path positions i >= 1 of i * |input_i|)
/// with 0-based positions and unshifted degrees. Involutive.
Cochain convert_convention(const Cochain& table);

struct AFunctor {
  const AStructure* source = nullptr;
  const AStructure* target = nullptr;
  std::vector<ObjId> object_map;  // source object id -> target object id
  Cochain taylor;                 // inputs over source graph, outputs over target; sdeg 0

  const GradedGraph& source_graph() const { return source->graph(); }
  const GradedGraph& target_graph() const { return target->graph(); }
};

AFunctor identity_functor(const AStructure& a);

/// Checks that every taylor component outputs into hom(F(U_0), F(U_w)).
void check_functor_blocks(const AFunctor& f);

/// LHS - RHS of the A-infinity functor equation, per weight within window.
Cochain functor_residual(const AFunctor& f, const WeightWindow& win);

/// The table of h o B(F) for any table h with inputs over F's target graph:
/// sum over chains of taylor components matching h's input tuple. Computes
/// composition of functors (h = G.taylor), the functor-equation left side
/// (h = mu_B) and precomposition pullbacks of prenaturals.
Cochain pullback_through_functor(const Cochain& h, const AFunctor& f, const WeightWindow& win);

/// (outer o inner), taylor coefficients via the chain expansion.
AFunctor compose_functors(const AFunctor& outer, const AFunctor& inner, const WeightWindow& win);

struct Prenatural {
  const AFunctor* from = nullptr;
  const AFunctor* to = nullptr;
  int degree = 0;     // shifted degree of every component, including eta^0
  Cochain components;  // weight-0 part holds eta^0

  const AStructure& target_structure() const { return *from->target; }
};

/// mu^1 of the functor category applied to eta; specializes to [mu, -] when
/// from = to = Id. Squares to zero for valid endpoint functors.
Prenatural fun_differential(const Prenatural& eta, const WeightWindow& win);

/// mu^i of Fun(A, B) on a chain-ordered list eta_j : F_{j-1} -> F_j.
Prenatural fun_product(const std::vector<const Prenatural*>& etas, const WeightWindow& win);

/// An A-infinity isotopy: identity object map and identity first Taylor
/// coefficient; stored through its higher part F_+ in W_2 C^0.
struct Isotopy {
  const AStructure* base = nullptr;
  Cochain plus;

  AFunctor pack() const;
};

Isotopy make_isotopy(const AStructure& base, Cochain plus);

/// Isotopy functor-equation residual sum_{r>=1} mu{F_+,...,F_+} - F_+ * mu,
/// the curvature of F_+ in the Hochschild A-infinity algebra.
Cochain isotopy_residual(const Isotopy& f, const WeightWindow& win);

struct HomotopyWitness {
  std::shared_ptr<const AFunctor> from, to;  // packed endpoint functors
  Prenatural h;  // degree -1, h^0 = 0, mu^1(h) = G - F within the window
};

/// Solves mu^1_{F,G}(h) = G - F for h weight-by-weight up to the cutoff.
/// Infeasibility at the window is definitive for that window; a returned
/// witness is re-verified before being handed out. Requires a finite window.
std::optional<HomotopyWitness> homotopy_solve(const Isotopy& f, const Isotopy& g,
                                              const WeightWindow& win);

struct OppositeResult {
  std::unique_ptr<GradedGraph> graph;
  AStructure structure;
};

/// Reversed graph with Koszul permutation signs on every component.
OppositeResult opposite(const AStructure& a);

struct GlueResult {
  std::unique_ptr<GradedGraph> graph;
  AStructure structure;
  RestrictionIndex onto_source;  // recovers the functor's source structure
  RestrictionIndex onto_target;  // recovers the functor's target structure
};

/// Upper-triangular gluing D = A cup_F B along an A-infinity functor F with
/// D(b, a) = B(b, F(a)) and D(a, b) = 0.
GlueResult glue(const AFunctor& f, const WeightWindow& win);

}  // namespace prelie
