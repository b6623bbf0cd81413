#pragma once

#include "prelie/cochain.hpp"

namespace prelie {

/// Left unit of the brace algebra C(G): the identity of G[1] as the weight-1
/// cochain with identity components, shifted degree 0.
Cochain brace_unit(const GradedGraph& g);

/// The weight-0 cochain picking out the strict identity morphisms; the unit
/// of the cup product. Requires unit metadata, shifted degree -1.
Cochain cup_unit(const GradedGraph& g);

/// The brace f{g_1,...,g_r}: sum over all insertions of the g_j, in order,
/// into distinct slots of f with identity maps on the remaining slots.
/// Koszul signs follow the path-order storage convention: g_j picks up
/// (-1)^(|g_j| * s) where s is the total shifted degree of the inputs
/// standing before its block in the spliced word.
///
/// Component weights obey w(result) = w(f) + sum(w(g_j) - 1); the result
/// cutoff is derived from the inputs' cutoffs through that relation, so a
/// truncated input can only poison weights the bookkeeping marks unknown.
Cochain brace(const Cochain& f, const std::vector<const Cochain*>& gs, const WeightWindow& win);

/// Composition product f * g = f{g}. Left unit law: brace_unit * v = v.
Cochain star(const Cochain& f, const Cochain& g, const WeightWindow& win);

/// [f, g] = f*g - (-1)^(|f||g|) g*f, shifted degrees.
Cochain gerstenhaber_bracket(const Cochain& f, const Cochain& g, const WeightWindow& win);

/// Symmetrized braces: sum over permutations with Koszul signs.
Cochain symmetric_brace(const Cochain& f, const std::vector<const Cochain*>& gs,
                        const WeightWindow& win);

/// Cup product relative to a Maurer-Cartan element mu: mu{f, g}.
Cochain cup(const Cochain& mu, const Cochain& f, const Cochain& g, const WeightWindow& win);

/// Restriction along a full-subgraph inclusion; a brace-algebra morphism.
Cochain restrict_cochain(const Cochain& f, const RestrictionIndex& idx);

/// True iff every component with a unit basis id among its inputs vanishes.
bool normalized_check(const Cochain& f);

}  // namespace prelie
