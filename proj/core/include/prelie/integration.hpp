#pragma once

#include "prelie/hochschild.hpp"

namespace prelie {

/// A group-like element 1 + plus of the completed brace algebra, with plus of
/// shifted degree 0 supported in weight >= 2. The unit itself is plus = 0.
struct GroupLike {
  Cochain plus;
};

GroupLike make_group_like(Cochain plus);

/// exp(v) = sum 1/r! v^r with v^(r+1) = v^r * v. Each factor raises the
/// minimal weight, so a window of cutoff W needs at most W - 1 powers.
GroupLike exp_prelie(const Cochain& v, const WeightWindow& win);

/// Pre-Lie logarithm, computed by weight-triangular inversion of exp; the
/// displayed pre-Magnus coefficients are test oracles, not the algorithm.
Cochain log_prelie(const GroupLike& g, const WeightWindow& win);

/// u (.) (1 + v) = sum_n 1/n! u<v,...,v>_n. When |v| is even this equals the
/// factorial-free brace form sum_n u{v,...,v}_n, which is the path taken.
Cochain odot(const Cochain& u, const GroupLike& g, const WeightWindow& win);

/// Same, via the symmetrized braces with 1/n!; kept as an independent route.
Cochain odot_symmetric(const Cochain& u, const GroupLike& g, const WeightWindow& win);

/// Group multiplication of group-like elements.
GroupLike odot_group(const GroupLike& a, const GroupLike& b, const WeightWindow& win);

/// Inverse for (.), realized as exp(-log g).
GroupLike odot_inverse(const GroupLike& g, const WeightWindow& win);

/// Dynkin form of the Baker-Campbell-Hausdorff product:
/// exp(u) (.) exp(v) = exp(bch(u, v)) within the window. Bracket words whose
/// minimal weight exceeds the window are never enumerated.
Cochain bch(const Cochain& u, const Cochain& v, const WeightWindow& win);

/// exp(ad_v)(w) - (exp(v) * w) (.) exp(-v), truncated; zero in any complete
/// pre-Lie algebra.
Cochain exp_ad_check(const Cochain& v, const Cochain& w, const WeightWindow& win);

}  // namespace prelie
