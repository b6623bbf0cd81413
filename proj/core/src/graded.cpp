#include "prelie/graded.hpp"

#include <algorithm>

namespace prelie {

int koszul_sign(std::span<const int> passing_degrees, int passed_degree) {
  long long sum = 0;
  for (int d : passing_degrees) sum += d;
  return ((sum * passed_degree) % 2 != 0) ? -1 : 1;
}

int koszul_permutation_sign(std::span<const int> degrees, std::span<const std::size_t> perm) {
  // Product over inversions (i < j, perm[i] > perm[j]) of (-1)^(d_i * d_j).
  int sign = 1;
  for (std::size_t i = 0; i < perm.size(); ++i)
    for (std::size_t j = i + 1; j < perm.size(); ++j)
      if (perm[i] > perm[j] && (degrees[perm[i]] % 2 != 0) && (degrees[perm[j]] % 2 != 0))
        sign = -sign;
  return sign;
}

void term_add(TermList& acc, BasisId basis, const Rational& coefficient) {
  if (coefficient.is_zero()) return;
  auto it = std::lower_bound(acc.begin(), acc.end(), basis,
                             [](const SignedTerm& t, BasisId b) { return t.basis < b; });
  if (it != acc.end() && it->basis == basis) {
    it->coefficient += coefficient;
    if (it->coefficient.is_zero()) acc.erase(it);
  } else {
    acc.insert(it, SignedTerm{basis, coefficient});
  }
}

void term_axpy(TermList& acc, const Rational& scale, const TermList& other) {
  if (scale.is_zero()) return;
  for (const auto& t : other) term_add(acc, t.basis, scale * t.coefficient);
}

TermList term_scaled(const TermList& terms, const Rational& scale) {
  TermList out;
  if (scale.is_zero()) return out;
  out.reserve(terms.size());
  for (const auto& t : terms) out.push_back({t.basis, t.coefficient * scale});
  return out;
}

bool term_equal(const TermList& a, const TermList& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].basis != b[i].basis || a[i].coefficient != b[i].coefficient) return false;
  return true;
}

}  // namespace prelie
