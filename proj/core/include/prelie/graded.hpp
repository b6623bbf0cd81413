#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "prelie/rational.hpp"

namespace prelie {

using ObjId = std::uint32_t;
using BasisId = std::uint32_t;

/// Sign of a graded map of degree `passed_degree` moving past elements whose
/// degrees are `passing_degrees`: (-1)^(passed * sum(passing)).
int koszul_sign(std::span<const int> passing_degrees, int passed_degree);

/// Degree in C(G) of an elementary function of the given weight whose
/// underlying unshifted map degree is `map_degree`: weight - 1 + map_degree.
inline int shifted_degree(int weight, int map_degree) { return weight - 1 + map_degree; }

/// Koszul sign of the permutation sending (x_1,...,x_n) to
/// (x_{perm[0]+1},...,x_{perm[n-1]+1}) where x_i has degree degrees[i].
int koszul_permutation_sign(std::span<const int> degrees, std::span<const std::size_t> perm);

struct BasisElement {
  std::string id;
  int degree = 0;  // unshifted internal degree
  ObjId source = 0;
  ObjId target = 0;
  bool unit = false;
};

struct SignedTerm {
  BasisId basis;
  Rational coefficient;

  friend bool operator==(const SignedTerm& a, const SignedTerm& b) {
    return a.basis == b.basis && a.coefficient == b.coefficient;
  }
};

/// Sorted-by-basis linear combination with no zero coefficients.
using TermList = std::vector<SignedTerm>;

void term_add(TermList& acc, BasisId basis, const Rational& coefficient);
void term_axpy(TermList& acc, const Rational& scale, const TermList& other);
TermList term_scaled(const TermList& terms, const Rational& scale);
bool term_equal(const TermList& a, const TermList& b);

}  // namespace prelie
