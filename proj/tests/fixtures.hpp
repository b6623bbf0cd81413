#pragma once

#include <memory>
#include <random>
#include <string>
#include <vector>

#include "prelie/ainfinity.hpp"

namespace prelie::testing {

struct Fixture {
  std::string name;
  std::unique_ptr<GradedGraph> graph;
  AStructure a;
};

inline BasisId bid(const GradedGraph& g, const std::string& id) { return *g.find_basis(id); }

/// Adds an m-convention structure table entry from named basis inputs.
inline void add_op(Cochain& m, const GradedGraph& g, const std::vector<std::string>& inputs,
                   const std::vector<std::pair<std::string, Rational>>& out) {
  ComponentKey key;
  for (const auto& id : inputs) {
    BasisId b = bid(g, id);
    if (key.objects.empty()) key.objects.push_back(g.basis(b).source);
    key.objects.push_back(g.basis(b).target);
    key.inputs.push_back(b);
  }
  for (const auto& [id, c] : out) m.add_term(key, bid(g, id), c);
}

inline Fixture make_lambda() {
  auto g = std::make_unique<GradedGraph>();
  g->add_object("pt");
  g->add_basis("u", "pt", "pt", 0, true);
  g->add_basis("eps", "pt", "pt", 1);
  Cochain m(*g, 1);
  add_op(m, *g, {"u", "u"}, {{"u", 1}});
  add_op(m, *g, {"u", "eps"}, {{"eps", 1}});
  add_op(m, *g, {"eps", "u"}, {{"eps", 1}});
  AStructure a = make_astructure(convert_convention(m));
  return Fixture{"lambda", std::move(g), std::move(a)};
}

inline Fixture make_kronecker() {
  auto g = std::make_unique<GradedGraph>();
  g->add_object("v1");
  g->add_object("v2");
  g->add_basis("e1", "v1", "v1", 0, true);
  g->add_basis("e2", "v2", "v2", 0, true);
  g->add_basis("a", "v1", "v2", 0);
  g->add_basis("b", "v1", "v2", 0);
  Cochain m(*g, 1);
  add_op(m, *g, {"e1", "e1"}, {{"e1", 1}});
  add_op(m, *g, {"e2", "e2"}, {{"e2", 1}});
  add_op(m, *g, {"e1", "a"}, {{"a", 1}});
  add_op(m, *g, {"a", "e2"}, {{"a", 1}});
  add_op(m, *g, {"e1", "b"}, {{"b", 1}});
  add_op(m, *g, {"b", "e2"}, {{"b", 1}});
  AStructure a = make_astructure(convert_convention(m));
  return Fixture{"kronecker", std::move(g), std::move(a)};
}

/// Graded gentle algebra on 1 <-> 2 with |al| = 0, |be| = 1, relation
/// "be then al" = 0; the surviving loop ga = "al then be" sits at vertex 1.
inline Fixture make_gentle_b() {
  auto g = std::make_unique<GradedGraph>();
  g->add_object("v1");
  g->add_object("v2");
  g->add_basis("e1", "v1", "v1", 0, true);
  g->add_basis("e2", "v2", "v2", 0, true);
  g->add_basis("al", "v1", "v2", 0);
  g->add_basis("be", "v2", "v1", 1);
  g->add_basis("ga", "v1", "v1", 1);
  Cochain m(*g, 1);
  add_op(m, *g, {"e1", "e1"}, {{"e1", 1}});
  add_op(m, *g, {"e2", "e2"}, {{"e2", 1}});
  add_op(m, *g, {"e1", "al"}, {{"al", 1}});
  add_op(m, *g, {"al", "e2"}, {{"al", 1}});
  add_op(m, *g, {"e2", "be"}, {{"be", 1}});
  add_op(m, *g, {"be", "e1"}, {{"be", 1}});
  add_op(m, *g, {"e1", "ga"}, {{"ga", 1}});
  add_op(m, *g, {"ga", "e1"}, {{"ga", 1}});
  add_op(m, *g, {"al", "be"}, {{"ga", 1}});
  AStructure a = make_astructure(convert_convention(m));
  return Fixture{"gentle_b", std::move(g), std::move(a)};
}

inline Fixture make_dual_numbers() {
  auto g = std::make_unique<GradedGraph>();
  g->add_object("pt");
  g->add_basis("u", "pt", "pt", 0, true);
  g->add_basis("x", "pt", "pt", 0);
  Cochain m(*g, 1);
  add_op(m, *g, {"u", "u"}, {{"u", 1}});
  add_op(m, *g, {"u", "x"}, {{"x", 1}});
  add_op(m, *g, {"x", "u"}, {{"x", 1}});
  AStructure a = make_astructure(convert_convention(m));
  return Fixture{"dual_numbers", std::move(g), std::move(a)};
}

/// Three-object strictly unital dg category: f: P->Q, g: Q->R, h: P->R in
/// degree 0 with "f then g" = h, and s: P->R of degree -1 with d(s) = h.
inline Fixture make_glue3() {
  auto g = std::make_unique<GradedGraph>();
  g->add_object("P");
  g->add_object("Q");
  g->add_object("R");
  g->add_basis("uP", "P", "P", 0, true);
  g->add_basis("uQ", "Q", "Q", 0, true);
  g->add_basis("uR", "R", "R", 0, true);
  g->add_basis("f", "P", "Q", 0);
  g->add_basis("g", "Q", "R", 0);
  g->add_basis("h", "P", "R", 0);
  g->add_basis("s", "P", "R", -1);
  Cochain m(*g, 1);
  add_op(m, *g, {"s"}, {{"h", 1}});
  add_op(m, *g, {"uP", "uP"}, {{"uP", 1}});
  add_op(m, *g, {"uQ", "uQ"}, {{"uQ", 1}});
  add_op(m, *g, {"uR", "uR"}, {{"uR", 1}});
  add_op(m, *g, {"uP", "f"}, {{"f", 1}});
  add_op(m, *g, {"f", "uQ"}, {{"f", 1}});
  add_op(m, *g, {"uQ", "g"}, {{"g", 1}});
  add_op(m, *g, {"g", "uR"}, {{"g", 1}});
  add_op(m, *g, {"uP", "h"}, {{"h", 1}});
  add_op(m, *g, {"h", "uR"}, {{"h", 1}});
  add_op(m, *g, {"uP", "s"}, {{"s", 1}});
  add_op(m, *g, {"s", "uR"}, {{"s", 1}});
  add_op(m, *g, {"f", "g"}, {{"h", 1}});
  AStructure a = make_astructure(convert_convention(m));
  return Fixture{"glue3", std::move(g), std::move(a)};
}

inline std::vector<Fixture> all_fixtures() {
  std::vector<Fixture> v;
  v.push_back(make_kronecker());
  v.push_back(make_gentle_b());
  v.push_back(make_lambda());
  v.push_back(make_dual_numbers());
  v.push_back(make_glue3());
  return v;
}

/// e_m on the Witt fixture: eps^(m+1) -> eps, weight m+1, shifted degree 0.
inline Cochain witt_e(const GradedGraph& lambda, int m) {
  Cochain e(lambda, 0);
  ComponentKey key;
  key.objects.assign(m + 2, 0);
  key.inputs.assign(m + 1, bid(lambda, "eps"));
  e.add_term(key, bid(lambda, "eps"), 1);
  return e;
}

/// Random sparse cochain of the given shifted degree drawn from the canonical
/// elementary slots; empty when no slots exist.
inline Cochain random_cochain(const GradedGraph& g, int sdeg, int min_w, int max_w,
                              std::mt19937_64& rng, int terms = 3) {
  auto slots = enumerate_elementary(g, sdeg, min_w, max_w);
  Cochain c(g, sdeg);
  if (slots.empty()) return c;
  std::uniform_int_distribution<std::size_t> pick(0, slots.size() - 1);
  std::uniform_int_distribution<int> num(-4, 4);
  std::uniform_int_distribution<int> den(1, 3);
  for (int i = 0; i < terms; ++i) {
    const auto& [key, out] = slots[pick(rng)];
    int n = num(rng);
    if (n == 0) n = 1;
    c.add_term(key, out, Rational(n, den(rng)));
  }
  return c;
}

}  // namespace prelie::testing
