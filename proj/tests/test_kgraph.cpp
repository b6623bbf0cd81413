#include "doctest.h"
#include "fixtures.hpp"

using namespace prelie;
using namespace prelie::testing;

TEST_CASE("validate_graph accepts the shipped quivers") {
  CHECK(validate_graph(*make_kronecker().graph).empty());
  CHECK(validate_graph(*make_gentle_b().graph).empty());
  CHECK(validate_graph(*make_glue3().graph).empty());
}

TEST_CASE("validate_graph reports a mismatched hom key") {
  GradedGraph g;
  g.add_object("x");
  g.add_object("y");
  BasisId a = g.add_basis("a", "x", "y", 0);
  g.file_basis_under(a, 1, 0);  // file under hom(y, x) against its declaration
  auto diags = validate_graph(g);
  REQUIRE(diags.size() == 1);
  CHECK(diags[0].find("'a'") != std::string::npos);
}

TEST_CASE("validate_graph checks unit metadata") {
  GradedGraph g;
  g.add_object("x");
  g.add_basis("u", "x", "x", 1, true);
  auto diags = validate_graph(g);
  REQUIRE(diags.size() == 1);
  CHECK(diags[0].find("degree") != std::string::npos);
}

TEST_CASE("full subgraph on all objects is the identity") {
  Fixture k = make_kronecker();
  auto idx = include_full_subgraph(*k.graph, {0, 1});
  CHECK(same_presentation(*k.graph, idx.sub()));
  Cochain r = restrict_cochain(k.a.mu, idx);
  CHECK(r.components().size() == k.a.mu.components().size());
}

TEST_CASE("one-object restriction keeps the endomorphism algebra") {
  Fixture k = make_kronecker();
  auto idx = include_full_subgraph(*k.graph, {0});
  CHECK(idx.sub().object_count() == 1);
  CHECK(idx.sub().basis_count() == 1);  // only e1 survives
  CHECK(idx.sub().basis(0).id == "e1");
  CHECK_THROWS(include_full_subgraph(*k.graph, {7}));
}

TEST_CASE("category algebra block decomposition is exact") {
  for (const auto& f : all_fixtures()) {
    auto view = category_algebra_view(*f.graph);
    std::size_t sum = 0;
    for (const auto& [key, block] : view.blocks) sum += block.size();
    CHECK(sum == f.graph->basis_count());
    CHECK(view.total_dimension == f.graph->basis_count());
    // every basis id in exactly one block
    std::vector<int> seen(f.graph->basis_count(), 0);
    for (const auto& [key, block] : view.blocks)
      for (BasisId b : block) seen[b]++;
    for (int c : seen) CHECK(c == 1);
  }
}

TEST_CASE("strict unitality detection") {
  CHECK(strictly_unital(make_kronecker().a));
  CHECK(strictly_unital(make_gentle_b().a));
  CHECK(strictly_unital(make_lambda().a));
  CHECK(strictly_unital(make_glue3().a));

  // Break one unit law.
  auto g = std::make_unique<GradedGraph>();
  g->add_object("pt");
  g->add_basis("u", "pt", "pt", 0, true);
  g->add_basis("x", "pt", "pt", 0);
  Cochain m(*g, 1);
  add_op(m, *g, {"u", "u"}, {{"u", 1}});
  add_op(m, *g, {"u", "x"}, {{"x", 1}});
  AStructure broken = make_astructure(convert_convention(m));
  CHECK_FALSE(strictly_unital(broken));
}
