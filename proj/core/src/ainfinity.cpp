#include "prelie/ainfinity.hpp"

#include "prelie/linalg.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace prelie {

namespace {

void require_presented_equal(const GradedGraph& a, const GradedGraph& b, const char* what) {
  if (&a != &b && !same_presentation(a, b))
    throw std::invalid_argument(std::string("graph mismatch in ") + what);
}

struct OutputIndex {
  std::map<BasisId, std::vector<std::pair<const ComponentKey*, const Rational*>>> by_output;
};

OutputIndex index_by_output(const Cochain& c) {
  OutputIndex idx;
  for (const auto& [key, terms] : c.components())
    for (const auto& t : terms) idx.by_output[t.basis].push_back({&key, &t.coefficient});
  return idx;
}

/// Fills every slot of `outer`'s components with outputs of chained factor
/// components. Slot sources follow the interleaving pattern
/// segs[0]* marks[0] segs[1]* ... marks[k-1] segs[k]*; factor words must be
/// consecutive over the common input graph. Marked factors apply Koszul signs
/// against the inputs consumed before their block.
Cochain chain_through(const Cochain& outer, const std::vector<const Cochain*>& segs,
                      const std::vector<const Cochain*>& marks, const WeightWindow& win,
                      const std::vector<std::vector<ObjId>>* weight0_preimages) {
  if (segs.size() != marks.size() + 1)
    throw std::invalid_argument("chain_through: segment/mark count mismatch");
  const GradedGraph& in = segs[0]->in_graph();
  int sdeg = outer.shifted_degree();
  for (const Cochain* m : marks) sdeg += m->shifted_degree();
  Cochain result(in, outer.out_graph(), sdeg, win.cutoff);

  std::vector<OutputIndex> seg_idx, mark_idx;
  seg_idx.reserve(segs.size());
  mark_idx.reserve(marks.size());
  for (const Cochain* s : segs) seg_idx.push_back(index_by_output(*s));
  for (const Cochain* m : marks) mark_idx.push_back(index_by_output(*m));
  const int k = static_cast<int>(marks.size());

  bool dropped = false;
  for (const auto& [okey, oterms] : outer.components()) {
    const int r = okey.weight();
    if (r == 0) {
      if (k != 0) continue;
      if (!weight0_preimages)
        throw std::invalid_argument("chain_through: weight-0 outer component needs object map");
      for (ObjId a : (*weight0_preimages)[okey.objects[0]]) {
        ComponentKey key{{a}, {}};
        for (const auto& t : oterms) result.add_term(key, t.basis, t.coefficient);
      }
      continue;
    }
    if (k > r) continue;

    // Choose the mark slots as an increasing k-combination of [0, r);
    // the remaining slots belong to the enclosing segments.
    std::vector<int> mark_slot(k);
    std::iota(mark_slot.begin(), mark_slot.end(), 0);
    while (true) {
      struct Frame {
        const ComponentKey* key;
        Rational coef;
      };
      std::vector<Frame> chosen(r);
      auto source_of = [&](int slot) -> std::pair<const OutputIndex*, bool> {
        int seg = 0;
        for (int j = 0; j < k; ++j) {
          if (slot == mark_slot[j]) return {&mark_idx[j], true};
          if (slot > mark_slot[j]) seg = j + 1;
        }
        return {&seg_idx[seg], false};
      };
      auto emit = [&](const auto& self, int slot, ObjId prev_last, int weight_so_far) -> void {
        if (slot == r) {
          ComponentKey key;
          key.inputs.reserve(weight_so_far);
          Rational coef = 1;
          int sign = 1;
          int prefix = 0;
          for (int t = 0; t < r; ++t) {
            const ComponentKey& ck = *chosen[t].key;
            bool marked = source_of(t).second;
            if (marked) {
              const Cochain* m = nullptr;
              for (int j = 0; j < k; ++j)
                if (mark_slot[j] == t) m = marks[j];
              if ((m->shifted_degree() % 2 != 0) && (prefix % 2 != 0)) sign = -sign;
            }
            if (key.objects.empty())
              key.objects.push_back(ck.objects.front());
            for (std::size_t p = 0; p < ck.inputs.size(); ++p) {
              key.inputs.push_back(ck.inputs[p]);
              key.objects.push_back(ck.objects[p + 1]);
              prefix += in.sdeg(ck.inputs[p]);
            }
            coef *= chosen[t].coef;
          }
          if (key.objects.empty()) return;
          coef *= sign;
          for (const auto& t : oterms) result.add_term(key, t.basis, coef * t.coefficient);
          return;
        }
        auto [idx, marked] = source_of(slot);
        auto it = idx->by_output.find(okey.inputs[slot]);
        if (it == idx->by_output.end()) return;
        for (const auto& [ckey, ccoef] : it->second) {
          if (slot > 0 && ckey->objects.front() != prev_last) continue;
          int w = weight_so_far + ckey->weight();
          if (w > win.cutoff) {
            dropped = true;
            continue;
          }
          chosen[slot] = {ckey, *ccoef};
          self(self, slot + 1, ckey->objects.back(), w);
        }
      };
      emit(emit, 0, 0, 0);

      if (k == 0) break;
      int i = k - 1;
      while (i >= 0 && mark_slot[i] == r - k + i) --i;
      if (i < 0) break;
      ++mark_slot[i];
      for (int j = i + 1; j < k; ++j) mark_slot[j] = mark_slot[j - 1] + 1;
    }
  }

  bool complete = outer.complete() && !dropped;
  for (const Cochain* s : segs) complete = complete && s->complete();
  for (const Cochain* m : marks) complete = complete && m->complete();
  if (complete) {
    result.set_cutoff(kNoCutoff);
  } else {
    int cut = win.cutoff;
    if (!outer.complete()) cut = std::min(cut, outer.cutoff());
    for (const Cochain* s : segs)
      if (!s->complete()) cut = std::min(cut, s->cutoff());
    for (const Cochain* m : marks)
      if (!m->complete()) cut = std::min(cut, m->cutoff());
    result.truncate(cut);
  }
  return result;
}

}  // namespace

AStructure make_astructure(Cochain mu) {
  if (mu.shifted_degree() != 1)
    throw std::invalid_argument("A-infinity structure must have shifted degree 1");
  for (const auto& [key, terms] : mu.components())
    if (key.weight() < 1)
      throw std::invalid_argument("A-infinity structure must lie in weight >= 1");
  require_presented_equal(mu.in_graph(), mu.out_graph(), "make_astructure");
  return AStructure{std::move(mu)};
}

Cochain validate_astructure(const Cochain& mu, const WeightWindow& win) {
  if (mu.shifted_degree() != 1)
    throw std::invalid_argument("validate_astructure: shifted degree must be 1");
  if (mu.min_weight() < 1)
    throw std::invalid_argument("validate_astructure: weight-0 component present");
  return star(mu, mu, win);
}

bool strictly_unital(const AStructure& a) {
  const GradedGraph& g = a.graph();
  if (!g.has_units()) return false;
  Cochain m = convert_convention(a.mu);
  // m^1 kills units; m^2 satisfies both unit laws; higher m^i vanish on units.
  for (ObjId o = 0; o < g.object_count(); ++o) {
    BasisId u = *g.unit_of(o);
    ComponentKey du{{o, o}, {u}};
    if (m.component(du)) return false;
  }
  for (BasisId x = 0; x < g.basis_count(); ++x) {
    const auto& e = g.basis(x);
    BasisId us = *g.unit_of(e.source);
    BasisId ut = *g.unit_of(e.target);
    TermList expect{{x, Rational(1)}};
    ComponentKey left{{e.source, e.source, e.target}, {us, x}};
    ComponentKey right{{e.source, e.target, e.target}, {x, ut}};
    const TermList* lv = m.component(left);
    const TermList* rv = m.component(right);
    if (!lv || !term_equal(*lv, expect)) return false;
    if (!rv || !term_equal(*rv, expect)) return false;
  }
  for (const auto& [key, terms] : m.components()) {
    if (key.weight() < 3) continue;
    for (BasisId b : key.inputs)
      if (g.basis(b).unit) return false;
  }
  return true;
}

Cochain convert_convention(const Cochain& table) {
  // The paper's sign sum over (n-1)|a_n| counts positions in composition
  // order; in path-order storage the weight of the input at index i is
  // therefore w-1-i. The sign makes the converted table satisfy the shifted
  // quadratic relations whenever the m-table satisfies the unshifted ones.
  Cochain out(table.in_graph(), table.out_graph(), table.shifted_degree(), table.cutoff());
  for (const auto& [key, terms] : table.components()) {
    const std::size_t w = key.inputs.size();
    long long e = 0;
    for (std::size_t i = 0; i < w; ++i)
      e += static_cast<long long>(w - 1 - i) * table.in_graph().basis(key.inputs[i]).degree;
    out.set_component(key, (e % 2 != 0) ? term_scaled(terms, -1) : terms);
  }
  return out;
}

AFunctor identity_functor(const AStructure& a) {
  AFunctor f;
  f.source = &a;
  f.target = &a;
  f.object_map.resize(a.graph().object_count());
  std::iota(f.object_map.begin(), f.object_map.end(), 0);
  f.taylor = brace_unit(a.graph());
  return f;
}

void check_functor_blocks(const AFunctor& f) {
  const GradedGraph& b = f.target_graph();
  for (const auto& [key, terms] : f.taylor.components()) {
    ObjId src = f.object_map[key.objects.front()];
    ObjId tgt = f.object_map[key.objects.back()];
    for (const auto& t : terms) {
      const auto& e = b.basis(t.basis);
      if (e.source != src || e.target != tgt)
        throw std::invalid_argument("functor component output leaves its hom block");
    }
  }
  if (f.taylor.shifted_degree() != 0)
    throw std::invalid_argument("functor Taylor table must have shifted degree 0");
  if (f.taylor.min_weight() < 1)
    throw std::invalid_argument("functor Taylor table must lie in weight >= 1");
}

Cochain pullback_through_functor(const Cochain& h, const AFunctor& f, const WeightWindow& win) {
  require_presented_equal(h.in_graph(), f.target_graph(), "pullback_through_functor");
  std::vector<std::vector<ObjId>> preimages(f.target_graph().object_count());
  for (ObjId a = 0; a < f.object_map.size(); ++a) preimages[f.object_map[a]].push_back(a);
  return chain_through(h, {&f.taylor}, {}, win, &preimages);
}

Cochain functor_residual(const AFunctor& f, const WeightWindow& win) {
  check_functor_blocks(f);
  Cochain lhs = pullback_through_functor(f.target->mu, f, win);
  Cochain rhs = star(f.taylor, f.source->mu, win);
  return cochain_sub(lhs, rhs);
}

AFunctor compose_functors(const AFunctor& outer, const AFunctor& inner, const WeightWindow& win) {
  require_presented_equal(inner.target_graph(), outer.source_graph(), "compose_functors");
  AFunctor r;
  r.source = inner.source;
  r.target = outer.target;
  r.object_map.resize(inner.object_map.size());
  for (std::size_t i = 0; i < inner.object_map.size(); ++i)
    r.object_map[i] = outer.object_map[inner.object_map[i]];
  r.taylor = pullback_through_functor(outer.taylor, inner, win);
  return r;
}

Prenatural fun_differential(const Prenatural& eta, const WeightWindow& win) {
  const AStructure& tgt = eta.target_structure();
  Cochain term1 = chain_through(tgt.mu, {&eta.from->taylor, &eta.to->taylor}, {&eta.components},
                                win, nullptr);
  Cochain term2 = star(eta.components, eta.from->source->mu, win);
  int sign = (eta.degree % 2 != 0) ? -1 : 1;
  term1.add_scaled(-sign, term2);
  return Prenatural{eta.from, eta.to, eta.degree + 1, std::move(term1)};
}

Prenatural fun_product(const std::vector<const Prenatural*>& etas, const WeightWindow& win) {
  if (etas.empty()) throw std::invalid_argument("fun_product needs at least one argument");
  for (std::size_t j = 0; j + 1 < etas.size(); ++j)
    if (etas[j]->to != etas[j + 1]->from)
      throw std::invalid_argument("fun_product: transformations do not form a chain");
  const AStructure& tgt = etas[0]->target_structure();
  std::vector<const Cochain*> segs, marks;
  segs.push_back(&etas[0]->from->taylor);
  int degree = 1;
  for (const Prenatural* e : etas) {
    marks.push_back(&e->components);
    segs.push_back(&e->to->taylor);
    degree += e->degree;
  }
  Cochain value = chain_through(tgt.mu, segs, marks, win, nullptr);
  return Prenatural{etas.front()->from, etas.back()->to, degree, std::move(value)};
}

AFunctor Isotopy::pack() const {
  AFunctor f = identity_functor(*base);
  f.taylor.add_scaled(1, plus);
  return f;
}

Isotopy make_isotopy(const AStructure& base, Cochain plus) {
  if (plus.shifted_degree() != 0)
    throw std::invalid_argument("isotopy part must have shifted degree 0");
  if (plus.min_weight() < 2) throw std::invalid_argument("isotopy part must lie in weight >= 2");
  require_presented_equal(base.graph(), plus.in_graph(), "make_isotopy");
  return Isotopy{&base, std::move(plus)};
}

Cochain isotopy_residual(const Isotopy& f, const WeightWindow& win) {
  const Cochain& mu = f.base->mu;
  Cochain res = star(mu, f.plus, win);
  res.add_scaled(-1, star(f.plus, mu, win));
  // Arity i needs i slots of mu and lands in weight >= i + 1: both the
  // structure's maximal weight and the window bound the sum.
  std::vector<const Cochain*> args = {&f.plus};
  for (int i = 2; i <= mu.max_weight() && i + 1 <= win.cutoff; ++i) {
    args.push_back(&f.plus);
    res.add_scaled(1, brace(mu, args, win));
  }
  return res;
}

std::optional<HomotopyWitness> homotopy_solve(const Isotopy& f, const Isotopy& g,
                                              const WeightWindow& win) {
  if (f.base != g.base) throw std::invalid_argument("homotopy_solve: differing base structures");
  if (win.cutoff >= kNoCutoff)
    throw std::invalid_argument("homotopy_solve requires a finite weight window");
  const GradedGraph& graph = f.base->graph();

  auto from = std::make_shared<AFunctor>(f.pack());
  auto to = std::make_shared<AFunctor>(g.pack());

  Cochain rhs = cochain_sub(to->taylor, from->taylor);
  rhs.truncate(win.cutoff);

  // Candidate elementary components of h: shifted degree -1, weight >= 1.
  std::vector<std::pair<ComponentKey, BasisId>> vars;
  std::vector<Cochain> cols;
  std::map<std::pair<ComponentKey, BasisId>, std::size_t> coord;
  auto coordinates = [&](const Cochain& c) {
    std::vector<std::pair<std::size_t, Rational>> out;
    for (const auto& [key, terms] : c.components())
      for (const auto& t : terms) {
        auto k = std::make_pair(key, t.basis);
        auto it = coord.find(k);
        if (it == coord.end()) it = coord.emplace(k, coord.size()).first;
        out.push_back({it->second, t.coefficient});
      }
    return out;
  };

  vars = enumerate_elementary(graph, -1, 1, win.cutoff);

  for (const auto& [key, out] : vars) {
    Cochain e(graph, -1, win.cutoff);
    e.add_term(key, out, 1);
    Prenatural candidate{from.get(), to.get(), -1, std::move(e)};
    Prenatural image = fun_differential(candidate, win);
    image.components.truncate(win.cutoff);
    cols.push_back(std::move(image.components));
  }

  auto rhs_coords = coordinates(rhs);
  std::vector<std::vector<std::pair<std::size_t, Rational>>> col_coords;
  col_coords.reserve(cols.size());
  for (const auto& c : cols) col_coords.push_back(coordinates(c));

  QMatrix m(coord.size(), vars.size());
  QVector b(coord.size());
  for (std::size_t j = 0; j < col_coords.size(); ++j)
    for (const auto& [row, val] : col_coords[j]) m.at(row, j) = val;
  for (const auto& [row, val] : rhs_coords) b[row] = val;

  auto x = solve(m, b);
  if (!x) return std::nullopt;

  Cochain h(graph, -1, win.cutoff);
  for (std::size_t j = 0; j < vars.size(); ++j)
    if (!(*x)[j].is_zero()) h.add_term(vars[j].first, vars[j].second, (*x)[j]);
  Prenatural witness{from.get(), to.get(), -1, std::move(h)};
  Prenatural check = fun_differential(witness, win);
  check.components.truncate(win.cutoff);
  check.components.add_scaled(-1, rhs);
  if (!check.components.zero())
    throw std::logic_error("homotopy_solve: witness failed re-verification");
  return HomotopyWitness{std::move(from), std::move(to), std::move(witness)};
}

OppositeResult opposite(const AStructure& a) {
  const GradedGraph& g = a.graph();
  OppositeResult r;
  r.graph = std::make_unique<GradedGraph>();
  for (ObjId o = 0; o < g.object_count(); ++o) r.graph->add_object(g.object_name(o));
  for (BasisId b = 0; b < g.basis_count(); ++b) {
    const auto& e = g.basis(b);
    r.graph->add_basis(e.id, g.object_name(e.target), g.object_name(e.source), e.degree, e.unit);
  }
  // Reversal with the Koszul sign of the permutation on shifted degrees,
  // times (-1)^(w+1). The weight factor is the unique alternation that keeps
  // the Maurer-Cartan equation and reduces to the classical graded opposite
  // (unchanged differential, commutator-flipped product) on dg input.
  Cochain mu_op(*r.graph, 1, a.mu.cutoff());
  for (const auto& [key, terms] : a.mu.components()) {
    const int w = key.weight();
    ComponentKey op;
    op.objects.assign(key.objects.rbegin(), key.objects.rend());
    op.inputs.assign(key.inputs.rbegin(), key.inputs.rend());
    int odd = 0;
    for (BasisId b : key.inputs)
      if (g.sdeg(b) % 2 != 0) ++odd;
    int sign = (odd * (odd - 1) / 2) % 2 != 0 ? -1 : 1;
    if (w % 2 == 0) sign = -sign;
    for (const auto& t : terms) mu_op.add_term(op, t.basis, sign * t.coefficient);
  }
  r.structure = make_astructure(std::move(mu_op));
  return r;
}

GlueResult glue(const AFunctor& f, const WeightWindow& win) {
  check_functor_blocks(f);
  {
    Cochain res = functor_residual(f, win);
    if (!res.zero()) throw std::invalid_argument("glue: functor residual is nonzero in window");
  }
  const GradedGraph& ga = f.source_graph();
  const GradedGraph& gb = f.target_graph();

  GlueResult r;
  r.graph = std::make_unique<GradedGraph>();
  GradedGraph& d = *r.graph;

  std::vector<ObjId> a_obj(ga.object_count()), b_obj(gb.object_count());
  for (ObjId o = 0; o < ga.object_count(); ++o) a_obj[o] = d.add_object(ga.object_name(o) + "@A");
  for (ObjId o = 0; o < gb.object_count(); ++o) b_obj[o] = d.add_object(gb.object_name(o) + "@B");

  std::vector<BasisId> a_basis(ga.basis_count()), b_basis(gb.basis_count());
  for (BasisId b = 0; b < ga.basis_count(); ++b) {
    const auto& e = ga.basis(b);
    a_basis[b] = d.add_basis(e.id + "@A", ga.object_name(e.source) + "@A",
                             ga.object_name(e.target) + "@A", e.degree, e.unit);
  }
  for (BasisId b = 0; b < gb.basis_count(); ++b) {
    const auto& e = gb.basis(b);
    b_basis[b] = d.add_basis(e.id + "@B", gb.object_name(e.source) + "@B",
                             gb.object_name(e.target) + "@B", e.degree, e.unit);
  }
  // Connector basis: D(x, a) = B(x, F(a)).
  std::map<std::pair<BasisId, ObjId>, BasisId> conn;  // (B-basis id, A-object) -> D-basis
  for (ObjId a = 0; a < ga.object_count(); ++a) {
    ObjId fa = f.object_map[a];
    for (ObjId x = 0; x < gb.object_count(); ++x)
      for (BasisId y : gb.hom(x, fa)) {
        const auto& e = gb.basis(y);
        conn[{y, a}] = d.add_basis("c:" + e.id + ":" + ga.object_name(a),
                                   gb.object_name(x) + "@B", ga.object_name(a) + "@A", e.degree,
                                   false);
      }
  }

  Cochain mu_d(d, 1, win.cutoff);
  bool dropped = false;
  // Pure A and pure B components.
  for (const auto& [key, terms] : f.source->mu.components()) {
    if (key.weight() > win.cutoff) { dropped = true; continue; }
    ComponentKey k;
    for (ObjId o : key.objects) k.objects.push_back(a_obj[o]);
    for (BasisId b : key.inputs) k.inputs.push_back(a_basis[b]);
    for (const auto& t : terms) mu_d.add_term(k, a_basis[t.basis], t.coefficient);
  }
  for (const auto& [key, terms] : f.target->mu.components()) {
    if (key.weight() > win.cutoff) { dropped = true; continue; }
    ComponentKey k;
    for (ObjId o : key.objects) k.objects.push_back(b_obj[o]);
    for (BasisId b : key.inputs) k.inputs.push_back(b_basis[b]);
    for (const auto& t : terms) mu_d.add_term(k, b_basis[t.basis], t.coefficient);
  }

  // Crossing components: mu_B(id^(j+1) (x) F-chain) on words
  // (B-edges, connector, A-edges).
  OutputIndex taylor_idx = index_by_output(f.taylor);
  for (const auto& [key, terms] : f.target->mu.components()) {
    const int rr = key.weight();
    for (int j = 0; j + 1 <= rr; ++j) {
      // Slot j (0-based) carries the connector; slots j+1..rr-1 the F-chain.
      BasisId yconn = key.inputs[j];
      ObjId vtail = gb.basis(yconn).target;
      for (ObjId a0 = 0; a0 < ga.object_count(); ++a0) {
        if (f.object_map[a0] != vtail) continue;
        // Depth-first match of the remaining slots by taylor components.
        ComponentKey base;
        for (int t = 0; t < j; ++t) {
          if (base.objects.empty()) base.objects.push_back(b_obj[key.objects[t]]);
          base.objects.push_back(b_obj[key.objects[t + 1]]);
          base.inputs.push_back(b_basis[key.inputs[t]]);
        }
        if (base.objects.empty()) base.objects.push_back(b_obj[key.objects[j]]);
        base.objects.push_back(a_obj[a0]);
        base.inputs.push_back(conn.at({yconn, a0}));

        auto emit = [&](const auto& self, int slot, ObjId alast, ComponentKey word,
                        Rational coef) -> void {
          if (slot == rr) {
            if (word.weight() > win.cutoff) { dropped = true; return; }
            for (const auto& t : terms) {
              auto it = conn.find({t.basis, alast});
              if (it == conn.end()) continue;
              mu_d.add_term(word, it->second, coef * t.coefficient);
            }
            return;
          }
          auto it = taylor_idx.by_output.find(key.inputs[slot]);
          if (it == taylor_idx.by_output.end()) return;
          for (const auto& [ckey, ccoef] : it->second) {
            if (ckey->objects.front() != alast) continue;
            ComponentKey w = word;
            for (std::size_t p = 0; p < ckey->inputs.size(); ++p) {
              w.inputs.push_back(a_basis[ckey->inputs[p]]);
              w.objects.push_back(a_obj[ckey->objects[p + 1]]);
            }
            if (w.weight() > win.cutoff) { dropped = true; continue; }
            self(self, slot + 1, ckey->objects.back(), std::move(w), coef * (*ccoef));
          }
        };
        emit(emit, j + 1, a0, base, Rational(1));
      }
    }
  }
  if (f.source->mu.complete() && f.target->mu.complete() && f.taylor.complete() && !dropped)
    mu_d.set_cutoff(kNoCutoff);

  r.structure = make_astructure(std::move(mu_d));
  std::vector<ObjId> a_objects(a_obj.begin(), a_obj.end());
  std::vector<ObjId> b_objects(b_obj.begin(), b_obj.end());
  r.onto_source = include_full_subgraph(d, a_objects);
  r.onto_target = include_full_subgraph(d, b_objects);
  return r;
}

}  // namespace prelie
