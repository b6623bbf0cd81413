#include "prelie/maurer_cartan.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <stdexcept>

namespace prelie {

namespace {

int max_arity(const Cochain& mu) { return mu.max_weight(); }

std::string slot_name(const GradedGraph& g, const ComponentKey& key, BasisId out) {
  std::string s = "[";
  for (std::size_t i = 0; i < key.inputs.size(); ++i) {
    if (i) s += ",";
    s += g.basis(key.inputs[i]).id;
  }
  if (key.inputs.empty()) s += "@" + g.object_name(key.objects[0]);
  s += "]>" + g.basis(out).id;
  return s;
}

/// mu^n of the Hochschild A-infinity algebra on explicit arguments.
Cochain mu_v(const AStructure& a, const std::vector<const Cochain*>& args,
             const WeightWindow& win) {
  if (args.size() == 1) return gerstenhaber_bracket(a.mu, *args[0], win);
  return brace(a.mu, args, win);
}

}  // namespace

Cochain curvature(const AStructure& a, const Cochain& zeta, const WeightWindow& win) {
  if (zeta.shifted_degree() != 0)
    throw std::invalid_argument("curvature expects shifted degree 0");
  if (zeta.min_weight() < 1)
    throw std::invalid_argument("curvature expects filtration >= 1");
  Cochain res = gerstenhaber_bracket(a.mu, zeta, win);
  std::vector<const Cochain*> args = {&zeta};
  for (int i = 2; i <= max_arity(a.mu); ++i) {
    args.push_back(&zeta);
    res.add_scaled(1, brace(a.mu, args, win));
  }
  return res;
}

std::vector<ShuffleTerm> shuffle_words(const std::vector<BasisId>& u,
                                       const std::vector<int>& u_degrees,
                                       const std::vector<BasisId>& v,
                                       const std::vector<int>& v_degrees) {
  const std::size_t r = u.size(), s = v.size();
  std::vector<ShuffleTerm> out;
  std::vector<bool> pick(r + s, false);
  std::fill(pick.begin(), pick.begin() + r, true);  // true = slot taken by u
  // Iterate all position sets of the u-letters in decreasing lexicographic
  // order of the mask via std::prev_permutation for determinism.
  std::vector<std::vector<bool>> masks;
  do {
    masks.push_back(pick);
  } while (std::prev_permutation(pick.begin(), pick.end()));
  for (const auto& mask : masks) {
    ShuffleTerm term;
    term.word.reserve(r + s);
    std::size_t iu = 0, iv = 0;
    int sign = 1;
    for (std::size_t p = 0; p < r + s; ++p) {
      if (mask[p]) {
        // u_iu passes every v-letter already placed.
        if (u_degrees[iu] % 2 != 0)
          for (std::size_t j = 0; j < iv; ++j)
            if (v_degrees[j] % 2 != 0) sign = -sign;
        term.word.push_back(u[iu++]);
      } else {
        term.word.push_back(v[iv++]);
      }
    }
    term.sign = sign;
    out.push_back(std::move(term));
  }
  return out;
}

std::vector<ShuffleTerm> shuffle(const GradedGraph& g, const std::vector<BasisId>& u,
                                 const std::vector<BasisId>& v) {
  std::vector<int> du, dv;
  for (BasisId b : u) du.push_back(g.basis(b).degree);
  for (BasisId b : v) dv.push_back(g.basis(b).degree);
  return shuffle_words(u, du, v, dv);
}

namespace {

/// Twisted operation value mu_tw^i(f_1..f_i) = sum_j sum over interleavings
/// of j copies of zeta, with Koszul signs taken in degrees sdeg - 1 (the
/// tensor algebra over the shifted Hochschild space).
Cochain twisted_op(const AStructure& a, const std::vector<const Cochain*>& fs,
                   const Cochain* zeta, const WeightWindow& win) {
  Cochain acc = mu_v(a, fs, win);
  if (!zeta || zeta->zero()) return acc;
  const int i = static_cast<int>(fs.size());
  const int top = max_arity(a.mu);
  for (int j = 1; i + j <= top; ++j) {
    // Interleave j zetas into the argument list; zeta has sdeg 0, so its
    // tensor-degree is odd and crossings against odd-tensor-degree arguments
    // flip the sign.
    std::vector<bool> mask(i + j, false);
    std::fill(mask.begin(), mask.begin() + j, true);  // true = zeta slot
    std::vector<std::vector<bool>> masks;
    do {
      masks.push_back(mask);
    } while (std::prev_permutation(mask.begin(), mask.end()));
    for (const auto& m : masks) {
      int sign = 1;
      std::vector<const Cochain*> args;
      std::size_t placed_f = 0;
      for (int p = 0; p < i + j; ++p) {
        if (m[p]) {
          if (zeta->shifted_degree() % 2 != 0)
            for (std::size_t q = 0; q < placed_f; ++q)
              if (fs[q]->shifted_degree() % 2 != 0) sign = -sign;
          args.push_back(zeta);
        } else {
          args.push_back(fs[placed_f++]);
        }
      }
      acc.add_scaled(sign, mu_v(a, args, win));
    }
  }
  return acc;
}

}  // namespace

TermList HochschildAlgebra::coordinates(const Cochain& c) const {
  TermList out;
  for (const auto& [key, terms] : c.components()) {
    for (const auto& t : terms) {
      auto it = std::lower_bound(
          slots.begin(), slots.end(), std::make_pair(key, t.basis),
          [](const auto& a, const auto& b) {
            if (a.first.weight() != b.first.weight()) return a.first.weight() < b.first.weight();
            if (a.first != b.first) return a.first < b.first;
            return a.second < b.second;
          });
      if (it == slots.end() || it->first != key || it->second != t.basis) continue;
      term_add(out, static_cast<BasisId>(it - slots.begin()), t.coefficient);
    }
  }
  return out;
}

Cochain HochschildAlgebra::element(BasisId slot) const {
  Cochain c(base->graph(), graph->sdeg(slot));
  c.add_term(slots[slot].first, slots[slot].second, 1);
  return c;
}

HochschildAlgebra hochschild_algebra(const AStructure& a, int weight_cutoff) {
  HochschildAlgebra h;
  h.base = &a;
  h.weight_cutoff = weight_cutoff;
  h.graph = std::make_unique<GradedGraph>();
  h.graph->add_object("C");
  const GradedGraph& g = a.graph();
  // Possible shifted degrees of weight <= cutoff slots lie between
  // minS - w*maxS and maxS - w*minS over the basis degree range.
  int min_s = 0, max_s = 0;
  for (BasisId b = 0; b < g.basis_count(); ++b) {
    min_s = std::min(min_s, g.sdeg(b));
    max_s = std::max(max_s, g.sdeg(b));
  }
  int lo = min_s, hi = max_s;
  for (int w = 0; w <= weight_cutoff; ++w) {
    lo = std::min(lo, min_s - w * max_s);
    hi = std::max(hi, max_s - w * min_s);
  }
  for (int sdeg = lo; sdeg <= hi; ++sdeg)
    for (auto& slot : enumerate_elementary(g, sdeg, 0, weight_cutoff)) h.slots.push_back(slot);
  std::sort(h.slots.begin(), h.slots.end(), [](const auto& a, const auto& b) {
    if (a.first.weight() != b.first.weight()) return a.first.weight() < b.first.weight();
    if (a.first != b.first) return a.first < b.first;
    return a.second < b.second;
  });
  for (const auto& slot : h.slots) {
    h.filtration.push_back(slot.first.weight());
    int sdeg = g.sdeg(slot.second);
    for (BasisId b : slot.first.inputs) sdeg -= g.sdeg(b);
    h.graph->add_basis(slot_name(g, slot.first, slot.second), "C", "C", sdeg + 1, false);
  }
  // Structure table gets filled by the untwisted twist.
  TwistResult tw;
  {
    WeightWindow win{0, weight_cutoff};
    Cochain mu_c(*h.graph, 1, kNoCutoff);
    const std::size_t n = h.slots.size();
    std::vector<Cochain> elements;
    elements.reserve(n);
    for (std::size_t s = 0; s < n; ++s) elements.push_back(h.element(static_cast<BasisId>(s)));
    const int top = max_arity(a.mu);
    for (int arity = 1; arity <= top; ++arity) {
      std::vector<std::size_t> word(arity, 0);
      while (true) {
        std::vector<const Cochain*> args;
        for (std::size_t w : word) args.push_back(&elements[w]);
        Cochain value = mu_v(a, args, win);
        if (!value.zero()) {
          TermList coords = h.coordinates(value);
          if (!coords.empty()) {
            ComponentKey key;
            key.objects.assign(arity + 1, 0);
            for (std::size_t w : word) key.inputs.push_back(static_cast<BasisId>(w));
            for (const auto& t : coords) mu_c.add_term(key, t.basis, t.coefficient);
          }
        }
        std::size_t i = 0;
        for (; i < word.size(); ++i) {
          if (++word[i] < n) break;
          word[i] = 0;
        }
        if (i == word.size()) break;
      }
    }
    h.structure = make_astructure(std::move(mu_c));
  }
  return h;
}

namespace {

TwistResult twist_common(const HochschildAlgebra& c, const Cochain& zeta,
                         const WeightWindow& win, bool module) {
  const AStructure& a = *c.base;
  {
    Cochain kappa = curvature(a, zeta, win);
    if (!kappa.zero())
      throw std::invalid_argument("twist requires a Maurer-Cartan element (curvature != 0)");
  }
  TwistResult r;
  r.graph = std::make_unique<GradedGraph>();
  if (module) r.graph->add_object("M");
  r.graph->add_object("C");
  const std::size_t n = c.slots.size();
  std::vector<BasisId> alg_ids(n), mod_ids(module ? n : 0);
  for (std::size_t s = 0; s < n; ++s)
    alg_ids[s] = r.graph->add_basis("a:" + c.graph->basis(static_cast<BasisId>(s)).id, "C", "C",
                                    c.graph->basis(static_cast<BasisId>(s)).degree, false);
  if (module)
    for (std::size_t s = 0; s < n; ++s)
      mod_ids[s] = r.graph->add_basis("m:" + c.graph->basis(static_cast<BasisId>(s)).id, "M",
                                      "C", c.graph->basis(static_cast<BasisId>(s)).degree,
                                      false);

  std::vector<Cochain> elements;
  elements.reserve(n);
  for (std::size_t s = 0; s < n; ++s) elements.push_back(c.element(static_cast<BasisId>(s)));

  Cochain mu_t(*r.graph, 1, kNoCutoff);
  WeightWindow full{0, c.weight_cutoff};
  const int top = max_arity(a.mu);
  ObjId obj_c = module ? 1 : 0;

  for (int arity = 1; arity <= top; ++arity) {
    std::vector<std::size_t> word(arity, 0);
    while (true) {
      std::vector<const Cochain*> args;
      for (std::size_t w : word) args.push_back(&elements[w]);
      if (!module) {
        Cochain value = twisted_op(a, args, &zeta, full);
        TermList coords = c.coordinates(value);
        if (!coords.empty()) {
          ComponentKey key;
          key.objects.assign(arity + 1, obj_c);
          for (std::size_t w : word) key.inputs.push_back(alg_ids[w]);
          for (const auto& t : coords) mu_t.add_term(key, alg_ids[t.basis], t.coefficient);
        }
      } else {
        // Algebra part stays untwisted.
        Cochain value = mu_v(a, args, full);
        TermList coords = c.coordinates(value);
        if (!coords.empty()) {
          ComponentKey key;
          key.objects.assign(arity + 1, obj_c);
          for (std::size_t w : word) key.inputs.push_back(alg_ids[w]);
          for (const auto& t : coords) mu_t.add_term(key, alg_ids[t.basis], t.coefficient);
        }
        // Module part: first input from the module copy, zetas prepended.
        Cochain mvalue = mu_v(a, args, full);
        std::vector<const Cochain*> zargs;
        for (int j = 1; arity + j <= top; ++j) {
          zargs.assign(j, &zeta);
          for (std::size_t w : word) zargs.push_back(&elements[w]);
          mvalue.add_scaled(1, mu_v(a, zargs, full));
        }
        TermList mcoords = c.coordinates(mvalue);
        if (!mcoords.empty()) {
          ComponentKey key;
          key.objects.assign(arity + 1, obj_c);
          key.objects.front() = 0;  // module object
          for (std::size_t w : word) key.inputs.push_back(mod_ids[w]);
          key.inputs.front() = mod_ids[word.front()];
          for (std::size_t q = 1; q < word.size(); ++q) key.inputs[q] = alg_ids[word[q]];
          for (const auto& t : mcoords) mu_t.add_term(key, mod_ids[t.basis], t.coefficient);
        }
      }
      std::size_t i = 0;
      for (; i < word.size(); ++i) {
        if (++word[i] < n) break;
        word[i] = 0;
      }
      if (i == word.size()) break;
    }
  }
  r.structure = make_astructure(std::move(mu_t));
  return r;
}

}  // namespace

TwistResult twist_algebra(const HochschildAlgebra& c, const Cochain& zeta,
                          const WeightWindow& win) {
  return twist_common(c, zeta, win, false);
}

TwistResult twist_module(const HochschildAlgebra& c, const Cochain& zeta,
                         const WeightWindow& win) {
  return twist_common(c, zeta, win, true);
}

// ---------------------------------------------------------------------------
// dg view

DgView dg_view(const AStructure& a) {
  if (max_arity(a.mu) > 2)
    throw std::invalid_argument("dg view requires a dg structure (weights 1 and 2 only)");
  return DgView{&a};
}

Cochain DgView::unit() const { return cup_unit(base->graph()); }

Cochain DgView::product(const Cochain& f, const Cochain& g, const WeightWindow& win) const {
  const GradedGraph& graph = base->graph();
  Cochain m_table = convert_convention(base->mu);
  Cochain out(graph, f.shifted_degree() + g.shifted_degree() + 1, win.cutoff);
  for (const auto& [k1, t1] : f.components()) {
    int s1 = 0;
    for (BasisId b : k1.inputs) s1 += graph.sdeg(b);
    for (const auto& [k2, t2] : g.components()) {
      if (k1.objects.back() != k2.objects.front()) continue;
      if (k1.weight() + k2.weight() > win.cutoff) continue;
      ComponentKey key;
      key.objects = k1.objects;
      key.objects.insert(key.objects.end(), k2.objects.begin() + 1, k2.objects.end());
      key.inputs = k1.inputs;
      key.inputs.insert(key.inputs.end(), k2.inputs.begin(), k2.inputs.end());
      int sign = ((g.shifted_degree() + 1) % 2 != 0 && s1 % 2 != 0) ? -1 : 1;
      TermList value = evaluate_graded_map(
          m_table, {k1.objects.front(), k1.objects.back(), k2.objects.back()}, {t1, t2});
      for (const auto& t : value) out.add_term(key, t.basis, sign * t.coefficient);
    }
  }
  return out;
}

Cochain DgView::differential(const Cochain& f) const {
  return gerstenhaber_bracket(base->mu, f, {0, kNoCutoff});
}

Cochain DgView::commutator(const Cochain& f, const Cochain& g, const WeightWindow& win) const {
  Cochain fg = product(f, g, win);
  int sign =
      ((f.shifted_degree() + 1) % 2 != 0 && (g.shifted_degree() + 1) % 2 != 0) ? -1 : 1;
  fg.add_scaled(-sign, product(g, f, win));
  return fg;
}

Cochain DgView::mc_dictionary(const Cochain& zeta) const { return cochain_scaled(zeta, -1); }

Cochain DgView::dg_curvature(const Cochain& zeta_dg, const WeightWindow& win) const {
  Cochain res = differential(zeta_dg);
  res.truncate(win.cutoff);
  res.add_scaled(1, product(zeta_dg, zeta_dg, win));
  return res;
}

GaugeResiduals gauge_check_dg(const AStructure& a, const Cochain& zeta, const Cochain& xi,
                              const GaugeWitness& w, const WeightWindow& win) {
  DgView view = dg_view(a);
  Cochain z = view.mc_dictionary(zeta);
  Cochain x = view.mc_dictionary(xi);
  Cochain one = view.unit();

  // 0 = d(c) + xi.c - c.zeta
  Cochain eq_c = view.differential(w.c);
  eq_c.truncate(win.cutoff);
  eq_c.add_scaled(1, view.product(x, w.c, win));
  eq_c.add_scaled(-1, view.product(w.c, z, win));
  // 0 = d(d) + zeta.d - d.xi
  Cochain eq_d = view.differential(w.d);
  eq_d.truncate(win.cutoff);
  eq_d.add_scaled(1, view.product(z, w.d, win));
  eq_d.add_scaled(-1, view.product(w.d, x, win));
  // 1 + d(u) + [zeta, u] = d.c
  Cochain eq_u = view.differential(w.u);
  eq_u.truncate(win.cutoff);
  eq_u.add_scaled(1, one);
  eq_u.add_scaled(1, view.commutator(z, w.u, win));
  eq_u.add_scaled(-1, view.product(w.d, w.c, win));
  // 1 + d(v) + [zeta, v] = c.d
  Cochain eq_v = view.differential(w.v);
  eq_v.truncate(win.cutoff);
  eq_v.add_scaled(1, one);
  eq_v.add_scaled(1, view.commutator(z, w.v, win));
  eq_v.add_scaled(-1, view.product(w.c, w.d, win));
  return GaugeResiduals{std::move(eq_c), std::move(eq_d), std::move(eq_u), std::move(eq_v)};
}

Cochain gauge_element(const AStructure& a, const Cochain& u, const WeightWindow& win) {
  DgView view = dg_view(a);
  Cochain c = view.unit();
  c.truncate(win.cutoff);
  Cochain power = view.unit();
  Rational coef = 1;
  for (int n = 1; n <= win.cutoff + 1; ++n) {
    power = view.product(power, u, win);
    if (power.zero()) break;
    coef /= n;
    c.add_scaled(coef, power);
  }
  return c;
}

Cochain gauge_action(const AStructure& a, const Cochain& u_in, const Cochain& xi,
                     const WeightWindow& win) {
  if (u_in.min_weight() < 1)
    throw std::invalid_argument("gauge_action: u must have filtration >= 1");
  DgView view = dg_view(a);
  // The sign of u is chosen so that the action pairs with the gauge element
  // c = sum u^n/n! in the displayed equations (the Maurer-Cartan dictionary
  // mirrors the conjugation direction).
  Cochain u = cochain_scaled(u_in, -1);
  Cochain x = view.mc_dictionary(xi);
  // ad_u(xi) - d(u), then iterated ad_u with 1/n!.
  Cochain base_term = view.commutator(u, x, win);
  Cochain du = view.differential(u);
  du.truncate(win.cutoff);
  base_term.add_scaled(-1, du);
  Cochain acc = x;
  acc.truncate(win.cutoff);
  Cochain iter = base_term;
  Rational coef = 1;
  for (int n = 1; n <= win.cutoff + 1 && !iter.zero(); ++n) {
    coef /= n;
    acc.add_scaled(coef, iter);
    iter = view.commutator(u, iter, win);
  }
  return view.mc_dictionary(acc);  // the dictionary is involutive
}

// ---------------------------------------------------------------------------
// Quillen homotopies

namespace {

using Poly = std::map<int, Cochain>;

void poly_addto(Poly& acc, const Rational& s, const Poly& other) {
  for (const auto& [k, c] : other) {
    auto it = acc.find(k);
    if (it == acc.end()) {
      acc.emplace(k, cochain_scaled(c, s));
    } else {
      it->second.add_scaled(s, c);
    }
  }
}

void poly_prune(Poly& p) {
  for (auto it = p.begin(); it != p.end();)
    it = it->second.zero() ? p.erase(it) : std::next(it);
}

Poly poly_star(const Poly& pp, const Poly& q, const WeightWindow& win) {
  Poly out;
  for (const auto& [k1, c1] : pp)
    for (const auto& [k2, c2] : q) {
      Cochain prod = star(c1, c2, win);
      if (prod.zero()) continue;
      auto it = out.find(k1 + k2);
      if (it == out.end())
        out.emplace(k1 + k2, std::move(prod));
      else
        it->second.add_scaled(1, prod);
    }
  poly_prune(out);
  return out;
}

Poly poly_d(const AStructure& a, const Poly& p, const WeightWindow& win) {
  Poly out;
  for (const auto& [k, c] : p) {
    Cochain d = gerstenhaber_bracket(a.mu, c, win);
    if (!d.zero()) out.emplace(k, std::move(d));
  }
  return out;
}

Poly poly_deriv(const Poly& p) {
  Poly out;
  for (const auto& [k, c] : p) {
    if (k == 0) continue;
    out.emplace(k - 1, cochain_scaled(c, k));
  }
  return out;
}

Cochain poly_eval(const Poly& p, const Rational& t, const GradedGraph& g, int sdeg,
                  const WeightWindow& win) {
  Cochain acc(g, sdeg, win.cutoff);
  Rational tp = 1;
  int last = 0;
  for (const auto& [k, c] : p) {
    for (; last < k; ++last) tp *= t;
    acc.add_scaled(tp, c);
  }
  return acc;
}

}  // namespace

QuillenPair quillen_homotopy_build(const AStructure& a, const PolynomialPath& g,
                                   const WeightWindow& win) {
  const GradedGraph& graph = a.graph();
  for (const auto& [k, c] : g.t_part)
    if (c.shifted_degree() != -1 && !c.zero())
      throw std::invalid_argument("quillen_homotopy_build: g must have shifted degree -1");
  Poly gp;
  for (const auto& [k, c] : g.t_part)
    if (!c.zero()) gp.emplace(k, c);

  Poly f = poly_d(a, gp, win);
  for (const auto& [k, c] : f)
    if (c.min_weight() < 2)
      throw std::invalid_argument("quillen_homotopy_build: d(g) escapes the positive part");

  // x is the pre-Lie flow dx/dt = (1 + x) * f with x(0) = 0, solved exactly
  // power by power: (k+1) x_{k+1} = f_k + sum_{a+b=k} x_a * f_b. For a
  // single-direction f this is exp of the integral; in general it stays a
  // polynomial Maurer-Cartan path of exponentials of coboundaries.
  Poly x;
  int fdeg = f.empty() ? 0 : f.rbegin()->first;
  int kmax = fdeg * (win.cutoff + 1) + 1;
  for (int k = 0; k <= kmax; ++k) {
    Cochain next(graph, 0, win.cutoff);
    auto fit = f.find(k);
    if (fit != f.end()) next.add_scaled(1, fit->second);
    for (const auto& [ax, cx] : x)
      for (const auto& [bf, cf] : f)
        if (ax + bf == k) next.add_scaled(1, star(cx, cf, win));
    if (!next.zero()) x.emplace(k + 1, cochain_scaled(next, Rational(1, k + 1)));
  }
  poly_prune(x);

  // lambda = (1 + x) * g = g + x * g.
  Poly lambda = gp;
  poly_addto(lambda, 1, poly_star(x, gp, win));
  poly_prune(lambda);

  QuillenPair pair;
  for (auto& [k, c] : x) pair.x.t_part.emplace(k, std::move(c));
  for (auto& [k, c] : lambda) pair.lambda.t_part.emplace(k, std::move(c));
  int cut = 0;
  if (!pair.x.t_part.empty()) cut = std::max(cut, pair.x.t_part.rbegin()->first);
  if (!pair.lambda.t_part.empty()) cut = std::max(cut, pair.lambda.t_part.rbegin()->first);
  pair.x.t_cutoff = pair.lambda.t_cutoff = cut;
  return pair;
}

QuillenResiduals quillen_verify(const AStructure& a, const QuillenPair& pair,
                                const WeightWindow& win) {
  const GradedGraph& graph = a.graph();
  Poly x, lambda;
  for (const auto& [k, c] : pair.x.t_part)
    if (!c.zero()) x.emplace(k, c);
  for (const auto& [k, c] : pair.lambda.t_part)
    if (!c.zero()) lambda.emplace(k, c);

  Poly residual = poly_deriv(x);
  Poly dl = poly_d(a, lambda, win);
  poly_addto(residual, -1, dl);

  // sum_{i >= 2} mu^i(sh(x^(i-1), lambda)): x is even in the tensor algebra,
  // so every placement of lambda carries sign +1.
  const int top = max_arity(a.mu);
  for (int i = 2; i <= top; ++i) {
    for (int pos = 0; pos < i; ++pos) {
      // terms with (i-1) x-factors and lambda at position pos; expand the
      // polynomial coefficients.
      std::vector<const Poly*> slots(i, &x);
      slots[pos] = &lambda;
      // polynomial convolution over i slots
      std::vector<std::pair<int, std::vector<const Cochain*>>> stack;
      std::function<void(int, int, std::vector<const Cochain*>&)> rec =
          [&](int slot, int tdeg, std::vector<const Cochain*>& args) {
            if (slot == i) {
              Cochain term = brace(a.mu, args, win);
              if (term.zero()) return;
              auto it = residual.find(tdeg);
              if (it == residual.end())
                residual.emplace(tdeg, cochain_scaled(term, -1));
              else
                it->second.add_scaled(-1, term);
              return;
            }
            for (const auto& [k, c] : *slots[slot]) {
              args.push_back(&c);
              rec(slot + 1, tdeg + k, args);
              args.pop_back();
            }
          };
      std::vector<const Cochain*> args;
      rec(0, 0, args);
    }
  }
  poly_prune(residual);

  QuillenResiduals out;
  for (auto& [k, c] : residual) out.ode.t_part.emplace(k, std::move(c));
  Cochain x0 = poly_eval(x, 0, graph, 0, win);
  Cochain x1 = poly_eval(x, 1, graph, 0, win);
  out.mc_at_0 = x0.zero() ? Cochain(graph, 1, win.cutoff) : curvature(a, x0, win);
  out.mc_at_1 = x1.zero() ? Cochain(graph, 1, win.cutoff) : curvature(a, x1, win);
  return out;
}

bool QuillenResiduals::zero() const {
  for (const auto& [k, c] : ode.t_part)
    if (!c.zero()) return false;
  for (const auto& [k, c] : ode.dt_part)
    if (!c.zero()) return false;
  return mc_at_0.zero() && mc_at_1.zero();
}

RelativeComplexMap relative_pushpull(const AFunctor& f, PushPull direction) {
  return RelativeComplexMap{direction, &f};
}

Prenatural RelativeComplexMap::apply(const Prenatural& eta, const WeightWindow& win) const {
  if (direction == PushPull::push) {
    // Insertion of eta into the Taylor slots of F.
    Cochain value = star(functor->taylor, eta.components, win);
    return Prenatural{functor, functor, eta.degree, std::move(value)};
  }
  Cochain value = pullback_through_functor(eta.components, *functor, win);
  return Prenatural{functor, functor, eta.degree, std::move(value)};
}

}  // namespace prelie
