#include "prelie/hochschild.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace prelie {

namespace {

void require_same_graph(const GradedGraph& a, const GradedGraph& b, const char* what) {
  if (&a == &b) return;
  if (!same_presentation(a, b)) throw std::invalid_argument(std::string("mixed graphs in ") + what);
}

int sat_add(int a, int b) {
  long long s = static_cast<long long>(a) + b;
  if (s >= kNoCutoff) return kNoCutoff;
  if (s <= -kNoCutoff) return -kNoCutoff;
  return static_cast<int>(s);
}

/// Matches of required output basis id -> (component, coefficient of that id).
struct InsertionIndex {
  const Cochain* g = nullptr;
  std::map<BasisId, std::vector<std::pair<const ComponentKey*, const Rational*>>> by_output;
};

InsertionIndex build_index(const Cochain& g) {
  InsertionIndex idx;
  idx.g = &g;
  for (const auto& [key, terms] : g.components())
    for (const auto& t : terms) idx.by_output[t.basis].push_back({&key, &t.coefficient});
  return idx;
}

}  // namespace

Cochain brace_unit(const GradedGraph& g) {
  Cochain one(g, 0);
  for (BasisId b = 0; b < g.basis_count(); ++b) {
    const auto& e = g.basis(b);
    ComponentKey key{{e.source, e.target}, {b}};
    one.add_term(key, b, 1);
  }
  return one;
}

Cochain cup_unit(const GradedGraph& g) {
  if (!g.has_units()) throw std::invalid_argument("graph carries no unit metadata");
  Cochain u(g, -1);
  for (ObjId o = 0; o < g.object_count(); ++o) {
    ComponentKey key{{o}, {}};
    u.add_term(key, *g.unit_of(o), 1);
  }
  return u;
}

Cochain brace(const Cochain& f, const std::vector<const Cochain*>& gs, const WeightWindow& win) {
  if (gs.empty()) throw std::invalid_argument("brace needs at least one insertion");
  for (const Cochain* g : gs) {
    require_same_graph(f.in_graph(), g->in_graph(), "brace");
    require_same_graph(f.in_graph(), g->out_graph(), "brace");
  }
  const int r = static_cast<int>(gs.size());

  int sdeg = f.shifted_degree();
  for (const Cochain* g : gs) sdeg += g->shifted_degree();
  Cochain result(f.in_graph(), f.out_graph(), sdeg, win.cutoff);

  // Cutoff propagation from w(result) = w(f) + sum(w(g_j) - 1). An unknown
  // component of a truncated input has weight >= its cutoff + 1; the lowest
  // result weight it can reach bounds what stays trustworthy.
  auto eff_min = [](const Cochain& c) {
    return c.complete() ? c.min_weight() : std::min(c.min_weight(), c.cutoff() + 1);
  };
  int gain_all = 0;  // sum over all g_j of (min weight - 1)
  for (const Cochain* g : gs) gain_all = sat_add(gain_all, eff_min(*g) - 1);
  int cut = win.cutoff;
  if (!f.complete()) cut = std::min(cut, sat_add(f.cutoff(), gain_all));
  for (int j = 0; j < r; ++j) {
    if (gs[j]->complete()) continue;
    int bound = sat_add(eff_min(f), gs[j]->cutoff());
    for (int k = 0; k < r; ++k)
      if (k != j) bound = sat_add(bound, eff_min(*gs[k]) - 1);
    cut = std::min(cut, sat_add(bound, -1));
  }

  bool dropped = false;
  std::vector<InsertionIndex> indices;
  indices.reserve(gs.size());
  for (const Cochain* g : gs) indices.push_back(build_index(*g));

  std::vector<int> slots(r);
  std::vector<const ComponentKey*> choice(r);
  std::vector<Rational> choice_coef(r);

  for (const auto& [fkey, fterms] : f.components()) {
    const int w = fkey.weight();
    if (r > w) continue;

    // Enumerate increasing slot tuples.
    std::iota(slots.begin(), slots.end(), 0);
    while (true) {
      // Assign matching g-components to the chosen slots, depth-first.
      auto emit = [&](const auto& emit_ref, int j) -> void {
        if (j == r) {
          int wres = w - r;
          for (int i = 0; i < r; ++i) wres += choice[i]->weight();
          if (wres > win.cutoff) {
            dropped = true;
            return;
          }
          ComponentKey key;
          key.objects.reserve(wres + 1);
          key.inputs.reserve(wres);
          std::vector<int> block_start(r, 0);
          int next = 0;
          for (int i = 0; i < r; ++i) {
            for (; next < slots[i]; ++next) {
              key.objects.push_back(fkey.objects[next]);
              key.inputs.push_back(fkey.inputs[next]);
            }
            block_start[i] = static_cast<int>(key.inputs.size());
            const auto& gk = *choice[i];
            for (std::size_t p = 0; p < gk.inputs.size(); ++p) {
              key.objects.push_back(gk.objects[p]);
              key.inputs.push_back(gk.inputs[p]);
            }
            ++next;  // slot consumed by the insertion
          }
          for (; next < w; ++next) {
            key.objects.push_back(fkey.objects[next]);
            key.inputs.push_back(fkey.inputs[next]);
          }
          key.objects.push_back(fkey.objects[w]);

          const GradedGraph& gg = f.in_graph();
          int sign = 1;
          {
            int prefix = 0, pos = 0;
            for (int i = 0; i < r; ++i) {
              for (; pos < block_start[i]; ++pos) prefix += gg.sdeg(key.inputs[pos]);
              if ((gs[i]->shifted_degree() % 2 != 0) && (prefix % 2 != 0)) sign = -sign;
              pos += choice[i]->weight();
              for (int q = block_start[i]; q < pos; ++q) prefix += gg.sdeg(key.inputs[q]);
            }
          }

          Rational coef = sign;
          for (int i = 0; i < r; ++i) coef *= choice_coef[i];
          for (const auto& t : fterms) result.add_term(key, t.basis, coef * t.coefficient);
          return;
        }
        BasisId need = fkey.inputs[slots[j]];
        auto it = indices[j].by_output.find(need);
        if (it == indices[j].by_output.end()) return;
        for (const auto& [gkey, gcoef] : it->second) {
          choice[j] = gkey;
          choice_coef[j] = *gcoef;
          emit_ref(emit_ref, j + 1);
        }
      };
      emit(emit, 0);

      // Next increasing r-combination of [0, w).
      int i = r - 1;
      while (i >= 0 && slots[i] == w - r + i) --i;
      if (i < 0) break;
      ++slots[i];
      for (int k = i + 1; k < r; ++k) slots[k] = slots[k - 1] + 1;
    }
  }

  bool all_complete = f.complete();
  for (const Cochain* g : gs) all_complete = all_complete && g->complete();
  if (all_complete && !dropped)
    result.set_cutoff(kNoCutoff);
  else
    result.truncate(std::min(cut, win.cutoff));
  return result;
}

Cochain star(const Cochain& f, const Cochain& g, const WeightWindow& win) {
  return brace(f, {&g}, win);
}

Cochain gerstenhaber_bracket(const Cochain& f, const Cochain& g, const WeightWindow& win) {
  Cochain fg = star(f, g, win);
  Cochain gf = star(g, f, win);
  int sign = (f.shifted_degree() % 2 != 0 && g.shifted_degree() % 2 != 0) ? -1 : 1;
  fg.add_scaled(-sign, gf);
  return fg;
}

Cochain symmetric_brace(const Cochain& f, const std::vector<const Cochain*>& gs,
                        const WeightWindow& win) {
  const std::size_t r = gs.size();
  std::vector<int> degrees(r);
  for (std::size_t i = 0; i < r; ++i) degrees[i] = gs[i]->shifted_degree();
  std::vector<std::size_t> perm(r);
  std::iota(perm.begin(), perm.end(), 0);
  int sdeg = f.shifted_degree();
  for (const Cochain* g : gs) sdeg += g->shifted_degree();
  Cochain acc(f.in_graph(), f.out_graph(), sdeg, win.cutoff);
  do {
    std::vector<const Cochain*> arranged(r);
    for (std::size_t i = 0; i < r; ++i) arranged[i] = gs[perm[i]];
    int sign = koszul_permutation_sign(degrees, perm);
    acc.add_scaled(sign, brace(f, arranged, win));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return acc;
}

Cochain cup(const Cochain& mu, const Cochain& f, const Cochain& g, const WeightWindow& win) {
  return brace(mu, {&f, &g}, win);
}

Cochain restrict_cochain(const Cochain& f, const RestrictionIndex& idx) {
  require_same_graph(f.in_graph(), *idx.parent, "restrict");
  require_same_graph(f.out_graph(), *idx.parent, "restrict");
  Cochain out(idx.sub(), f.shifted_degree(), f.cutoff());
  for (const auto& [key, terms] : f.components()) {
    bool keep = true;
    for (ObjId o : key.objects)
      if (!idx.object_map[o]) {
        keep = false;
        break;
      }
    if (!keep) continue;
    ComponentKey sub_key;
    sub_key.objects.reserve(key.objects.size());
    sub_key.inputs.reserve(key.inputs.size());
    for (ObjId o : key.objects) sub_key.objects.push_back(*idx.object_map[o]);
    for (BasisId b : key.inputs) sub_key.inputs.push_back(*idx.basis_map[b]);
    for (const auto& t : terms) out.add_term(sub_key, *idx.basis_map[t.basis], t.coefficient);
  }
  return out;
}

bool normalized_check(const Cochain& f) {
  if (!f.in_graph().has_units()) throw std::invalid_argument("graph carries no unit metadata");
  for (const auto& [key, terms] : f.components())
    for (BasisId b : key.inputs)
      if (f.in_graph().basis(b).unit) return false;
  return true;
}

}  // namespace prelie
