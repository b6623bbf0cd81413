#include "prelie/cohomology.hpp"

#include "prelie/integration.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace prelie {

namespace {

struct Coords {
  std::map<std::pair<ComponentKey, BasisId>, std::size_t> idx;

  std::size_t get(const ComponentKey& k, BasisId b) {
    auto key = std::make_pair(k, b);
    auto it = idx.find(key);
    if (it == idx.end()) it = idx.emplace(std::move(key), idx.size()).first;
    return it->second;
  }
};

Cochain from_vector(const GradedGraph& g, int sdeg,
                    const std::vector<std::pair<ComponentKey, BasisId>>& slots,
                    const QVector& v) {
  Cochain c(g, sdeg);
  for (std::size_t i = 0; i < slots.size() && i < v.size(); ++i)
    if (!v[i].is_zero()) c.add_term(slots[i].first, slots[i].second, v[i]);
  return c;
}

struct DegreeBlock {
  std::vector<std::pair<ComponentKey, BasisId>> slots;
  std::vector<QVector> kernel;
  RowSpace boundaries{0};
  std::vector<QVector> reps;
};

/// Kernel/boundary analysis of the complex degree p within a source weight
/// range. The differential of each enumerated slot is computed in full, so
/// kernels are true cocycle spaces; boundary combinations are kept only when
/// their image stays inside the source window.
DegreeBlock analyze_degree(const AStructure& a, int p, int src_min_w, int src_max_w,
                           int prev_min_w, int prev_max_w) {
  const GradedGraph& g = a.graph();
  const WeightWindow full{0, kNoCutoff};
  DegreeBlock r;
  r.slots = enumerate_elementary(g, p, src_min_w, src_max_w);
  const std::size_t n = r.slots.size();
  r.boundaries = RowSpace(n);

  {  // Kernel of d restricted to the enumerated sources.
    Coords img;
    std::vector<std::vector<std::pair<std::size_t, Rational>>> cols(n);
    for (std::size_t j = 0; j < n; ++j) {
      Cochain e(g, p);
      e.add_term(r.slots[j].first, r.slots[j].second, 1);
      Cochain de = differential(e, a, full);
      for (const auto& [key, terms] : de.components())
        for (const auto& t : terms) cols[j].push_back({img.get(key, t.basis), t.coefficient});
    }
    QMatrix m(img.idx.size(), n);
    for (std::size_t j = 0; j < n; ++j)
      for (const auto& [row, val] : cols[j]) m.at(row, j) = val;
    r.kernel = kernel_basis(m);
  }

  {  // Boundaries landing inside the source window.
    Coords coords;
    for (const auto& s : r.slots) coords.get(s.first, s.second);
    auto prev = enumerate_elementary(g, p - 1, std::max(0, prev_min_w), prev_max_w);
    std::vector<std::vector<std::pair<std::size_t, Rational>>> cols(prev.size());
    for (std::size_t j = 0; j < prev.size(); ++j) {
      Cochain u(g, p - 1);
      u.add_term(prev[j].first, prev[j].second, 1);
      Cochain du = differential(u, a, full);
      for (const auto& [key, terms] : du.components())
        for (const auto& t : terms) cols[j].push_back({coords.get(key, t.basis), t.coefficient});
    }
    const std::size_t total = coords.idx.size();
    if (total == n) {
      for (std::size_t j = 0; j < prev.size(); ++j) {
        QVector v(n);
        for (const auto& [row, val] : cols[j]) v[row] = val;
        r.boundaries.add(std::move(v));
      }
    } else {
      // Keep only combinations whose image vanishes outside the window.
      QMatrix outside(total - n, prev.size());
      for (std::size_t j = 0; j < prev.size(); ++j)
        for (const auto& [row, val] : cols[j])
          if (row >= n) outside.at(row - n, j) = val;
      for (const QVector& combo : kernel_basis(outside)) {
        QVector v(n);
        for (std::size_t j = 0; j < prev.size(); ++j) {
          if (combo[j].is_zero()) continue;
          for (const auto& [row, val] : cols[j])
            if (row < n) v[row] += combo[j] * val;
        }
        r.boundaries.add(std::move(v));
      }
    }
  }

  RowSpace quot = r.boundaries;
  for (const QVector& kv : r.kernel)
    if (quot.add(kv)) r.reps.push_back(kv);
  return r;
}

/// No weight beyond the cutoff can host an elementary component of shifted
/// degree p: checked against the degree interval of the graph's basis.
bool tail_vanishes_certificate(const GradedGraph& g, int p, int cutoff) {
  if (g.basis_count() == 0) return true;
  int min_s = g.sdeg(0), max_s = g.sdeg(0);
  for (BasisId b = 1; b < g.basis_count(); ++b) {
    min_s = std::min(min_s, g.sdeg(b));
    max_s = std::max(max_s, g.sdeg(b));
  }
  for (int w = cutoff + 1;; ++w) {
    long long lo = min_s - static_cast<long long>(w) * max_s;
    long long hi = max_s - static_cast<long long>(w) * min_s;
    if (p >= lo && p <= hi) return false;
    if (p < lo && max_s <= 0) return true;   // lo never decreases
    if (p > hi && min_s >= 0) return true;   // hi never increases
    if (w > cutoff + 4 * (std::abs(p) + std::abs(min_s) + std::abs(max_s) + 4)) return false;
  }
}

int pure_weight(const Cochain& mu) {
  int w = -1;
  for (const auto& [key, terms] : mu.components()) {
    if (w == -1) w = key.weight();
    if (key.weight() != w) return -1;
  }
  return w;
}

}  // namespace

Cochain differential(const Cochain& f, const AStructure& a, const WeightWindow& win) {
  return gerstenhaber_bracket(a.mu, f, win);
}

CohomologyReport hochschild_cohomology(const AStructure& a, int hh_degree,
                                       const WeightWindow& win) {
  const int p = hh_degree - 1;
  const GradedGraph& g = a.graph();
  CohomologyReport report;
  report.hh_degree = hh_degree;
  report.window = win;
  report.tail_vanishes = tail_vanishes_certificate(g, p, win.cutoff);

  const int k = pure_weight(a.mu);
  report.per_weight_lines = (k >= 2);

  if (report.per_weight_lines) {
    for (int w = std::max(0, win.min_weight); w <= win.cutoff; ++w) {
      DegreeBlock block = analyze_degree(a, p, w, w, w - k + 1, w);
      WeightLineReport line;
      line.weight = w;
      line.cocycle_dim = block.kernel.size();
      line.boundary_dim = block.boundaries.dim();
      line.class_dim = block.reps.size();
      line.exact = a.mu.complete();
      for (const QVector& v : block.reps)
        line.representatives.push_back(from_vector(g, p, block.slots, v));
      report.total_classes += line.class_dim;
      report.lines.push_back(std::move(line));
    }
  } else {
    DegreeBlock block = analyze_degree(a, p, std::max(0, win.min_weight), win.cutoff, 0,
                                       win.cutoff);
    WeightLineReport line;
    line.weight = -1;
    line.cocycle_dim = block.kernel.size();
    line.boundary_dim = block.boundaries.dim();
    line.class_dim = block.reps.size();
    line.exact = a.mu.complete();
    for (const QVector& v : block.reps)
      line.representatives.push_back(from_vector(g, p, block.slots, v));
    report.total_classes = line.class_dim;
    report.lines.push_back(std::move(line));
  }
  return report;
}

namespace {

/// Class data of one hom block in one degree of the graded homotopy category.
struct HomClasses {
  std::vector<BasisId> block;            // ordered basis of the hom block
  std::vector<QVector> reps;             // class representatives, block coords
  RowSpace boundaries{0};
  std::vector<QVector> rep_cols;         // solver columns: reps then boundary rows
};

QVector block_coords(const std::vector<BasisId>& block, const TermList& terms) {
  QVector v(block.size());
  for (const auto& t : terms) {
    auto it = std::find(block.begin(), block.end(), t.basis);
    if (it == block.end()) throw std::logic_error("term outside its hom block");
    v[it - block.begin()] = t.coefficient;
  }
  return v;
}

TermList block_terms(const std::vector<BasisId>& block, const QVector& v) {
  TermList out;
  for (std::size_t i = 0; i < block.size(); ++i)
    if (!v[i].is_zero()) term_add(out, block[i], v[i]);
  return out;
}

/// Expresses a cocycle's class in the chosen representatives.
QVector class_coordinates(const HomClasses& h, const QVector& value) {
  if (h.reps.empty()) return {};
  QMatrix m(h.block.size(), h.reps.size() + h.boundaries.dim());
  for (std::size_t j = 0; j < h.reps.size(); ++j)
    for (std::size_t i = 0; i < h.block.size(); ++i) m.at(i, j) = h.reps[j][i];
  for (std::size_t j = 0; j < h.boundaries.dim(); ++j)
    for (std::size_t i = 0; i < h.block.size(); ++i)
      m.at(i, h.reps.size() + j) = h.boundaries.rows()[j][i];
  auto x = solve(m, value);
  if (!x) throw std::logic_error("value is not a cocycle class of its block");
  return QVector(x->begin(), x->begin() + h.reps.size());
}

struct HomotopyCategory {
  const AStructure* a = nullptr;
  Cochain m_table;
  // (source, target, degree) -> classes
  std::map<std::tuple<ObjId, ObjId, int>, HomClasses> blocks;

  const HomClasses* find(ObjId x, ObjId y, int d) const {
    auto it = blocks.find({x, y, d});
    return it == blocks.end() ? nullptr : &it->second;
  }
};

HomotopyCategory homotopy_category(const AStructure& a) {
  HomotopyCategory H;
  H.a = &a;
  H.m_table = convert_convention(a.mu);
  const GradedGraph& g = a.graph();
  for (ObjId x = 0; x < g.object_count(); ++x) {
    for (ObjId y = 0; y < g.object_count(); ++y) {
      const auto& block = g.hom(x, y);
      if (block.empty()) continue;
      std::set<int> degrees;
      for (BasisId b : block) degrees.insert(g.basis(b).degree);
      auto d_of = [&](BasisId b) {
        TermList out;
        ComponentKey key{{x, y}, {b}};
        if (const TermList* t = H.m_table.component(key)) out = *t;
        return out;
      };
      for (int d : degrees) {
        HomClasses h;
        h.block = block;
        // Kernel of m^1 on the degree-d part.
        std::vector<std::size_t> deg_idx;
        for (std::size_t i = 0; i < block.size(); ++i)
          if (g.basis(block[i]).degree == d) deg_idx.push_back(i);
        QMatrix m(block.size(), deg_idx.size());
        for (std::size_t j = 0; j < deg_idx.size(); ++j)
          for (const auto& t : d_of(block[deg_idx[j]])) {
            auto it = std::find(block.begin(), block.end(), t.basis);
            m.at(it - block.begin(), j) = t.coefficient;
          }
        std::vector<QVector> ker = kernel_basis(m);
        h.boundaries = RowSpace(block.size());
        for (std::size_t i = 0; i < block.size(); ++i) {
          if (g.basis(block[i]).degree != d - 1) continue;
          QVector bd(block.size());
          for (const auto& t : d_of(block[i])) {
            auto it = std::find(block.begin(), block.end(), t.basis);
            bd[it - block.begin()] = t.coefficient;
          }
          h.boundaries.add(std::move(bd));
        }
        RowSpace quot = h.boundaries;
        for (const QVector& kv : ker) {
          QVector full(block.size());
          for (std::size_t j = 0; j < deg_idx.size(); ++j) full[deg_idx[j]] = kv[j];
          if (quot.add(full)) h.reps.push_back(std::move(full));
        }
        if (!h.reps.empty() || h.boundaries.dim() > 0) H.blocks[{x, y, d}] = std::move(h);
      }
    }
  }
  return H;
}

}  // namespace

CenterReport graded_center(const AStructure& a, const WeightWindow& win) {
  const GradedGraph& g = a.graph();
  if (!g.has_units())
    throw std::invalid_argument("graded_center requires strict unit metadata");
  HomotopyCategory H = homotopy_category(a);

  CenterReport report;
  std::vector<std::pair<ObjId, std::size_t>> var_of;  // (object, local rep index)
  std::map<ObjId, const HomClasses*> diag;
  for (ObjId x = 0; x < g.object_count(); ++x) {
    const HomClasses* h = H.find(x, x, 0);
    diag[x] = h;
    if (!h) continue;
    for (std::size_t k = 0; k < h->reps.size(); ++k) {
      report.h0_basis.push_back({x, block_terms(h->block, h->reps[k])});
      var_of.push_back({x, k});
    }
  }
  const std::size_t nvars = var_of.size();

  // Centrality against every class of the graded homotopy category.
  std::vector<QVector> rows;
  for (const auto& [key, h] : H.blocks) {
    auto [x, y, d] = key;
    for (const QVector& frep : h.reps) {
      TermList f = block_terms(h.block, frep);
      std::vector<QVector> images(nvars);
      bool any = false;
      for (std::size_t v = 0; v < nvars; ++v) {
        auto [obj, k] = var_of[v];
        TermList commutator;
        if (obj == x) {
          TermList phi = block_terms(diag[x]->block, diag[x]->reps[k]);
          term_axpy(commutator, 1,
                    evaluate_graded_map(H.m_table, {x, x, y}, {phi, f}));
        }
        if (obj == y) {
          TermList phi = block_terms(diag[y]->block, diag[y]->reps[k]);
          term_axpy(commutator, -1,
                    evaluate_graded_map(H.m_table, {x, y, y}, {f, phi}));
        }
        if (!commutator.empty()) any = true;
        images[v] = class_coordinates(h, block_coords(h.block, commutator));
      }
      if (!any) continue;
      std::size_t m = h.reps.size();
      for (std::size_t r = 0; r < m; ++r) {
        QVector row(nvars);
        bool nonzero = false;
        for (std::size_t v = 0; v < nvars; ++v) {
          if (images[v].empty()) continue;
          row[v] = images[v][r];
          nonzero = nonzero || !row[v].is_zero();
        }
        if (nonzero) rows.push_back(std::move(row));
      }
    }
  }
  QMatrix constraints(rows.size(), nvars);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < nvars; ++j) constraints.at(i, j) = rows[i][j];
  report.center_basis = kernel_basis(constraints);

  // Object components linked by nonzero hom classes.
  std::vector<std::size_t> parent(g.object_count());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t v) {
    return parent[v] == v ? v : parent[v] = find(parent[v]);
  };
  for (const auto& [key, h] : H.blocks) {
    auto [x, y, d] = key;
    if (!h.reps.empty()) parent[find(x)] = find(y);
  }
  std::map<std::size_t, std::vector<ObjId>> comps;
  for (ObjId x = 0; x < g.object_count(); ++x) comps[find(x)].push_back(x);
  for (auto& [root, objs] : comps) report.idempotent_components.push_back(objs);

  // Unit families per component span the center exactly when dimensions
  // match and each family is central.
  if (report.center_basis.size() == report.idempotent_components.size()) {
    RowSpace span(nvars);
    for (const QVector& c : report.center_basis) span.add(c);
    bool ok = true;
    for (const auto& objs : report.idempotent_components) {
      QVector fam(nvars);
      for (std::size_t v = 0; v < nvars; ++v) {
        auto [obj, k] = var_of[v];
        if (std::find(objs.begin(), objs.end(), obj) == objs.end()) continue;
        const HomClasses* h = diag[obj];
        QVector unit = class_coordinates(*h, block_coords(h->block, TermList{{*g.unit_of(obj),
                                                                              Rational(1)}}));
        fam[v] = unit[k];
      }
      if (!span.contains(fam)) ok = false;
    }
    report.center_spanned_by_idempotents = ok;
  }
  (void)win;
  return report;
}

CharacteristicResult characteristic_morphism(const AStructure& a,
                                             const std::vector<Cochain>& classes,
                                             CenterReport& report, const WeightWindow& win) {
  const GradedGraph& g = a.graph();
  HomotopyCategory H = homotopy_category(a);
  CharacteristicResult result;

  std::vector<std::pair<ObjId, std::size_t>> var_of;
  std::map<ObjId, const HomClasses*> diag;
  for (ObjId x = 0; x < g.object_count(); ++x) {
    const HomClasses* h = H.find(x, x, 0);
    diag[x] = h;
    if (!h) continue;
    for (std::size_t k = 0; k < h->reps.size(); ++k) var_of.push_back({x, k});
  }
  const std::size_t nvars = var_of.size();

  report.pi0_image.clear();
  for (const Cochain& c : classes) {
    if (c.shifted_degree() != -1)
      throw std::invalid_argument("characteristic morphism expects HH^0 classes (degree -1)");
    Cochain res = differential(c, a, {0, kNoCutoff});
    if (!res.zero()) throw std::invalid_argument("characteristic morphism: input is not a cocycle");
    QVector image(nvars);
    for (ObjId x = 0; x < g.object_count(); ++x) {
      const TermList* t = c.component(ComponentKey{{x}, {}});
      if (!t || !diag[x]) continue;
      QVector coords = class_coordinates(*diag[x], block_coords(diag[x]->block, *t));
      std::size_t base = 0;
      for (std::size_t v = 0; v < nvars; ++v)
        if (var_of[v].first == x) {
          image[v] = coords[var_of[v].second];
          (void)base;
        }
    }
    result.class_images.push_back(image);
    report.pi0_image.push_back(std::move(image));
  }

  // Units lie in the image iff Pi^0 surjects onto the center: over Q the
  // units of a finite-dimensional algebra span it.
  RowSpace image_span(nvars);
  for (const QVector& v : report.pi0_image) image_span.add(v);
  bool onto = true;
  for (const QVector& c : report.center_basis)
    if (!image_span.contains(c)) onto = false;
  report.units_in_image = onto && !report.center_basis.empty();

  // Formal inputs: strict sections realize every center element as a class.
  if (a.minimal()) {
    bool split = true;
    for (const QVector& c : report.center_basis) {
      Cochain strict(g, -1);
      for (std::size_t v = 0; v < nvars; ++v) {
        if (c[v].is_zero()) continue;
        auto [obj, k] = var_of[v];
        TermList phi = term_scaled(block_terms(diag[obj]->block, diag[obj]->reps[k]), c[v]);
        for (const auto& t : phi) strict.add_term(ComponentKey{{obj}, {}}, t.basis, t.coefficient);
      }
      Cochain res = differential(strict, a, {0, kNoCutoff});
      if (!res.zero()) {
        split = false;
        continue;
      }
      // Pi of the strict section must return the same center coordinates.
      QVector image(nvars);
      for (ObjId x = 0; x < g.object_count(); ++x) {
        const TermList* t = strict.component(ComponentKey{{x}, {}});
        if (!t || !diag[x]) continue;
        QVector coords = class_coordinates(*diag[x], block_coords(diag[x]->block, *t));
        for (std::size_t v = 0; v < nvars; ++v)
          if (var_of[v].first == x) image[v] = coords[var_of[v].second];
      }
      if (image != c) split = false;
    }
    result.graded_split_holds = split;
  }
  (void)win;
  return result;
}

InducedMapReport induced_map_on_HH(const AStructure& parent, const RestrictionIndex& idx,
                                   const AStructure& sub, const CohomologyReport& parent_report,
                                   const CohomologyReport& sub_report, const WeightWindow& win) {
  if (parent_report.hh_degree != sub_report.hh_degree)
    throw std::invalid_argument("induced_map_on_HH: degree mismatch");
  if (parent_report.window.cutoff != sub_report.window.cutoff)
    throw std::invalid_argument("induced_map_on_HH: window mismatch");
  const int p = parent_report.hh_degree - 1;

  // Rebuild the subcategory block to express restricted classes.
  DegreeBlock block = analyze_degree(sub, p, std::max(0, win.min_weight), win.cutoff, 0,
                                     win.cutoff);
  std::map<std::pair<ComponentKey, BasisId>, std::size_t> slot_index;
  for (std::size_t i = 0; i < block.slots.size(); ++i) slot_index[block.slots[i]] = i;
  const std::size_t n = block.slots.size();

  std::vector<const Cochain*> parent_reps;
  for (const auto& line : parent_report.lines)
    for (const auto& rep : line.representatives) parent_reps.push_back(&rep);
  std::vector<const Cochain*> sub_reps;
  for (const auto& line : sub_report.lines)
    for (const auto& rep : line.representatives) sub_reps.push_back(&rep);

  InducedMapReport out;
  out.matrix = QMatrix(sub_reps.size(), parent_reps.size());
  // Solve restricted = sum_j x_j subrep_j + boundary.
  QMatrix m(n, sub_reps.size() + block.boundaries.dim());
  for (std::size_t j = 0; j < sub_reps.size(); ++j)
    for (const auto& [key, terms] : sub_reps[j]->components())
      for (const auto& t : terms) m.at(slot_index.at({key, t.basis}), j) = t.coefficient;
  for (std::size_t j = 0; j < block.boundaries.dim(); ++j)
    for (std::size_t i = 0; i < n; ++i)
      m.at(i, sub_reps.size() + j) = block.boundaries.rows()[j][i];

  for (std::size_t c = 0; c < parent_reps.size(); ++c) {
    Cochain restricted = restrict_cochain(*parent_reps[c], idx);
    QVector v(n);
    for (const auto& [key, terms] : restricted.components())
      for (const auto& t : terms) {
        auto it = slot_index.find({key, t.basis});
        if (it == slot_index.end())
          throw std::logic_error("restricted class leaves the analyzed window");
        v[it->second] = t.coefficient;
      }
    auto x = solve(m, v);
    if (!x) throw std::logic_error("restricted representative is not a subgraph cocycle class");
    for (std::size_t r = 0; r < sub_reps.size(); ++r) out.matrix.at(r, c) = (*x)[r];
  }
  out.injective = rank(out.matrix) == parent_reps.size();
  out.surjective = rank(out.matrix) == sub_reps.size();
  return out;
}

Isotopy integrate_class(const AStructure& a, const Cochain& v, const WeightWindow& win) {
  if (v.shifted_degree() != 0 || v.min_weight() < 2)
    throw std::invalid_argument("integrate_class expects a degree-0 element of W_2");
  Cochain res = differential(v, a, {0, v.complete() ? kNoCutoff : v.cutoff()});
  if (!res.zero()) {
    std::string msg = "integrate_class: input is not a cocycle; d(v) has " +
                      std::to_string(res.components().size()) + " nonzero component(s)";
    throw std::invalid_argument(msg);
  }
  return make_isotopy(a, exp_prelie(v, win).plus);
}

}  // namespace prelie
