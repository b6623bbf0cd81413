#include "prelie/kgraph.hpp"

#include <algorithm>
#include <stdexcept>

namespace prelie {

ObjId GradedGraph::add_object(const std::string& name) {
  if (object_index_.count(name)) throw std::invalid_argument("duplicate object id: " + name);
  ObjId o = static_cast<ObjId>(objects_.size());
  objects_.push_back(name);
  object_index_[name] = o;
  return o;
}

BasisId GradedGraph::add_basis(const std::string& id, const std::string& src,
                               const std::string& tgt, int degree, bool unit) {
  if (basis_index_.count(id)) throw std::invalid_argument("duplicate basis id: " + id);
  auto s = find_object(src);
  auto t = find_object(tgt);
  if (!s || !t) throw std::invalid_argument("basis element " + id + " references unknown object");
  BasisId b = static_cast<BasisId>(basis_.size());
  basis_.push_back(BasisElement{id, degree, *s, *t, unit});
  basis_index_[id] = b;
  homs_[{*s, *t}].push_back(b);
  return b;
}

std::optional<ObjId> GradedGraph::find_object(const std::string& name) const {
  auto it = object_index_.find(name);
  if (it == object_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<BasisId> GradedGraph::find_basis(const std::string& id) const {
  auto it = basis_index_.find(id);
  if (it == basis_index_.end()) return std::nullopt;
  return it->second;
}

const std::vector<BasisId>& GradedGraph::hom(ObjId src, ObjId tgt) const {
  static const std::vector<BasisId> empty;
  auto it = homs_.find({src, tgt});
  return it == homs_.end() ? empty : it->second;
}

std::optional<BasisId> GradedGraph::unit_of(ObjId o) const {
  for (BasisId b : hom(o, o))
    if (basis_[b].unit) return b;
  return std::nullopt;
}

bool GradedGraph::has_units() const {
  for (ObjId o = 0; o < objects_.size(); ++o)
    if (!unit_of(o)) return false;
  return true;
}

void GradedGraph::file_basis_under(BasisId b, ObjId src, ObjId tgt) {
  for (auto& [key, list] : homs_) {
    auto it = std::find(list.begin(), list.end(), b);
    if (it != list.end()) list.erase(it);
  }
  homs_[{src, tgt}].push_back(b);
}

int GradedGraph::min_degree() const {
  int m = 0;
  bool first = true;
  for (const auto& b : basis_) {
    if (first || b.degree < m) m = b.degree;
    first = false;
  }
  return m;
}

int GradedGraph::max_degree() const {
  int m = 0;
  bool first = true;
  for (const auto& b : basis_) {
    if (first || b.degree > m) m = b.degree;
    first = false;
  }
  return m;
}

bool same_presentation(const GradedGraph& a, const GradedGraph& b) {
  if (&a == &b) return true;
  if (a.object_count() != b.object_count() || a.basis_count() != b.basis_count()) return false;
  for (ObjId o = 0; o < a.object_count(); ++o)
    if (a.object_name(o) != b.object_name(o)) return false;
  for (BasisId i = 0; i < a.basis_count(); ++i) {
    const auto& x = a.basis(i);
    const auto& y = b.basis(i);
    if (x.id != y.id || x.degree != y.degree || x.source != y.source || x.target != y.target ||
        x.unit != y.unit)
      return false;
  }
  return true;
}

std::vector<std::string> validate_graph(const GradedGraph& g) {
  std::vector<std::string> diags;
  for (ObjId s = 0; s < g.object_count(); ++s) {
    for (ObjId t = 0; t < g.object_count(); ++t) {
      for (BasisId b : g.hom(s, t)) {
        const auto& e = g.basis(b);
        if (e.source != s || e.target != t)
          diags.push_back("basis element '" + e.id + "' filed under hom(" + g.object_name(s) +
                          ", " + g.object_name(t) + ") but declares (" +
                          g.object_name(e.source) + ", " + g.object_name(e.target) + ")");
      }
    }
  }
  for (BasisId b = 0; b < g.basis_count(); ++b) {
    const auto& e = g.basis(b);
    if (e.unit && e.degree != 0)
      diags.push_back("unit element '" + e.id + "' has degree " + std::to_string(e.degree));
    if (e.unit && e.source != e.target)
      diags.push_back("unit element '" + e.id + "' is not an endomorphism");
  }
  for (ObjId o = 0; o < g.object_count(); ++o) {
    int units = 0;
    for (BasisId b : g.hom(o, o))
      if (g.basis(b).unit) ++units;
    if (units > 1)
      diags.push_back("object '" + g.object_name(o) + "' declares more than one unit");
  }
  return diags;
}

RestrictionIndex include_full_subgraph(const GradedGraph& g, const std::vector<ObjId>& objects) {
  RestrictionIndex idx;
  idx.parent = &g;
  idx.objects = objects;
  idx.object_map.assign(g.object_count(), std::nullopt);
  idx.basis_map.assign(g.basis_count(), std::nullopt);
  idx.sub_graph = std::make_unique<GradedGraph>();
  for (ObjId o : objects) {
    if (o >= g.object_count()) throw std::invalid_argument("unknown object id in subgraph request");
    idx.object_map[o] = idx.sub_graph->add_object(g.object_name(o));
  }
  for (BasisId b = 0; b < g.basis_count(); ++b) {
    const auto& e = g.basis(b);
    if (idx.object_map[e.source] && idx.object_map[e.target])
      idx.basis_map[b] = idx.sub_graph->add_basis(e.id, g.object_name(e.source),
                                                  g.object_name(e.target), e.degree, e.unit);
  }
  return idx;
}

CategoryAlgebraView category_algebra_view(const GradedGraph& g) {
  CategoryAlgebraView view;
  view.graph = &g;
  for (BasisId b = 0; b < g.basis_count(); ++b) {
    const auto& e = g.basis(b);
    view.blocks[{e.source, e.target}].push_back(b);
    ++view.total_dimension;
  }
  return view;
}

}  // namespace prelie
