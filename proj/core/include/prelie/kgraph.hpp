#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "prelie/graded.hpp"

namespace prelie {

/// A k-graph: an ordered object set and finite graded hom bases. Objects and
/// basis elements keep their insertion order; that order fixes every
/// downstream matrix row/column order and hence all reported bases.
class GradedGraph {
 public:
  ObjId add_object(const std::string& name);
  BasisId add_basis(const std::string& id, const std::string& src, const std::string& tgt,
                    int degree, bool unit = false);

  std::size_t object_count() const { return objects_.size(); }
  std::size_t basis_count() const { return basis_.size(); }
  const std::string& object_name(ObjId o) const { return objects_[o]; }
  const BasisElement& basis(BasisId b) const { return basis_[b]; }
  std::optional<ObjId> find_object(const std::string& name) const;
  std::optional<BasisId> find_basis(const std::string& id) const;

  /// Ordered basis of the hom block G(src, tgt); empty if none.
  const std::vector<BasisId>& hom(ObjId src, ObjId tgt) const;

  /// Unit basis element of an object, if the graph carries unit metadata.
  std::optional<BasisId> unit_of(ObjId o) const;
  bool has_units() const;

  int sdeg(BasisId b) const { return basis_[b].degree - 1; }

  /// Hom block a raw basis element was filed under; normally equals its
  /// (source, target) but raw construction may disagree (see validate_graph).
  void file_basis_under(BasisId b, ObjId src, ObjId tgt);

  int min_degree() const;
  int max_degree() const;

 private:
  std::vector<std::string> objects_;
  std::vector<BasisElement> basis_;
  std::map<std::string, ObjId> object_index_;
  std::map<std::string, BasisId> basis_index_;
  std::map<std::pair<ObjId, ObjId>, std::vector<BasisId>> homs_;
};

/// Equality of graphs as presented: same object and basis lists in order.
bool same_presentation(const GradedGraph& a, const GradedGraph& b);

std::vector<std::string> validate_graph(const GradedGraph& g);

/// Data of a fully faithful inclusion of the full subgraph on `objects`.
/// The subgraph is heap-allocated so that cochains built over it survive
/// moves of the index.
struct RestrictionIndex {
  const GradedGraph* parent = nullptr;
  std::vector<ObjId> objects;                    // parent object ids kept
  std::vector<std::optional<ObjId>> object_map;  // parent obj -> sub obj
  std::vector<std::optional<BasisId>> basis_map;  // parent basis -> sub basis
  std::unique_ptr<GradedGraph> sub_graph;

  const GradedGraph& sub() const { return *sub_graph; }
};

RestrictionIndex include_full_subgraph(const GradedGraph& g, const std::vector<ObjId>& objects);

/// The direct-sum decomposition of the category algebra k[G]: every basis id
/// lies in exactly one (source, target) block.
struct CategoryAlgebraView {
  const GradedGraph* graph = nullptr;
  std::map<std::pair<ObjId, ObjId>, std::vector<BasisId>> blocks;
  std::size_t total_dimension = 0;
};

CategoryAlgebraView category_algebra_view(const GradedGraph& g);

}  // namespace prelie
