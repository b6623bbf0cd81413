#pragma once

#include <limits>
#include <map>
#include <vector>

#include "prelie/kgraph.hpp"

namespace prelie {

/// Weight beyond which nothing is representable; stands in for "complete".
inline constexpr int kNoCutoff = std::numeric_limits<int>::max() / 4;

struct WeightWindow {
  int min_weight = 0;
  int cutoff = kNoCutoff;
};

/// Key of one elementary component: the object sequence U_0..U_w and the
/// input basis tuple, stored in path order (inputs[i] lies in G(U_i, U_{i+1});
/// the first listed input is the first edge of the path).
struct ComponentKey {
  std::vector<ObjId> objects;  // size weight + 1
  std::vector<BasisId> inputs;  // size weight

  int weight() const { return static_cast<int>(inputs.size()); }
  auto operator<=>(const ComponentKey&) const = default;
};

/// Sparse element of the Hochschild space C(G), homogeneous of one shifted
/// degree. Components of weight > cutoff are unrepresented (unknown), not
/// zero; cutoff == kNoCutoff means the element is stored completely.
///
/// Tables of A-infinity functors and prenatural transformations reuse this
/// type with in_graph != out_graph; output terms then live in out_graph hom
/// blocks determined by the ambient object map.
class Cochain {
 public:
  Cochain() = default;
  Cochain(const GradedGraph& in, const GradedGraph& out, int shifted_degree,
          int cutoff = kNoCutoff)
      : in_graph_(&in), out_graph_(&out), sdeg_(shifted_degree), cutoff_(cutoff) {}
  Cochain(const GradedGraph& g, int shifted_degree, int cutoff = kNoCutoff)
      : Cochain(g, g, shifted_degree, cutoff) {}

  const GradedGraph& in_graph() const { return *in_graph_; }
  const GradedGraph& out_graph() const { return *out_graph_; }
  bool has_graphs() const { return in_graph_ != nullptr; }
  int shifted_degree() const { return sdeg_; }
  int cutoff() const { return cutoff_; }
  void set_cutoff(int c) { cutoff_ = c; }
  bool complete() const { return cutoff_ >= kNoCutoff; }

  const std::map<ComponentKey, TermList>& components() const { return comps_; }
  bool zero() const { return comps_.empty(); }
  /// Minimal stored weight; kNoCutoff when there are no components.
  int min_weight() const;
  int max_weight() const;

  /// Adds coefficient * basis to the component at key, checking degree
  /// homogeneity and in-graph composability. Weights beyond the cutoff are
  /// rejected silently (the caller has declared them unrepresentable).
  void add_term(const ComponentKey& key, BasisId out, const Rational& coefficient);
  void add_scaled(const Rational& scale, const Cochain& other);
  void set_component(const ComponentKey& key, TermList terms);
  const TermList* component(const ComponentKey& key) const;

  void truncate(int weight_cutoff);
  void drop_below_weight(int min_weight);
  void prune();

  friend bool operator==(const Cochain& a, const Cochain& b) {
    return a.sdeg_ == b.sdeg_ && a.comps_ == b.comps_;
  }

 private:
  const GradedGraph* in_graph_ = nullptr;
  const GradedGraph* out_graph_ = nullptr;
  int sdeg_ = 0;
  int cutoff_ = kNoCutoff;
  std::map<ComponentKey, TermList> comps_;
};

Cochain cochain_add(const Cochain& a, const Cochain& b);
Cochain cochain_sub(const Cochain& a, const Cochain& b);
Cochain cochain_scaled(const Cochain& a, const Rational& s);

/// Checks that `key` is a composable object/input sequence over `g` and that
/// every input lies in the hom block it claims. Throws on violation.
void check_component_key(const GradedGraph& g, const ComponentKey& key);

/// All composable (key, output) slots of one shifted degree within a weight
/// range, in canonical (weight, key, output) order. The canonical order makes
/// every downstream matrix and report reproducible.
std::vector<std::pair<ComponentKey, BasisId>> enumerate_elementary(const GradedGraph& g, int sdeg,
                                                                   int min_weight, int max_weight);

/// Linear evaluation of a cochain on a tensor word of term lists placed along
/// `objects`. Every argument must be sdeg-homogeneous; the object sequence
/// must be composable. Pure table lookup: Koszul signs arise only when maps
/// are composed (brace/star), never in a single application.
TermList evaluate_graded_map(const Cochain& f, const std::vector<ObjId>& objects,
                             const std::vector<TermList>& args);

}  // namespace prelie
