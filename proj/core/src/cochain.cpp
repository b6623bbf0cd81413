#include "prelie/cochain.hpp"

#include <stdexcept>

namespace prelie {

int Cochain::min_weight() const {
  int m = kNoCutoff;
  for (const auto& [key, terms] : comps_)
    if (key.weight() < m) m = key.weight();
  return m;
}

int Cochain::max_weight() const {
  int m = 0;
  for (const auto& [key, terms] : comps_)
    if (key.weight() > m) m = key.weight();
  return m;
}

void Cochain::add_term(const ComponentKey& key, BasisId out, const Rational& coefficient) {
  if (key.weight() > cutoff_) return;
  if (coefficient.is_zero()) return;
  int out_sdeg = out_graph_->sdeg(out);
  int in_sum = 0;
  for (BasisId b : key.inputs) in_sum += in_graph_->sdeg(b);
  if (out_sdeg - in_sum != sdeg_)
    throw std::invalid_argument("component violates shifted-degree homogeneity");
  check_component_key(*in_graph_, key);
  auto& terms = comps_[key];
  term_add(terms, out, coefficient);
  if (terms.empty()) comps_.erase(key);
}

void Cochain::add_scaled(const Rational& scale, const Cochain& other) {
  if (other.sdeg_ != sdeg_ && !other.zero())
    throw std::invalid_argument("adding cochains of different shifted degree");
  cutoff_ = std::min(cutoff_, other.cutoff_);
  if (scale.is_zero()) return;
  for (const auto& [key, terms] : other.comps_) {
    if (key.weight() > cutoff_) continue;
    auto& acc = comps_[key];
    term_axpy(acc, scale, terms);
    if (acc.empty()) comps_.erase(key);
  }
  truncate(cutoff_);
}

void Cochain::set_component(const ComponentKey& key, TermList terms) {
  if (key.weight() > cutoff_) return;
  if (terms.empty()) {
    comps_.erase(key);
    return;
  }
  check_component_key(*in_graph_, key);
  comps_[key] = std::move(terms);
}

const TermList* Cochain::component(const ComponentKey& key) const {
  auto it = comps_.find(key);
  return it == comps_.end() ? nullptr : &it->second;
}

void Cochain::truncate(int weight_cutoff) {
  cutoff_ = std::min(cutoff_, weight_cutoff);
  for (auto it = comps_.begin(); it != comps_.end();)
    it = (it->first.weight() > cutoff_) ? comps_.erase(it) : std::next(it);
}

void Cochain::drop_below_weight(int min_weight) {
  for (auto it = comps_.begin(); it != comps_.end();)
    it = (it->first.weight() < min_weight) ? comps_.erase(it) : std::next(it);
}

void Cochain::prune() {
  for (auto it = comps_.begin(); it != comps_.end();)
    it = it->second.empty() ? comps_.erase(it) : std::next(it);
}

Cochain cochain_add(const Cochain& a, const Cochain& b) {
  Cochain r = a;
  r.add_scaled(1, b);
  return r;
}

Cochain cochain_sub(const Cochain& a, const Cochain& b) {
  Cochain r = a;
  r.add_scaled(-1, b);
  return r;
}

Cochain cochain_scaled(const Cochain& a, const Rational& s) {
  Cochain r(a.in_graph(), a.out_graph(), a.shifted_degree(), a.cutoff());
  r.add_scaled(s, a);
  return r;
}

void check_component_key(const GradedGraph& g, const ComponentKey& key) {
  if (key.objects.size() != key.inputs.size() + 1)
    throw std::invalid_argument("component key object sequence has wrong length");
  for (std::size_t i = 0; i < key.inputs.size(); ++i) {
    const auto& e = g.basis(key.inputs[i]);
    if (e.source != key.objects[i] || e.target != key.objects[i + 1])
      throw std::invalid_argument("component key is not composable: input '" + e.id +
                                  "' does not join " + g.object_name(key.objects[i]) + " to " +
                                  g.object_name(key.objects[i + 1]));
  }
}

std::vector<std::pair<ComponentKey, BasisId>> enumerate_elementary(const GradedGraph& g, int sdeg,
                                                                   int min_weight, int max_weight) {
  std::vector<std::pair<ComponentKey, BasisId>> out;
  std::vector<ComponentKey> frontier;
  for (ObjId o = 0; o < g.object_count(); ++o) frontier.push_back({{o}, {}});
  auto harvest = [&](const std::vector<ComponentKey>& keys) {
    for (const auto& key : keys) {
      int in_sum = 0;
      for (BasisId b : key.inputs) in_sum += g.sdeg(b);
      for (BasisId o : g.hom(key.objects.front(), key.objects.back()))
        if (g.sdeg(o) - in_sum == sdeg) out.push_back({key, o});
    }
  };
  if (min_weight <= 0) harvest(frontier);
  for (int w = 1; w <= max_weight; ++w) {
    std::vector<ComponentKey> next;
    for (const auto& key : frontier) {
      ObjId end = key.objects.back();
      for (ObjId t = 0; t < g.object_count(); ++t)
        for (BasisId b : g.hom(end, t)) {
          ComponentKey k = key;
          k.objects.push_back(t);
          k.inputs.push_back(b);
          next.push_back(std::move(k));
        }
    }
    frontier = std::move(next);
    if (w >= min_weight) harvest(frontier);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.first.weight() != b.first.weight()) return a.first.weight() < b.first.weight();
    if (a.first != b.first) return a.first < b.first;
    return a.second < b.second;
  });
  return out;
}

TermList evaluate_graded_map(const Cochain& f, const std::vector<ObjId>& objects,
                             const std::vector<TermList>& args) {
  if (objects.size() != args.size() + 1)
    throw std::invalid_argument("argument word does not match object sequence");
  const GradedGraph& g = f.in_graph();
  for (std::size_t i = 0; i < args.size(); ++i) {
    int deg = 0;
    bool first = true;
    for (const auto& t : args[i]) {
      const auto& e = g.basis(t.basis);
      if (e.source != objects[i] || e.target != objects[i + 1])
        throw std::invalid_argument("argument does not lie in the required hom block");
      if (first) {
        deg = g.sdeg(t.basis);
        first = false;
      } else if (g.sdeg(t.basis) != deg) {
        throw std::invalid_argument("degree-inhomogeneous argument");
      }
    }
  }
  TermList out;
  std::vector<std::size_t> pick(args.size(), 0);
  // Cartesian expansion over the basis terms of each slot.
  std::size_t n = args.size();
  for (const auto& a : args)
    if (a.empty()) return out;
  while (true) {
    ComponentKey key;
    key.objects = objects;
    key.inputs.reserve(n);
    Rational coef = 1;
    for (std::size_t i = 0; i < n; ++i) {
      key.inputs.push_back(args[i][pick[i]].basis);
      coef *= args[i][pick[i]].coefficient;
    }
    if (const TermList* terms = f.component(key)) term_axpy(out, coef, *terms);
    std::size_t i = 0;
    for (; i < n; ++i) {
      if (++pick[i] < args[i].size()) break;
      pick[i] = 0;
    }
    if (i == n) break;
  }
  return out;
}

}  // namespace prelie
