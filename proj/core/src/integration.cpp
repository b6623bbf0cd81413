#include "prelie/integration.hpp"

#include <stdexcept>

namespace prelie {

namespace {

void require_plus(const Cochain& v, const char* what) {
  if (v.shifted_degree() != 0)
    throw std::invalid_argument(std::string(what) + ": shifted degree must be 0");
  if (v.min_weight() < 2)
    throw std::invalid_argument(std::string(what) + ": weight must be >= 2");
}

void require_finite_window(const Cochain& v, const WeightWindow& win, const char* what) {
  if (win.cutoff >= kNoCutoff && !v.zero())
    throw std::invalid_argument(std::string(what) + ": series needs a finite weight window");
}

}  // namespace

GroupLike make_group_like(Cochain plus) {
  require_plus(plus, "group-like element");
  return GroupLike{std::move(plus)};
}

GroupLike exp_prelie(const Cochain& v, const WeightWindow& win) {
  require_plus(v, "exp");
  require_finite_window(v, win, "exp");
  Cochain acc(v.in_graph(), 0, win.cutoff);
  Cochain power = v;  // v^1
  power.truncate(win.cutoff);
  Rational coef = 1;
  for (int r = 1; !power.zero(); ++r) {
    coef /= r;
    acc.add_scaled(coef, power);
    if (power.min_weight() + v.min_weight() - 1 > win.cutoff) break;
    power = star(power, v, win);
  }
  acc.set_cutoff(std::min(acc.cutoff(), win.cutoff));
  return GroupLike{std::move(acc)};
}

Cochain log_prelie(const GroupLike& g, const WeightWindow& win) {
  require_finite_window(g.plus, win, "log");
  const int cutoff = std::min(win.cutoff, g.plus.cutoff());
  Cochain v(g.plus.in_graph(), 0, cutoff);
  for (int w = 2; w <= cutoff; ++w) {
    Cochain expanded =
        v.zero() ? Cochain(g.plus.in_graph(), 0, cutoff) : exp_prelie(v, {0, cutoff}).plus;
    Cochain delta = cochain_sub(g.plus, expanded);
    delta.drop_below_weight(w);
    delta.truncate(w);
    // The weight-w slice is exactly the correction making exp(v) match g
    // there; clearing the truncation stamp keeps v trustworthy up to cutoff.
    delta.set_cutoff(kNoCutoff);
    v.add_scaled(1, delta);
  }
  // The inversion is validated once per call; exp after log must reproduce g.
  Cochain check = v.zero() ? Cochain(g.plus.in_graph(), 0, cutoff)
                           : exp_prelie(v, {0, cutoff}).plus;
  check.add_scaled(-1, g.plus);
  check.truncate(cutoff);
  if (!check.zero()) throw std::logic_error("log_prelie: inversion failed to reproduce input");
  return v;
}

Cochain odot(const Cochain& u, const GroupLike& g, const WeightWindow& win) {
  if (g.plus.zero()) {
    Cochain r = u;
    r.truncate(win.cutoff);
    return r;
  }
  if (g.plus.shifted_degree() % 2 != 0) return odot_symmetric(u, g, win);
  Cochain acc = u;
  acc.truncate(win.cutoff);
  std::vector<const Cochain*> args;
  const int gain = g.plus.min_weight() - 1;  // >= 1
  for (int n = 1; n <= u.max_weight(); ++n) {
    args.push_back(&g.plus);
    if (u.min_weight() + n * gain > win.cutoff) break;
    acc.add_scaled(1, brace(u, args, win));
  }
  return acc;
}

Cochain odot_symmetric(const Cochain& u, const GroupLike& g, const WeightWindow& win) {
  Cochain acc = u;
  acc.truncate(win.cutoff);
  if (g.plus.zero()) return acc;
  std::vector<const Cochain*> args;
  const int gain = g.plus.min_weight() - 1;
  Rational coef = 1;
  for (int n = 1; n <= u.max_weight(); ++n) {
    args.push_back(&g.plus);
    coef /= n;
    if (u.min_weight() + n * gain > win.cutoff) break;
    acc.add_scaled(coef, symmetric_brace(u, args, win));
  }
  return acc;
}

GroupLike odot_group(const GroupLike& a, const GroupLike& b, const WeightWindow& win) {
  // (1 + a)(.)( 1 + b) = 1 + b_plus + a_plus (.) (1 + b).
  Cochain plus = odot(a.plus, b, win);
  plus.add_scaled(1, b.plus);
  plus.truncate(win.cutoff);
  return GroupLike{std::move(plus)};
}

GroupLike odot_inverse(const GroupLike& g, const WeightWindow& win) {
  Cochain v = log_prelie(g, win);
  if (v.zero()) return GroupLike{Cochain(g.plus.in_graph(), 0, std::min(win.cutoff, g.plus.cutoff()))};
  return exp_prelie(cochain_scaled(v, -1), win);
}

namespace {

/// One Dynkin block word ad_u^{m_1} ad_v^{n_1} ... applied to the tail letter.
struct DynkinState {
  const Cochain* u;
  const Cochain* v;
  WeightWindow win;
  Cochain acc;
};

void dynkin_recurse(DynkinState& st, std::vector<std::pair<int, int>>& blocks, int letters_used,
                    int max_letters, int depth_limit) {
  // Close the current sequence: evaluate its bracket word if the tail is
  // admissible (n_i = 1 tail ends on v; n_i = 0, m_i = 1 ends on u; higher
  // tail powers vanish against [x, x] = 0 in degree 0).
  if (!blocks.empty()) {
    const auto [mi, ni] = blocks.back();
    bool tail_ok = (ni == 1) || (ni == 0 && mi == 1);
    int total = 0;
    for (auto [m, n] : blocks) total += m + n;
    if (tail_ok && total >= 2) {
      int i = static_cast<int>(blocks.size());
      Rational coef = Rational((i - 1) % 2 == 0 ? 1 : -1, i) / total;
      for (auto [m, n] : blocks) coef /= factorial(m) * factorial(n);
      // Build ad_u^{m_1} ad_v^{n_1} ... from the inside out.
      Cochain word = (ni == 1) ? *st.v : *st.u;
      bool dead = false;
      auto apply_ad = [&](const Cochain& x, int times) {
        for (int t = 0; t < times && !dead; ++t) {
          word = gerstenhaber_bracket(x, word, st.win);
          if (word.zero()) dead = true;
        }
      };
      for (int bidx = static_cast<int>(blocks.size()) - 1; bidx >= 0 && !dead; --bidx) {
        auto [m, n] = blocks[bidx];
        if (bidx == static_cast<int>(blocks.size()) - 1) {
          if (ni == 1)
            apply_ad(*st.v, n - 1);
          else
            apply_ad(*st.u, m - 1);
          if (ni == 1) apply_ad(*st.u, m);
        } else {
          apply_ad(*st.v, n);
          apply_ad(*st.u, m);
        }
      }
      if (!dead) st.acc.add_scaled(coef, word);
    }
  }
  if (static_cast<int>(blocks.size()) >= depth_limit) return;
  for (int m = 0; m <= max_letters - letters_used; ++m) {
    for (int n = (m == 0) ? 1 : 0; m + n <= max_letters - letters_used; ++n) {
      if (m + n == 0) continue;
      blocks.push_back({m, n});
      dynkin_recurse(st, blocks, letters_used + m + n, max_letters, depth_limit);
      blocks.pop_back();
    }
  }
}

}  // namespace

Cochain bch(const Cochain& u, const Cochain& v, const WeightWindow& win) {
  require_plus(u, "bch");
  require_plus(v, "bch");
  require_finite_window(u, win, "bch");
  require_finite_window(v, win, "bch");
  DynkinState st{&u, &v, win, Cochain(u.in_graph(), 0, win.cutoff)};
  st.acc.add_scaled(1, u);
  st.acc.add_scaled(1, v);
  st.acc.truncate(win.cutoff);
  // Every letter contributes shifted weight >= 1; words longer than the
  // window cannot land inside it. Singleton words are the u + v above.
  int min_gain = std::min(u.min_weight(), v.min_weight()) - 1;
  int max_letters = std::max(0, (win.cutoff - 1) / std::max(1, min_gain));
  std::vector<std::pair<int, int>> blocks;
  dynkin_recurse(st, blocks, 0, max_letters, max_letters);
  st.acc.truncate(win.cutoff);
  return st.acc;
}

Cochain exp_ad_check(const Cochain& v, const Cochain& w, const WeightWindow& win) {
  require_plus(v, "exp_ad_check");
  require_finite_window(v, win, "exp_ad_check");
  Cochain lhs = w;
  lhs.truncate(win.cutoff);
  Cochain iter = w;
  Rational coef = 1;
  const int gain = v.min_weight() - 1;
  for (int k = 1; k * gain <= win.cutoff; ++k) {
    iter = gerstenhaber_bracket(v, iter, win);
    if (iter.zero()) break;
    coef /= k;
    lhs.add_scaled(coef, iter);
  }
  GroupLike ev = exp_prelie(v, win);
  GroupLike ev_inv = exp_prelie(cochain_scaled(v, -1), win);
  // (exp(v) * w) = w + plus * w since the unit is a left unit.
  Cochain expv_star_w = w;
  expv_star_w.truncate(win.cutoff);
  expv_star_w.add_scaled(1, star(ev.plus, w, win));
  Cochain rhs = odot(expv_star_w, ev_inv, win);
  lhs.add_scaled(-1, rhs);
  lhs.truncate(std::min(lhs.cutoff(), rhs.cutoff()));
  return lhs;
}

}  // namespace prelie
