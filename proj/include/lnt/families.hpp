#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "poly.hpp"

namespace lnt {

// Generator families. F1..F8 are the degree-5 literal generators; T3A/T3B
// and the two T4 sets are the smaller-index literal sets kept for
// comparison runs; V2..V5 are the verbal left-normed commutator templates.
enum class Family : int {
  F1,
  F2,
  F3,
  F4,
  F5,
  F6,
  F7,
  F8,
  T3A,
  T3B,
  T4A1,
  T4A2,
  T4A3,
  T4B1,
  T4B2,
  T4B3,
  T4B4,
  T4B5,
  V2,
  V3,
  V4,
  V5,
};

inline const char* family_name(Family f) {
  switch (f) {
    case Family::F1: return "F1";
    case Family::F2: return "F2";
    case Family::F3: return "F3";
    case Family::F4: return "F4";
    case Family::F5: return "F5";
    case Family::F6: return "F6";
    case Family::F7: return "F7";
    case Family::F8: return "F8";
    case Family::T3A: return "T3A";
    case Family::T3B: return "T3B";
    case Family::T4A1: return "T4A1";
    case Family::T4A2: return "T4A2";
    case Family::T4A3: return "T4A3";
    case Family::T4B1: return "T4B1";
    case Family::T4B2: return "T4B2";
    case Family::T4B3: return "T4B3";
    case Family::T4B4: return "T4B4";
    case Family::T4B5: return "T4B5";
    case Family::V2: return "V2";
    case Family::V3: return "V3";
    case Family::V4: return "V4";
    case Family::V5: return "V5";
  }
  throw std::logic_error("unknown family");
}

inline Family family_from_name(const std::string& s) {
  static const std::map<std::string, Family> names = {
      {"F1", Family::F1},     {"F2", Family::F2},   {"F3", Family::F3},
      {"F4", Family::F4},     {"F5", Family::F5},   {"F6", Family::F6},
      {"F7", Family::F7},     {"F8", Family::F8},   {"T3A", Family::T3A},
      {"T3B", Family::T3B},   {"T4A1", Family::T4A1}, {"T4A2", Family::T4A2},
      {"T4A3", Family::T4A3}, {"T4B1", Family::T4B1}, {"T4B2", Family::T4B2},
      {"T4B3", Family::T4B3}, {"T4B4", Family::T4B4}, {"T4B5", Family::T4B5},
      {"V2", Family::V2},     {"V3", Family::V3},   {"V4", Family::V4},
      {"V5", Family::V5},
  };
  auto it = names.find(s);
  if (it == names.end()) throw std::invalid_argument("unknown family name: " + s);
  return it->second;
}

inline int family_arity(Family f) {
  switch (f) {
    case Family::F1: return 5;
    case Family::F2: return 6;
    case Family::F3: return 7;
    case Family::F4: return 6;
    case Family::F5: return 7;
    case Family::F6: return 6;
    case Family::F7: return 7;
    case Family::F8: return 8;
    case Family::T3A: return 3;
    case Family::T3B: return 4;
    case Family::T4A1: return 4;
    case Family::T4A2: return 5;
    case Family::T4A3: return 6;
    case Family::T4B1: return 4;
    case Family::T4B2: return 6;
    case Family::T4B3: return 5;
    case Family::T4B4: return 5;
    case Family::T4B5: return 6;
    case Family::V2: return 2;
    case Family::V3: return 3;
    case Family::V4: return 4;
    case Family::V5: return 5;
  }
  throw std::logic_error("unknown family");
}

// q_poly(b1,b2,b3,b4) = [b1,b2][b3,b4] + [b1,b3][b2,b4], the quadratic
// building block shared by several families.
template <class R>
Poly<R> q_poly(const Poly<R>& b1, const Poly<R>& b2, const Poly<R>& b3,
               const Poly<R>& b4) {
  return bracket(b1, b2) * bracket(b3, b4) + bracket(b1, b3) * bracket(b2, b4);
}

template <class R>
Poly<R> family_poly(Family f, const std::vector<Poly<R>>& a) {
  const int k = family_arity(f);
  if (static_cast<int>(a.size()) != k)
    throw std::invalid_argument(std::string("family ") + family_name(f) +
                                " expects " + std::to_string(k) +
                                " arguments, got " + std::to_string(a.size()));
  auto ln = [&](std::vector<Poly<R>> parts) { return left_normed(parts); };
  switch (f) {
    case Family::F1:
      return ln({a[0], a[1], a[2], a[3], a[4]});
    case Family::F2:
      return ln({a[0], a[1], a[2]}) * ln({a[3], a[4], a[5]});
    case Family::F3:
      return ln({a[0], a[1], a[2], a[3]}) * ln({a[4], a[5], a[6]});
    case Family::F4:
      return ln({a[0], a[1], a[2], a[3]}) * bracket(a[4], a[5]) +
             ln({a[0], a[1], a[2], a[4]}) * bracket(a[3], a[5]);
    case Family::F5:
      return ln({a[0], a[1], a[2]}) * q_poly(a[3], a[4], a[5], a[6]);
    case Family::F6:
      return ln({q_poly(a[0], a[1], a[2], a[3]), a[4], a[5]});
    case Family::F7:
      return bracket(q_poly(a[0], a[1], a[2], a[3]), a[4]) * bracket(a[5], a[6]) +
             bracket(q_poly(a[0], a[1], a[2], a[3]), a[5]) * bracket(a[4], a[6]);
    case Family::F8:
      return q_poly(a[0], a[1], a[2], a[3]) * q_poly(a[4], a[5], a[6], a[7]);
    case Family::T3A:
      return ln({a[0], a[1], a[2]});
    case Family::T3B:
      return q_poly(a[0], a[1], a[2], a[3]);
    case Family::T4A1:
      return ln({a[0], a[1], a[2], a[3]});
    case Family::T4A2:
      return bracket(a[0], a[1]) * ln({a[2], a[3], a[4]});
    case Family::T4A3:
      return q_poly(a[0], a[1], a[2], a[3]) * bracket(a[4], a[5]);
    case Family::T4B1:
      return ln({a[0], a[1], a[2], a[3]});
    case Family::T4B2:
      return ln({a[0], a[1], a[2]}) * ln({a[3], a[4], a[5]});
    case Family::T4B3:
      return ln({a[0], a[1], a[2]}) * bracket(a[3], a[4]) +
             ln({a[0], a[1], a[3]}) * bracket(a[2], a[4]);
    case Family::T4B4:
      return ln({a[0], a[1], a[2]}) * bracket(a[3], a[4]) +
             ln({a[0], a[3], a[2]}) * bracket(a[1], a[4]);
    case Family::T4B5:
      return q_poly(a[0], a[1], a[2], a[3]) * bracket(a[4], a[5]);
    case Family::V2:
    case Family::V3:
    case Family::V4:
    case Family::V5:
      return ln(a);
  }
  throw std::logic_error("unknown family");
}

// Instance at word (monomial) arguments.
template <class R>
Poly<R> family_word_poly(const R& ring, Family f, const std::vector<Word>& ws) {
  std::vector<Poly<R>> args;
  args.reserve(ws.size());
  for (const Word& w : ws) args.push_back(Poly<R>::monomial(ring, w));
  return family_poly(f, args);
}

// LITERAL: slots take single variables (the ideal generated by X-instances).
// VERBAL: slots take arbitrary nonempty monomials. Conflating the two is the
// classic mistake in this area, hence the explicit mode on every spec.
enum class Mode { LITERAL, VERBAL };

struct IdealSpec {
  std::string name;
  std::vector<Family> families;
  Mode mode = Mode::LITERAL;
};

inline const std::map<std::string, IdealSpec>& builtin_specs() {
  static const std::map<std::string, IdealSpec> specs = {
      {"T2", {"T2", {Family::V2}, Mode::VERBAL}},
      {"T3", {"T3", {Family::V3}, Mode::VERBAL}},
      {"T4", {"T4", {Family::V4}, Mode::VERBAL}},
      {"T5", {"T5", {Family::V5}, Mode::VERBAL}},
      {"I5",
       {"I5",
        {Family::F1, Family::F2, Family::F3, Family::F4, Family::F5,
         Family::F6, Family::F7, Family::F8},
        Mode::LITERAL}},
      {"G3", {"G3", {Family::T3A, Family::T3B}, Mode::LITERAL}},
      {"G4_3",
       {"G4_3", {Family::T4A1, Family::T4A2, Family::T4A3}, Mode::LITERAL}},
      {"G4_5",
       {"G4_5",
        {Family::T4B1, Family::T4B2, Family::T4B3, Family::T4B4, Family::T4B5},
        Mode::LITERAL}},
  };
  return specs;
}

inline std::vector<std::string> builtin_spec_names() {
  std::vector<std::string> out;
  for (const auto& [name, spec] : builtin_specs()) out.push_back(name);
  return out;
}

namespace detail {

// All words with exactly the given multidegree, lexicographically.
inline std::vector<Word> words_of_multidegree(const Multidegree& m) {
  std::vector<Var> letters;
  for (const auto& [v, k] : m)
    for (uint32_t i = 0; i < k; ++i) letters.push_back(v);
  std::vector<Word> out;
  std::sort(letters.begin(), letters.end());
  do {
    Word w;
    w.letters = letters;
    out.push_back(std::move(w));
  } while (std::next_permutation(letters.begin(), letters.end()));
  return out;
}

// Sub-multidegrees of r (including 0 and r), exponent vectors ascending in
// variable order.
inline std::vector<Multidegree> sub_multidegrees(const Multidegree& r) {
  std::vector<std::pair<Var, uint32_t>> caps(r.begin(), r.end());
  std::vector<Multidegree> out;
  std::vector<uint32_t> e(caps.size(), 0);
  for (;;) {
    Multidegree m;
    for (size_t i = 0; i < caps.size(); ++i)
      if (e[i] > 0) m[caps[i].first] = e[i];
    out.push_back(std::move(m));
    size_t i = 0;
    for (; i < caps.size(); ++i) {
      if (e[i] < caps[i].second) {
        ++e[i];
        std::fill(e.begin(), e.begin() + i, 0);
        break;
      }
    }
    if (i == caps.size()) return out;
  }
}

// Emits u*g*v over all border splittings of the leftover multidegree r,
// ordered by |u| ascending, then u lex, then v lex. Exact duplicates are
// dropped via the seen set; zero products cannot arise (g is nonzero and
// border words are regular).
template <class R>
void emit_bordered(const Poly<R>& g, const Multidegree& r,
                   std::vector<Poly<R>>& out, std::set<std::string>& seen) {
  auto subs = sub_multidegrees(r);
  std::stable_sort(subs.begin(), subs.end(),
                   [](const Multidegree& x, const Multidegree& y) {
                     return total_degree(x) < total_degree(y);
                   });
  for (const Multidegree& mu : subs) {
    Multidegree mv = r;
    bool ok = true;
    for (const auto& [v, k] : mu) {
      auto it = mv.find(v);
      if (it == mv.end() || it->second < k) {
        ok = false;
        break;
      }
      it->second -= k;
      if (it->second == 0) mv.erase(it);
    }
    if (!ok) continue;
    for (const Word& u : words_of_multidegree(mu))
      for (const Word& v : words_of_multidegree(mv)) {
        Poly<R> p = word_times(g, u, v);
        if (p.is_zero()) continue;
        std::string key = format_poly(p);
        if (seen.insert(std::move(key)).second) out.push_back(std::move(p));
      }
  }
}

}  // namespace detail

// Spanning set of the d-component of the ideal: all products u*g*v with g a
// family instance and multidegree(u) + multidegree(g) + multidegree(v) = d.
// Deterministic order: families in spec order, then slot assignments
// lexicographically, then border splittings by |u|. Exact duplicate
// polynomials are removed and zero instances dropped. This is the reference
// enumeration; large components go through the recursive span builder.
template <class R>
std::vector<Poly<R>> enumerate_component(const IdealSpec& spec,
                                         const Multidegree& d, const R& ring) {
  std::vector<Poly<R>> out;
  std::set<std::string> seen;
  std::vector<Var> vars;
  for (const auto& [v, k] : d)
    if (k > 0) vars.push_back(v);

  for (Family f : spec.families) {
    const int arity = family_arity(f);
    if (spec.mode == Mode::LITERAL) {
      if (static_cast<uint32_t>(arity) > total_degree(d)) continue;
      // Assign a variable to each slot, respecting the multiplicity budget.
      std::vector<Var> slot(arity);
      Multidegree used;
      auto rec = [&](auto&& self, int i) -> void {
        if (i == arity) {
          std::vector<Poly<R>> args;
          args.reserve(arity);
          for (Var v : slot) args.push_back(Poly<R>::var(ring, v));
          Poly<R> g = family_poly(f, args);
          if (g.is_zero()) return;
          Multidegree r = d;
          bool ok = true;
          for (const auto& [v, k] : used) {
            auto it = r.find(v);
            if (it == r.end() || it->second < k) {
              ok = false;
              break;
            }
            it->second -= k;
            if (it->second == 0) r.erase(it);
          }
          if (ok) detail::emit_bordered(g, r, out, seen);
          return;
        }
        for (Var v : vars) {
          auto it = d.find(v);
          uint32_t cap = it == d.end() ? 0 : it->second;
          uint32_t& u = used[v];
          if (u >= cap) {
            if (u == 0) used.erase(v);
            continue;
          }
          ++u;
          slot[i] = v;
          self(self, i + 1);
          --u;
          if (u == 0) used.erase(v);
        }
      };
      rec(rec, 0);
    } else {
      // Verbal slots: nonempty monomials whose multidegrees fit inside d.
      std::vector<Word> slot(arity);
      auto rec = [&](auto&& self, int i, const Multidegree& rem) -> void {
        if (i == arity) {
          std::vector<Poly<R>> args;
          args.reserve(arity);
          for (const Word& w : slot) args.push_back(Poly<R>::monomial(ring, w));
          Poly<R> g = family_poly(f, args);
          if (!g.is_zero()) detail::emit_bordered(g, rem, out, seen);
          return;
        }
        auto subs = detail::sub_multidegrees(rem);
        std::stable_sort(subs.begin(), subs.end(),
                         [](const Multidegree& x, const Multidegree& y) {
                           return total_degree(x) < total_degree(y);
                         });
        for (const Multidegree& m : subs) {
          if (m.empty()) continue;
          Multidegree next = rem;
          for (const auto& [v, k] : m) {
            auto it = next.find(v);
            it->second -= k;
            if (it->second == 0) next.erase(it);
          }
          for (const Word& w : detail::words_of_multidegree(m)) {
            slot[i] = w;
            self(self, i + 1, next);
          }
        }
      };
      rec(rec, 0, d);
    }
  }
  return out;
}

}  // namespace lnt
