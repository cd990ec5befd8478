#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "poly.hpp"

namespace lnt {

// The monomial basis of one multidegree component, in ascending lex order
// (all words here have equal length, so this agrees with the global word
// order). Positions are dense indices into `monomials`.
struct ComponentBasis {
  Multidegree mdeg;
  std::vector<Word> monomials;
  std::map<Word, std::uint32_t, WordLess> index;

  std::size_t size() const { return monomials.size(); }

  std::uint32_t index_of(const Word& w) const {
    auto it = index.find(w);
    if (it == index.end())
      throw std::invalid_argument("word " + word_text(w) +
                                  " lies outside this multidegree component");
    return it->second;
  }
};

inline ComponentBasis component_basis(const Multidegree& d) {
  if (total_degree(d) == 0) throw std::invalid_argument("empty multidegree");
  ComponentBasis b;
  b.mdeg = d;
  std::vector<Var> letters;
  for (const auto& [v, k] : d)
    for (std::uint32_t i = 0; i < k; ++i) letters.push_back(v);
  std::sort(letters.begin(), letters.end());
  do {
    b.monomials.emplace_back(letters);
  } while (std::next_permutation(letters.begin(), letters.end()));
  for (std::uint32_t i = 0; i < b.monomials.size(); ++i) b.index.emplace(b.monomials[i], i);
  return b;
}

// Coordinates of a component polynomial: sorted (position, coefficient)
// pairs, zero coefficients never stored.
template <class R>
struct SparseVec {
  using Elem = typename R::Elem;
  std::vector<std::pair<std::uint32_t, Elem>> entries;

  bool is_zero() const { return entries.empty(); }
  std::uint32_t lead_pos() const { return entries.front().first; }
  const Elem& lead_coeff() const { return entries.front().second; }

  friend bool operator==(const SparseVec& a, const SparseVec& b) { return a.entries == b.entries; }
  friend bool operator<(const SparseVec& a, const SparseVec& b) { return a.entries < b.entries; }
};

template <class R>
SparseVec<R> vectorize(const Poly<R>& p, const ComponentBasis& b) {
  SparseVec<R> v;
  v.entries.reserve(p.terms.size());
  // term order and basis order agree, so entries come out sorted
  for (const auto& [w, c] : p.terms) v.entries.emplace_back(b.index_of(w), c);
  return v;
}

template <class R>
Poly<R> unvectorize(const R& rg, const SparseVec<R>& v, const ComponentBasis& b) {
  Poly<R> p(rg);
  for (const auto& [i, c] : v.entries) {
    if (i >= b.size()) throw std::invalid_argument("vector position exceeds basis size");
    p.add_term(b.monomials[i], c);
  }
  return p;
}

template <class R>
void negate_in_place(const R& rg, SparseVec<R>& v) {
  for (auto& [i, c] : v.entries) c = rg.neg(c);
}

template <class R>
void scale_in_place(const R& rg, SparseVec<R>& v, const typename R::Elem& s) {
  for (auto& [i, c] : v.entries) c = rg.mul(c, s);
}

// r += s * x, merging sorted supports. s may be zero (no-op).
template <class R>
void axpy(const R& rg, SparseVec<R>& r, const typename R::Elem& s, const SparseVec<R>& x) {
  if (rg.is_zero(s) || x.entries.empty()) return;
  std::vector<std::pair<std::uint32_t, typename R::Elem>> out;
  out.reserve(r.entries.size() + x.entries.size());
  std::size_t i = 0, j = 0;
  while (i < r.entries.size() || j < x.entries.size()) {
    if (j == x.entries.size() ||
        (i < r.entries.size() && r.entries[i].first < x.entries[j].first)) {
      out.push_back(std::move(r.entries[i++]));
    } else if (i == r.entries.size() || x.entries[j].first < r.entries[i].first) {
      out.emplace_back(x.entries[j].first, rg.mul(s, x.entries[j].second));
      ++j;
    } else {
      typename R::Elem c = rg.add(r.entries[i].second, rg.mul(s, x.entries[j].second));
      if (!rg.is_zero(c)) out.emplace_back(r.entries[i].first, std::move(c));
      ++i;
      ++j;
    }
  }
  // drop entries that multiplied to zero (possible over MODP)
  std::erase_if(out, [&](const auto& e) { return rg.is_zero(e.second); });
  r.entries = std::move(out);
}

// Sign-insensitive canonical representative: v or -v, whichever has a
// "positive" leading coefficient; over MODP the representative with the
// smaller leading value is chosen. Used only to deduplicate span lists,
// which is lattice-safe since -v generates what v does.
template <class R>
SparseVec<R> signed_canonical(const R& rg, SparseVec<R> v) {
  if (v.entries.empty()) return v;
  bool flip;
  if constexpr (R::tag == RingTag::MODP) {
    flip = rg.neg(v.lead_coeff()) < v.lead_coeff();
  } else {
    flip = v.lead_coeff() < 0;
  }
  if (flip) negate_in_place(rg, v);
  return v;
}

template <class R>
std::vector<SparseVec<R>> dedup_signed(const R& rg, const std::vector<SparseVec<R>>& rows) {
  std::vector<SparseVec<R>> out;
  out.reserve(rows.size());
  for (const auto& r : rows) {
    if (r.is_zero()) continue;
    out.push_back(signed_canonical(rg, r));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace lnt
