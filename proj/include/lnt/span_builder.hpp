#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "elim.hpp"
#include "families.hpp"

// Component span construction at scale. The reference enumeration in
// families.hpp lists every bordered instance of a spec; that is fine up to
// total degree five or six but explodes factorially beyond. The builder here
// assembles the same lattice from three smaller pieces:
//
//   span(d) = sum_j x_j * span(d - e_j)  +  sum_j span(d - e_j) * x_j  +  core(d)
//
// where the bordered parts reuse the canonical echelon basis of the next
// lower component (left/right multiplication by a letter is an injective
// module map, so equal lattices stay equal), and core(d) holds only the
// full-support instances that borders cannot reach. The core itself is
// compressed: every dropped generator is recovered as an explicit +/-1
// integer combination of kept ones and bordered lower elements, so the
// construction is exact at the lattice level, not merely over fields.

namespace lnt {

inline Multidegree multilinear_mdeg(std::uint32_t n) {
  Multidegree d;
  for (Var v = 1; v <= n; ++v) d[v] = 1;
  return d;
}

inline bool is_multilinear(const Multidegree& d) {
  if (d.empty()) return false;
  for (const auto& [v, k] : d)
    if (k != 1) return false;
  return true;
}

inline std::vector<Var> support_vars(const Multidegree& d) {
  std::vector<Var> vars;
  for (const auto& [v, k] : d)
    if (k > 0) vars.push_back(v);
  return vars;
}

// Multiplicity sequence in ascending support order: {x2:1, x5:2} -> "1-2".
inline std::string mdeg_signature(const Multidegree& d) {
  std::string s;
  for (const auto& [v, k] : d) {
    if (!s.empty()) s += '-';
    s += std::to_string(k);
  }
  return s;
}

// The component with the same multiplicity sequence moved onto x1..xm. Its
// monomial basis is position-for-position isomorphic to the original one:
// the monotone letter substitution preserves the lex order of equal-length
// words, so sorted monomial lists correspond index by index.
inline Multidegree canonical_mdeg(const Multidegree& d) {
  Multidegree c;
  Var next = 1;
  for (const auto& [v, k] : d) c[next++] = k;
  return c;
}

template <class R>
std::vector<SparseVec<R>> rows_to_ring(const R& rg,
                                       const std::vector<SparseVec<IntRing>>& rows) {
  std::vector<SparseVec<R>> out;
  out.reserve(rows.size());
  for (const auto& r : rows) {
    SparseVec<R> v;
    v.entries.reserve(r.entries.size());
    for (const auto& [i, c] : r.entries) {
      auto e = rg.from_bigint(c);
      if (!rg.is_zero(e)) v.entries.emplace_back(i, std::move(e));
    }
    if (!v.entries.empty()) out.push_back(std::move(v));
  }
  return out;
}

// span_equal with the component bases attached; comparing spans that live in
// different components is a caller bug, not a NOT_EQUAL verdict.
template <class R>
SpanEqualResult<R> span_equal_checked(const R& rg, const std::vector<SparseVec<R>>& a,
                                      const ComponentBasis& ba,
                                      const std::vector<SparseVec<R>>& b,
                                      const ComponentBasis& bb) {
  if (ba.mdeg != bb.mdeg)
    throw std::invalid_argument("basis mismatch: spans live in different components");
  return span_equal(rg, a, b);
}

enum class SpanStrategy { AUTO, FLAT, RECURSIVE };

class SpanBuilder {
 public:
  // cache_dir empty: no disk persistence. flat_degree_limit: components of
  // total degree up to this bound use the reference enumeration directly.
  explicit SpanBuilder(std::string cache_dir = "", std::size_t flat_degree_limit = 5)
      : dir_(std::move(cache_dir)), flat_limit_(flat_degree_limit) {}

  // Generating rows over Z, deduplicated up to sign, positions in the
  // canonical component basis (valid verbatim for any component with the
  // same multiplicity sequence).
  std::vector<SparseVec<IntRing>> generating_rows(const IdealSpec& spec, const Multidegree& d,
                                                  SpanStrategy strategy = SpanStrategy::AUTO) {
    Multidegree c = canonical_mdeg(d);
    ComponentBasis b = component_basis(c);
    IntRing Z;
    bool flat = strategy == SpanStrategy::FLAT ||
                (strategy == SpanStrategy::AUTO && total_degree(c) <= flat_limit_);
    std::vector<SparseVec<IntRing>> rows;
    if (flat) {
      for (const auto& p : enumerate_component(spec, c, Z)) rows.push_back(vectorize(p, b));
    } else {
      border_rows(spec, c, b, rows);
      core_rows(spec, c, b, rows);
    }
    return dedup_signed(Z, rows);
  }

  // Canonical Hermite basis of the integer component lattice.
  const std::vector<SparseVec<IntRing>>& echelon_int(const IdealSpec& spec,
                                                     const Multidegree& d) {
    const std::string key = cache_key(spec, d, "Z");
    if (auto it = int_memo_.find(key); it != int_memo_.end()) return it->second;
    ComponentBasis b = component_basis(canonical_mdeg(d));
    std::vector<SparseVec<IntRing>> rows;
    if (!load_cached(key, IntRing{}, b.size(), rows)) {
      ZLattice L;
      for (auto& v : generating_rows(spec, d)) L.add(std::move(v));
      L.finalize_canonical();
      rows = L.rows();
      store_cached(key, IntRing{}, rows, b.size());
    }
    return int_memo_.emplace(key, std::move(rows)).first->second;
  }

  // Canonical reduced echelon of the rational span, stored by primitive
  // integer representatives. Derived from the integer basis: a Z-generating
  // set of the lattice spans the same space over Q.
  const std::vector<SparseVec<IntRing>>& echelon_rat(const IdealSpec& spec,
                                                     const Multidegree& d) {
    const std::string key = cache_key(spec, d, "Q");
    if (auto it = rat_memo_.find(key); it != rat_memo_.end()) return it->second;
    ComponentBasis b = component_basis(canonical_mdeg(d));
    std::vector<SparseVec<IntRing>> rows;
    if (!load_cached(key, IntRing{}, b.size(), rows)) {
      QSpanEchelon E;
      for (const auto& v : echelon_int(spec, d)) E.add(v);
      E.finalize_canonical();
      rows = E.rows();
      store_cached(key, IntRing{}, rows, b.size());
    }
    return rat_memo_.emplace(key, std::move(rows)).first->second;
  }

  // Canonical reduced echelon over F_p, likewise derived by reducing the
  // integer basis mod p (which generates the same F_p span as the raw
  // instance list does).
  const std::vector<SparseVec<ModRing>>& echelon_mod(const ModRing& rg, const IdealSpec& spec,
                                                     const Multidegree& d) {
    const std::string key = cache_key(spec, d, rg.name());
    if (auto it = mod_memo_.find(key); it != mod_memo_.end()) return it->second;
    ComponentBasis b = component_basis(canonical_mdeg(d));
    std::vector<SparseVec<ModRing>> rows;
    if (!load_cached(key, rg, b.size(), rows)) {
      ModEchelon E(rg);
      for (auto& v : rows_to_ring(rg, echelon_int(spec, d))) E.add(std::move(v));
      E.finalize_canonical();
      rows = E.rows();
      store_cached(key, rg, rows, b.size());
    }
    return mod_memo_.emplace(key, std::move(rows)).first->second;
  }

 private:
  std::string cache_key(const IdealSpec& spec, const Multidegree& d,
                        const std::string& ring) const {
    return spec.name + "__" + mdeg_signature(canonical_mdeg(d)) + "__" + ring;
  }

  std::string cache_path(const std::string& key) const { return dir_ + "/" + key + ".ech"; }

  template <class R>
  bool load_cached(const std::string& key, const R& rg, std::size_t want_cols,
                   std::vector<SparseVec<R>>& rows) {
    if (dir_.empty()) return false;
    const std::string path = cache_path(key);
    if (!std::filesystem::exists(path)) return false;
    std::size_t ncols = 0;
    rows = load_rows(path, rg, ncols);
    if (ncols != want_cols)
      throw std::runtime_error(path + ": cached matrix has " + std::to_string(ncols) +
                               " columns, component needs " + std::to_string(want_cols));
    return true;
  }

  template <class R>
  void store_cached(const std::string& key, const R& rg, const std::vector<SparseVec<R>>& rows,
                    std::size_t ncols) {
    if (dir_.empty()) return;
    std::filesystem::create_directories(dir_);
    save_rows(cache_path(key), rg, rows, ncols);
  }

  // One-letter borders of the next lower components. Positions of the lower
  // canonical echelon transfer through the monotone letter map, then the
  // border letter is attached; both steps preserve the sorted entry order.
  void border_rows(const IdealSpec& spec, const Multidegree& d, const ComponentBasis& b,
                   std::vector<SparseVec<IntRing>>& out) {
    for (Var j : support_vars(d)) {
      Multidegree dm = d;
      if (--dm[j] == 0) dm.erase(j);
      if (dm.empty()) continue;
      const auto& lower = echelon_int(spec, dm);
      ComponentBasis lb = component_basis(canonical_mdeg(dm));
      std::vector<Var> letters = support_vars(dm);
      auto mapped = [&](const Word& w, bool left_side) {
        Word m;
        m.letters.reserve(w.letters.size() + 1);
        if (left_side) m.letters.push_back(j);
        for (Var v : w.letters) m.letters.push_back(letters[v - 1]);
        if (!left_side) m.letters.push_back(j);
        return m;
      };
      for (bool left_side : {true, false}) {
        for (const auto& row : lower) {
          SparseVec<IntRing> v;
          v.entries.reserve(row.entries.size());
          for (const auto& [pos, c] : row.entries)
            v.entries.emplace_back(b.index_of(mapped(lb.monomials[pos], left_side)), c);
          out.push_back(std::move(v));
        }
      }
    }
  }

  void core_rows(const IdealSpec& spec, const Multidegree& d, const ComponentBasis& b,
                 std::vector<SparseVec<IntRing>>& out) {
    IntRing Z;
    for (Family f : spec.families) {
      if (spec.mode == Mode::VERBAL)
        verbal_core(f, d, Z, b, out);
      else
        literal_core(f, d, Z, b, out);
    }
  }

  // Full-support verbal instances that borders cannot reach. Two pruning
  // rules keep the list small without changing the lattice:
  //  - the last slot is a single letter: for a longer word w = w'z the
  //    Leibniz rule [M, w'z] = [M,w']z + w'[M,z] splits the instance into
  //    bordered lower elements;
  //  - on multilinear components with at least three block slots, only the
  //    orderings placing the block with the least letter first survive: the
  //    other four of the six orderings of the first three slots are integer
  //    Jacobi combinations of the kept two.
  void verbal_core(Family f, const Multidegree& d, const IntRing& Z, const ComponentBasis& b,
                   std::vector<SparseVec<IntRing>>& out) {
    const int k = family_arity(f);
    if (total_degree(d) < static_cast<std::size_t>(k)) return;
    const bool ml = is_multilinear(d);
    for (Var z : support_vars(d)) {
      Multidegree rest = d;
      if (--rest[z] == 0) rest.erase(z);
      if (total_degree(rest) < static_cast<std::size_t>(k - 1)) continue;
      std::vector<Word> blocks(k - 1);
      auto emit = [&]() {
        if (ml && k >= 3) {
          Var m0 = *std::min_element(blocks[0].letters.begin(), blocks[0].letters.end());
          for (int i = 1; i < std::min(k - 1, 3); ++i) {
            Var mi = *std::min_element(blocks[i].letters.begin(), blocks[i].letters.end());
            if (mi < m0) return;
          }
        }
        std::vector<Word> args = blocks;
        args.push_back(Word::var(z));
        Poly<IntRing> g = family_word_poly(Z, f, args);
        if (!g.is_zero()) out.push_back(vectorize(g, b));
      };
      auto rec = [&](auto&& self, int slot, const Multidegree& rem) -> void {
        if (slot == k - 1) {
          if (!rem.empty()) return;
          emit();
          return;
        }
        // the remaining slots all need nonempty words
        if (total_degree(rem) < static_cast<std::size_t>(k - 1 - slot)) return;
        for (const Multidegree& m : detail::sub_multidegrees(rem)) {
          if (m.empty()) continue;
          if (slot + 2 == k && m != rem) continue;  // last block takes the leftover
          Multidegree next = rem;
          for (const auto& [v, c] : m) {
            auto it = next.find(v);
            it->second -= c;
            if (it->second == 0) next.erase(it);
          }
          for (const Word& w : detail::words_of_multidegree(m)) {
            blocks[slot] = w;
            self(self, slot + 1, next);
          }
        }
      };
      rec(rec, 0, rest);
    }
  }

  // Full-support literal instances: single-variable slot assignments whose
  // multiset of letters covers the whole multidegree, so they exist only on
  // components whose degree equals the family arity. Letters repeat when the
  // component does; an assignment sequence is the same thing as a word with
  // the component's multidegree.
  void literal_core(Family f, const Multidegree& d, const IntRing& Z, const ComponentBasis& b,
                    std::vector<SparseVec<IntRing>>& out) {
    const int k = family_arity(f);
    if (total_degree(d) != static_cast<std::size_t>(k)) return;
    for (const Word& w : detail::words_of_multidegree(d)) {
      std::vector<Word> args;
      args.reserve(w.letters.size());
      for (Var v : w.letters) args.push_back(Word::var(v));
      Poly<IntRing> g = family_word_poly(Z, f, args);
      if (!g.is_zero()) out.push_back(vectorize(g, b));
    }
  }

  std::string dir_;
  std::size_t flat_limit_;
  std::map<std::string, std::vector<SparseVec<IntRing>>> int_memo_, rat_memo_;
  std::map<std::string, std::vector<SparseVec<ModRing>>> mod_memo_;
};

}  // namespace lnt
