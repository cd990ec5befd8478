#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "basis.hpp"

namespace lnt {

enum class Verdict { MEMBER, NOT_MEMBER, TORSION };

inline std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::MEMBER: return "MEMBER";
    case Verdict::NOT_MEMBER: return "NOT_MEMBER";
    case Verdict::TORSION: return "TORSION";
  }
  return "?";
}

// Coefficients index the original span list as it was added, so a MEMBER
// certificate re-expands against that list; for TORSION the coefficients
// combine to torsion_index * target. Engines built without tracking return
// verdicts with empty coefficient lists.
template <class R>
struct MembershipResult {
  Verdict verdict = Verdict::NOT_MEMBER;
  BigInt torsion_index{1};
  std::vector<std::pair<std::uint32_t, typename R::Elem>> coeffs;
};

namespace detail {

// g = s*a + t*b with g = gcd(a,b) >= 0
inline void xgcd(const BigInt& a, const BigInt& b, BigInt& g, BigInt& s, BigInt& t) {
  BigInt r0 = a, r1 = b, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
  while (r1 != 0) {
    BigInt q = r0 / r1;
    r0 -= q * r1; std::swap(r0, r1);
    s0 -= q * s1; std::swap(s0, s1);
    t0 -= q * t1; std::swap(t0, t1);
  }
  if (r0 < 0) { r0 = -r0; s0 = -s0; t0 = -t0; }
  g = r0; s = s0; t = t0;
}

inline BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q = a / b;           // truncates toward zero
  if (a % b != 0 && ((a < 0) != (b < 0))) --q;
  return q;
}

inline BigInt content_of(const SparseVec<IntRing>& v) {
  BigInt g = 0;
  for (const auto& [i, c] : v.entries) {
    g = abs(gcd(g, c));
    if (g == 1) break;
  }
  return g;
}

// cpp_rational construction rejects negative denominators, so route every
// two-part construction through here.
inline BigRat rat_fraction(BigInt num, BigInt den) {
  if (den < 0) {
    num = -num;
    den = -den;
  }
  return BigRat(std::move(num), std::move(den));
}

inline void make_primitive(SparseVec<IntRing>& v) {
  if (v.entries.empty()) return;
  BigInt g = content_of(v);
  if (v.lead_coeff() < 0) g = -g;
  if (g != 1)
    for (auto& [i, c] : v.entries) c /= g;
}

inline SparseVec<IntRing> clear_denominators(const SparseVec<RatRing>& v) {
  BigInt den = 1;
  for (const auto& [i, c] : v.entries) den = lcm(den, denominator(c));
  SparseVec<IntRing> w;
  w.entries.reserve(v.entries.size());
  for (const auto& [i, c] : v.entries) {
    BigRat scaled = c * BigRat(den);  // materialize before taking the numerator
    w.entries.emplace_back(i, numerator(scaled));
  }
  return w;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Integer lattice (row span over Z), incremental Hermite-style echelon: one
// row per pivot column, pivot entries positive, insertion via gcd combination
// so the stored rows always generate exactly the lattice of everything added.

class ZLattice {
 public:
  explicit ZLattice(bool track = false) : track_(track) {}

  bool add(SparseVec<IntRing> v) {
    SparseVec<IntRing> comb;
    if (track_) comb.entries.emplace_back(nsrc_, BigInt(1));
    ++nsrc_;
    while (!v.is_zero()) {
      std::uint32_t c = v.lead_pos();
      auto it = rows_.find(c);
      if (it == rows_.end()) {
        if (v.lead_coeff() < 0) {
          negate_in_place(Z_, v);
          negate_in_place(Z_, comb);
        }
        Row nr{std::move(v), std::move(comb)};
        reduce_tail(nr, c);
        reduce_column(c, rows_.emplace(c, std::move(nr)).first->second);
        return true;
      }
      Row& p = it->second;
      const BigInt& a = p.vec.lead_coeff();
      const BigInt& b = v.lead_coeff();
      if (b % a == 0) {
        BigInt q = -(b / a);
        axpy(Z_, v, q, p.vec);
        if (track_) axpy(Z_, comb, q, p.comb);
      } else {
        BigInt g, s, t;
        detail::xgcd(a, b, g, s, t);
        // new pivot row: s*p + t*v, lead g; leftover: (a/g)*v - (b/g)*p, lead 0
        Row np;
        np.vec = p.vec;
        scale_in_place(Z_, np.vec, s);
        axpy(Z_, np.vec, t, v);
        if (track_) {
          np.comb = p.comb;
          scale_in_place(Z_, np.comb, s);
          axpy(Z_, np.comb, t, comb);
        }
        BigInt ag = a / g, bg = -(b / g);
        scale_in_place(Z_, v, ag);
        axpy(Z_, v, bg, p.vec);
        if (track_) {
          scale_in_place(Z_, comb, ag);
          axpy(Z_, comb, bg, p.comb);
        }
        p = std::move(np);
        reduce_tail(p, c);
        reduce_column(c, p);
      }
    }
    return false;
  }

  std::size_t rank() const { return rows_.size(); }

  // Exact divisibility reduction: true iff t lies in the lattice. Cheap path
  // used for mutual-inclusion checks; no coefficient output.
  bool reduces_to_zero(SparseVec<IntRing> t) const {
    while (!t.is_zero()) {
      auto it = rows_.find(t.lead_pos());
      if (it == rows_.end()) return false;
      const BigInt& a = it->second.vec.lead_coeff();
      const BigInt& b = t.lead_coeff();
      if (b % a != 0) return false;
      axpy(Z_, t, BigInt(-(b / a)), it->second.vec);
    }
    return true;
  }

  // Full verdict via the unique rational representation over the echelon
  // rows (they are a lattice basis, so denominators decide torsion).
  MembershipResult<IntRing> membership(const SparseVec<IntRing>& target) const {
    RatRing Q;
    SparseVec<RatRing> t;
    t.entries.reserve(target.entries.size());
    for (const auto& [i, c] : target.entries) t.entries.emplace_back(i, BigRat(c));
    std::vector<std::pair<const Row*, BigRat>> used;
    while (!t.is_zero()) {
      auto it = rows_.find(t.lead_pos());
      if (it == rows_.end()) return {};
      BigRat q = t.lead_coeff() / BigRat(it->second.vec.lead_coeff());
      SparseVec<RatRing> rv;
      rv.entries.reserve(it->second.vec.entries.size());
      for (const auto& [i, c] : it->second.vec.entries) rv.entries.emplace_back(i, BigRat(c));
      axpy(Q, t, Q.neg(q), rv);
      used.emplace_back(&it->second, q);
    }
    BigInt k = 1;
    for (const auto& [row, q] : used) k = lcm(k, denominator(q));
    MembershipResult<IntRing> res;
    res.verdict = k == 1 ? Verdict::MEMBER : Verdict::TORSION;
    res.torsion_index = k;
    if (track_) {
      std::map<std::uint32_t, BigInt> acc;
      for (const auto& [row, q] : used) {
        BigRat kq = q * BigRat(k);
        BigInt m = numerator(kq);  // k*q is integral by the choice of k
        for (const auto& [j, c] : row->comb.entries) acc[j] += m * c;
      }
      for (auto& [j, c] : acc)
        if (c != 0) res.coeffs.emplace_back(j, std::move(c));
    }
    return res;
  }

  // Canonical Hermite form: rows sorted by pivot, pivots positive, every
  // entry above a pivot reduced into [0, pivot).
  void finalize_canonical() {
    for (auto& [c, pr] : rows_) {
      for (auto& [c2, r] : rows_) {
        if (c2 >= c) break;
        auto pos = std::lower_bound(
            r.vec.entries.begin(), r.vec.entries.end(), c,
            [](const auto& e, std::uint32_t col) { return e.first < col; });
        if (pos == r.vec.entries.end() || pos->first != c) continue;
        BigInt q = detail::floor_div(pos->second, pr.vec.lead_coeff());
        if (q == 0) continue;
        axpy(Z_, r.vec, -q, pr.vec);
        if (track_) axpy(Z_, r.comb, -q, pr.comb);
      }
    }
  }

  std::vector<SparseVec<IntRing>> rows() const {
    std::vector<SparseVec<IntRing>> out;
    out.reserve(rows_.size());
    for (const auto& [c, r] : rows_) out.push_back(r.vec);
    return out;
  }

  BigInt pivot_product() const {
    BigInt p = 1;
    for (const auto& [c, r] : rows_) p *= r.vec.lead_coeff();
    return p;
  }

 private:
  struct Row {
    SparseVec<IntRing> vec;
    SparseVec<IntRing> comb;
  };

  // The stored rows are kept in canonical Hermite shape at all times: every
  // entry sitting under another pivot column stays floor-reduced into
  // [0, pivot). Reducing eagerly is what keeps rows sparse and coefficients
  // small on big components; without it intermediate rows densify and the
  // elimination grinds to a halt.

  // floor-reduce the entries of r at every other pivot column
  void reduce_tail(Row& r, std::uint32_t own) {
    for (std::size_t i = 0; i < r.vec.entries.size(); ++i) {
      std::uint32_t d = r.vec.entries[i].first;
      if (d == own) continue;
      auto it = rows_.find(d);
      if (it == rows_.end()) continue;
      BigInt q = detail::floor_div(r.vec.entries[i].second, it->second.vec.lead_coeff());
      if (q == 0) continue;
      axpy(Z_, r.vec, -q, it->second.vec);
      if (track_) axpy(Z_, r.comb, -q, it->second.comb);
      --i;  // the entry at d shrank or vanished; re-examine this index
    }
  }

  // floor-reduce every other row at the (new or shrunken) pivot column c
  void reduce_column(std::uint32_t c, const Row& pv) {
    for (auto& [d, r] : rows_) {
      if (d >= c) continue;  // rows with later pivots are zero at c
      auto pos = std::lower_bound(
          r.vec.entries.begin(), r.vec.entries.end(), c,
          [](const auto& e, std::uint32_t col) { return e.first < col; });
      if (pos == r.vec.entries.end() || pos->first != c) continue;
      BigInt q = detail::floor_div(pos->second, pv.vec.lead_coeff());
      if (q == 0) continue;
      axpy(Z_, r.vec, -q, pv.vec);
      if (track_) axpy(Z_, r.comb, -q, pv.comb);
    }
  }

  IntRing Z_;
  bool track_;
  std::uint32_t nsrc_ = 0;
  std::map<std::uint32_t, Row> rows_;
};

// ---------------------------------------------------------------------------
// Rational row space represented by primitive integer rows. Reductions are
// fraction-free; verdicts and coefficients are exact over Q.

class QSpanEchelon {
 public:
  explicit QSpanEchelon(bool track = false) : track_(track) {}

  bool add(SparseVec<IntRing> v) {
    SparseVec<RatRing> comb;
    if (track_) comb.entries.emplace_back(nsrc_, BigRat(1));
    ++nsrc_;
    while (!v.is_zero()) {
      std::uint32_t c = v.lead_pos();
      auto it = rows_.find(c);
      if (it == rows_.end()) {
        BigInt g = detail::content_of(v);
        if (v.lead_coeff() < 0) g = -g;
        if (g != 1) {
          for (auto& [i, cv] : v.entries) cv /= g;
          if (track_) scale_in_place(Q_, comb, detail::rat_fraction(BigInt(1), g));
        }
        rows_.emplace(c, Row{std::move(v), std::move(comb)});
        return true;
      }
      const Row& p = it->second;
      BigInt a = p.vec.lead_coeff(), b = v.lead_coeff();
      BigInt g = gcd(a, b);
      BigInt ag = a / g, bg = -(b / g);
      scale_in_place(Z_, v, ag);
      axpy(Z_, v, bg, p.vec);
      if (track_) {
        scale_in_place(Q_, comb, BigRat(ag));
        axpy(Q_, comb, BigRat(bg), p.comb);
      }
    }
    return false;
  }

  bool add_rat(const SparseVec<RatRing>& v) {
    return add(detail::clear_denominators(v));
  }

  std::size_t rank() const { return rows_.size(); }

  bool reduces_to_zero(SparseVec<IntRing> t) const {
    while (!t.is_zero()) {
      auto it = rows_.find(t.lead_pos());
      if (it == rows_.end()) return false;
      BigInt a = it->second.vec.lead_coeff(), b = t.lead_coeff();
      BigInt g = gcd(a, b);
      scale_in_place(Z_, t, a / g);
      axpy(Z_, t, -(b / g), it->second.vec);
      detail::make_primitive(t);
    }
    return true;
  }

  MembershipResult<RatRing> membership(const SparseVec<RatRing>& target) const {
    SparseVec<RatRing> t = target;
    std::map<std::uint32_t, BigRat> acc;
    while (!t.is_zero()) {
      auto it = rows_.find(t.lead_pos());
      if (it == rows_.end()) return {};
      BigRat q = t.lead_coeff() / BigRat(it->second.vec.lead_coeff());
      SparseVec<RatRing> rv;
      rv.entries.reserve(it->second.vec.entries.size());
      for (const auto& [i, c] : it->second.vec.entries) rv.entries.emplace_back(i, BigRat(c));
      axpy(Q_, t, Q_.neg(q), rv);
      if (track_)
        for (const auto& [j, c] : it->second.comb.entries) acc[j] += q * c;
    }
    MembershipResult<RatRing> res;
    res.verdict = Verdict::MEMBER;
    for (auto& [j, c] : acc)
      if (c != 0) res.coeffs.emplace_back(j, std::move(c));
    return res;
  }

  // Canonical form: integer RREF, i.e. zero entries at other pivot columns,
  // rows primitive with positive leads.
  void finalize_canonical() {
    for (auto& [c, pr] : rows_) {
      for (auto& [c2, r] : rows_) {
        if (c2 >= c) break;
        auto pos = std::lower_bound(
            r.vec.entries.begin(), r.vec.entries.end(), c,
            [](const auto& e, std::uint32_t col) { return e.first < col; });
        if (pos == r.vec.entries.end() || pos->first != c) continue;
        BigInt a = pr.vec.lead_coeff(), b = pos->second;
        BigInt g = gcd(a, b);
        BigInt ag = a / g, bg = -(b / g);
        scale_in_place(Z_, r.vec, ag);
        axpy(Z_, r.vec, bg, pr.vec);
        if (track_) {
          scale_in_place(Q_, r.comb, BigRat(ag));
          axpy(Q_, r.comb, BigRat(bg), pr.comb);
        }
        BigInt ct = detail::content_of(r.vec);
        if (r.vec.lead_coeff() < 0) ct = -ct;
        if (ct != 1) {
          for (auto& [i, cv] : r.vec.entries) cv /= ct;
          if (track_) scale_in_place(Q_, r.comb, detail::rat_fraction(BigInt(1), ct));
        }
      }
    }
  }

  std::vector<SparseVec<IntRing>> rows() const {
    std::vector<SparseVec<IntRing>> out;
    out.reserve(rows_.size());
    for (const auto& [c, r] : rows_) out.push_back(r.vec);
    return out;
  }

 private:
  struct Row {
    SparseVec<IntRing> vec;
    SparseVec<RatRing> comb;
  };
  IntRing Z_;
  RatRing Q_;
  bool track_;
  std::uint32_t nsrc_ = 0;
  std::map<std::uint32_t, Row> rows_;
};

// ---------------------------------------------------------------------------
// Echelon over a prime field; pivot rows are kept monic.

class ModEchelon {
 public:
  explicit ModEchelon(const ModRing& rg, bool track = false) : rg_(rg), track_(track) {}

  bool add(SparseVec<ModRing> v) {
    SparseVec<ModRing> comb;
    if (track_) comb.entries.emplace_back(nsrc_, rg_.one());
    ++nsrc_;
    while (!v.is_zero()) {
      std::uint32_t c = v.lead_pos();
      auto it = rows_.find(c);
      if (it == rows_.end()) {
        std::uint64_t s = rg_.inv(v.lead_coeff());
        scale_in_place(rg_, v, s);
        if (track_) scale_in_place(rg_, comb, s);
        rows_.emplace(c, Row{std::move(v), std::move(comb)});
        return true;
      }
      std::uint64_t q = rg_.neg(v.lead_coeff());
      axpy(rg_, v, q, it->second.vec);
      if (track_) axpy(rg_, comb, q, it->second.comb);
    }
    return false;
  }

  std::size_t rank() const { return rows_.size(); }

  bool reduces_to_zero(SparseVec<ModRing> t) const {
    while (!t.is_zero()) {
      auto it = rows_.find(t.lead_pos());
      if (it == rows_.end()) return false;
      axpy(rg_, t, rg_.neg(t.lead_coeff()), it->second.vec);
    }
    return true;
  }

  MembershipResult<ModRing> membership(const SparseVec<ModRing>& target) const {
    SparseVec<ModRing> t = target;
    std::map<std::uint32_t, std::uint64_t> acc;
    while (!t.is_zero()) {
      auto it = rows_.find(t.lead_pos());
      if (it == rows_.end()) return {};
      std::uint64_t q = t.lead_coeff();
      axpy(rg_, t, rg_.neg(q), it->second.vec);
      if (track_)
        for (const auto& [j, c] : it->second.comb.entries)
          acc[j] = rg_.add(acc[j], rg_.mul(q, c));
    }
    MembershipResult<ModRing> res;
    res.verdict = Verdict::MEMBER;
    for (auto& [j, c] : acc)
      if (c != 0) res.coeffs.emplace_back(j, c);
    return res;
  }

  void finalize_canonical() {
    for (auto& [c, pr] : rows_) {
      for (auto& [c2, r] : rows_) {
        if (c2 >= c) break;
        auto pos = std::lower_bound(
            r.vec.entries.begin(), r.vec.entries.end(), c,
            [](const auto& e, std::uint32_t col) { return e.first < col; });
        if (pos == r.vec.entries.end() || pos->first != c) continue;
        std::uint64_t q = rg_.neg(pos->second);
        axpy(rg_, r.vec, q, pr.vec);
        if (track_) axpy(rg_, r.comb, q, pr.comb);
      }
    }
  }

  std::vector<SparseVec<ModRing>> rows() const {
    std::vector<SparseVec<ModRing>> out;
    out.reserve(rows_.size());
    for (const auto& [c, r] : rows_) out.push_back(r.vec);
    return out;
  }

  const ModRing& ring() const { return rg_; }

 private:
  struct Row {
    SparseVec<ModRing> vec;
    SparseVec<ModRing> comb;
  };
  ModRing rg_;
  bool track_;
  std::uint32_t nsrc_ = 0;
  std::map<std::uint32_t, Row> rows_;
};

// ---------------------------------------------------------------------------
// Span-level convenience API.

inline MembershipResult<IntRing> lattice_membership(const std::vector<SparseVec<IntRing>>& span,
                                                    const SparseVec<IntRing>& target,
                                                    bool want_coeffs = true) {
  ZLattice L(want_coeffs);
  for (const auto& v : span) L.add(v);
  return L.membership(target);
}

template <class R>
MembershipResult<R> field_membership(const R& rg, const std::vector<SparseVec<R>>& span,
                                     const SparseVec<R>& target, bool want_coeffs = true) {
  if constexpr (R::tag == RingTag::INT) {
    throw std::invalid_argument(
        "field_membership requires a field ring; use lattice_membership over Z");
  } else if constexpr (R::tag == RingTag::RAT) {
    QSpanEchelon E(want_coeffs);
    for (const auto& v : span) E.add_rat(v);
    return E.membership(target);
  } else {
    ModEchelon E(rg, want_coeffs);
    for (const auto& v : span) E.add(v);
    return E.membership(target);
  }
}

template <class R>
std::size_t rank_of(const R& rg, const std::vector<SparseVec<R>>& span) {
  if constexpr (R::tag == RingTag::INT) {
    ZLattice L;
    for (const auto& v : span) L.add(v);
    return L.rank();
  } else if constexpr (R::tag == RingTag::RAT) {
    QSpanEchelon E;
    for (const auto& v : span) E.add_rat(v);
    return E.rank();
  } else {
    ModEchelon E(rg);
    for (const auto& v : span) E.add(v);
    return E.rank();
  }
}

enum class SpanRelation { EQUAL, A_NOT_IN_B, B_NOT_IN_A };

template <class R>
struct SpanEqualResult {
  SpanRelation relation = SpanRelation::EQUAL;
  SparseVec<R> witness;  // a vector of one span not lying in the other
  bool equal() const { return relation == SpanRelation::EQUAL; }
};

// Mutual inclusion with witnesses; over INT inclusion means lattice
// membership (divisibility included), over fields linear span membership.
template <class R>
SpanEqualResult<R> span_equal(const R& rg, const std::vector<SparseVec<R>>& a,
                              const std::vector<SparseVec<R>>& b) {
  SpanEqualResult<R> res;
  auto run = [&](auto& EA, auto& EB) {
    for (const auto& v : a) EA.add(v);
    for (const auto& v : b) EB.add(v);
    for (const auto& v : a)
      if (!EB.reduces_to_zero(v)) {
        res.relation = SpanRelation::A_NOT_IN_B;
        res.witness = v;
        return;
      }
    for (const auto& v : b)
      if (!EA.reduces_to_zero(v)) {
        res.relation = SpanRelation::B_NOT_IN_A;
        res.witness = v;
        return;
      }
  };
  if constexpr (R::tag == RingTag::INT) {
    ZLattice EA, EB;
    run(EA, EB);
  } else if constexpr (R::tag == RingTag::RAT) {
    QSpanEchelon EA, EB;
    auto clear_den = [](const std::vector<SparseVec<RatRing>>& rows) {
      std::vector<SparseVec<IntRing>> out;
      out.reserve(rows.size());
      for (const auto& v : rows) out.push_back(detail::clear_denominators(v));
      return out;
    };
    auto ia = clear_den(a), ib = clear_den(b);
    for (const auto& v : ia) EA.add(v);
    for (const auto& v : ib) EB.add(v);
    for (std::size_t k = 0; k < ia.size(); ++k)
      if (!EB.reduces_to_zero(ia[k])) {
        res.relation = SpanRelation::A_NOT_IN_B;
        res.witness = a[k];
        return res;
      }
    for (std::size_t k = 0; k < ib.size(); ++k)
      if (!EA.reduces_to_zero(ib[k])) {
        res.relation = SpanRelation::B_NOT_IN_A;
        res.witness = b[k];
        return res;
      }
    return res;
  } else {
    ModEchelon EA(rg), EB(rg);
    run(EA, EB);
  }
  return res;
}

// ---------------------------------------------------------------------------
// Smith normal form of a small dense integer matrix; returns the nonzero
// invariant factors d1 | d2 | ... (positive). Intended for cross-checks, not
// for large components.

inline std::vector<BigInt> smith_normal_form(std::vector<std::vector<BigInt>> m) {
  std::vector<BigInt> divisors;
  std::size_t top = 0;
  std::size_t nrows = m.size(), ncols = nrows ? m[0].size() : 0;
  while (top < nrows && top < ncols) {
    // locate a nonzero entry of least magnitude in the working block
    std::size_t pi = top, pj = top;
    bool found = false;
    for (std::size_t i = top; i < nrows; ++i)
      for (std::size_t j = top; j < ncols; ++j)
        if (m[i][j] != 0 &&
            (!found || abs(m[i][j]) < abs(m[pi][pj]))) {
          pi = i; pj = j; found = true;
        }
    if (!found) break;
    std::swap(m[top], m[pi]);
    for (std::size_t i = 0; i < nrows; ++i) std::swap(m[i][top], m[i][pj]);
    bool dirty = true;
    while (dirty) {
      dirty = false;
      for (std::size_t i = top + 1; i < nrows; ++i) {
        if (m[i][top] == 0) continue;
        BigInt q = m[i][top] / m[top][top];
        for (std::size_t j = top; j < ncols; ++j) m[i][j] -= q * m[top][j];
        if (m[i][top] != 0) {  // remainder smaller than pivot; swap up and restart
          std::swap(m[top], m[i]);
          dirty = true;
        }
      }
      for (std::size_t j = top + 1; j < ncols; ++j) {
        if (m[top][j] == 0) continue;
        BigInt q = m[top][j] / m[top][top];
        for (std::size_t i = top; i < nrows; ++i) m[i][j] -= q * m[i][top];
        if (m[top][j] != 0) {
          for (std::size_t i = 0; i < nrows; ++i) std::swap(m[i][top], m[i][j]);
          dirty = true;
        }
      }
      if (!dirty) {
        // pivot must divide the rest of the block; fold a violator in and redo
        for (std::size_t i = top + 1; i < nrows && !dirty; ++i)
          for (std::size_t j = top + 1; j < ncols && !dirty; ++j)
            if (m[i][j] % m[top][top] != 0) {
              for (std::size_t jj = top; jj < ncols; ++jj) m[top][jj] += m[i][jj];
              dirty = true;
            }
      }
    }
    divisors.push_back(abs(m[top][top]));
    ++top;
  }
  return divisors;
}

// ---------------------------------------------------------------------------
// Sparse matrix file format, used for the on-disk cache of canonical echelon
// matrices. Layout:
//   lnt-echelon <ring-name> <nrows> <ncols>
//   <row> <col> <value>             one line per nonzero entry
// Reload must be bit-exact, so values round-trip through exact decimal text.

namespace detail {

inline BigInt parse_elem(const IntRing&, const std::string& s) { return BigInt(s); }
inline BigRat parse_elem(const RatRing&, const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return BigRat(BigInt(s));
  return rat_fraction(BigInt(s.substr(0, slash)), BigInt(s.substr(slash + 1)));
}
inline std::uint64_t parse_elem(const ModRing&, const std::string& s) { return std::stoull(s); }

}  // namespace detail

template <class R>
void save_rows(const std::string& path, const R& rg, const std::vector<SparseVec<R>>& rows,
               std::size_t ncols) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << "lnt-echelon " << rg.name() << " " << rows.size() << " " << ncols << "\n";
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (const auto& [j, c] : rows[i].entries)
      out << i << " " << j << " " << rg.str(c) << "\n";
  if (!out) throw std::runtime_error("write failed: " + path);
}

template <class R>
std::vector<SparseVec<R>> load_rows(const std::string& path, const R& rg, std::size_t& ncols) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::string magic, ring_name;
  std::size_t nrows = 0;
  in >> magic >> ring_name >> nrows >> ncols;
  if (magic != "lnt-echelon") throw std::runtime_error(path + ": not an echelon file");
  if (ring_name != rg.name())
    throw std::runtime_error(path + ": ring " + ring_name + ", expected " + rg.name());
  std::vector<SparseVec<R>> rows(nrows);
  std::size_t i;
  std::uint32_t j;
  std::string val;
  while (in >> i >> j >> val) {
    if (i >= nrows) throw std::runtime_error(path + ": row index out of range");
    rows[i].entries.emplace_back(j, detail::parse_elem(rg, val));
  }
  return rows;
}

}  // namespace lnt
