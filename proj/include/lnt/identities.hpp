#pragma once

#include <cstddef>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "poly.hpp"

namespace lnt {

// Formal expression over numbered argument slots. Bracket nodes are
// left-normed: kids (e1, ..., ek) mean [e1, e2, ..., ek] = [[e1,e2],...,ek].
// Identities are stored as (lhs, rhs) Expr pairs and checked by evaluating
// both sides at concrete polynomials and subtracting, so no pattern matching
// or unification is ever needed.
struct Expr {
  enum class Kind { Slot, Prod, Bracket, Sum };

  Kind kind = Kind::Slot;
  int slot = 0;                 // Slot nodes only, 1-based
  std::vector<Expr> kids;       // Prod, Bracket, Sum
  std::vector<BigInt> weights;  // Sum nodes only, parallel to kids

  static Expr S(int i) {
    if (i < 1) throw std::invalid_argument("slot index must be positive");
    Expr e;
    e.kind = Kind::Slot;
    e.slot = i;
    return e;
  }
  static Expr P(std::vector<Expr> ks) {
    if (ks.empty()) throw std::invalid_argument("empty product");
    if (ks.size() == 1) return ks.front();
    Expr e;
    e.kind = Kind::Prod;
    e.kids = std::move(ks);
    return e;
  }
  static Expr B(std::vector<Expr> ks) {
    if (ks.size() < 2) throw std::invalid_argument("bracket needs >= 2 entries");
    Expr e;
    e.kind = Kind::Bracket;
    e.kids = std::move(ks);
    return e;
  }
  static Expr zero() {
    Expr e;
    e.kind = Kind::Sum;
    return e;
  }
};

// Sums flatten so that a chain a + b - c becomes one Sum node; products
// flatten likewise. Scalar weights stay on the Sum node.
inline Expr expr_sum(std::vector<std::pair<BigInt, Expr>> parts) {
  Expr e;
  e.kind = Expr::Kind::Sum;
  for (auto& [c, sub] : parts) {
    if (sub.kind == Expr::Kind::Sum) {
      for (std::size_t i = 0; i < sub.kids.size(); ++i) {
        e.weights.push_back(c * sub.weights[i]);
        e.kids.push_back(sub.kids[i]);
      }
    } else {
      e.weights.push_back(c);
      e.kids.push_back(std::move(sub));
    }
  }
  return e;
}

inline Expr operator+(Expr a, Expr b) {
  return expr_sum({{BigInt(1), std::move(a)}, {BigInt(1), std::move(b)}});
}
inline Expr operator-(Expr a, Expr b) {
  return expr_sum({{BigInt(1), std::move(a)}, {BigInt(-1), std::move(b)}});
}
inline Expr operator-(Expr a) { return expr_sum({{BigInt(-1), std::move(a)}}); }
inline Expr operator*(Expr a, Expr b) {
  std::vector<Expr> ks;
  auto push = [&ks](Expr e) {
    if (e.kind == Expr::Kind::Prod) {
      for (auto& k : e.kids) ks.push_back(std::move(k));
    } else {
      ks.push_back(std::move(e));
    }
  };
  push(std::move(a));
  push(std::move(b));
  return Expr::P(std::move(ks));
}

inline int expr_max_slot(const Expr& e) {
  int m = e.kind == Expr::Kind::Slot ? e.slot : 0;
  for (const auto& k : e.kids) m = std::max(m, expr_max_slot(k));
  return m;
}

template <class R>
Poly<R> eval_expr(const R& rg, const Expr& e, const std::vector<Poly<R>>& args) {
  switch (e.kind) {
    case Expr::Kind::Slot:
      if (e.slot < 1 || static_cast<std::size_t>(e.slot) > args.size())
        throw std::invalid_argument("expression refers to slot " + std::to_string(e.slot) +
                                    " but only " + std::to_string(args.size()) + " arguments given");
      return args[static_cast<std::size_t>(e.slot) - 1];
    case Expr::Kind::Prod: {
      Poly<R> acc = eval_expr(rg, e.kids.front(), args);
      for (std::size_t i = 1; i < e.kids.size(); ++i) acc = acc * eval_expr(rg, e.kids[i], args);
      return acc;
    }
    case Expr::Kind::Bracket: {
      std::vector<Poly<R>> vals;
      vals.reserve(e.kids.size());
      for (const auto& k : e.kids) vals.push_back(eval_expr(rg, k, args));
      return left_normed(vals);
    }
    case Expr::Kind::Sum: {
      Poly<R> acc = Poly<R>::zero(rg);
      for (std::size_t i = 0; i < e.kids.size(); ++i)
        acc += eval_expr(rg, e.kids[i], args).scaled(rg.from_bigint(e.weights[i]));
      return acc;
    }
  }
  throw std::logic_error("unreachable expression kind");
}

// One catalog identity. The note records a delicate sign or border choice a
// reader should re-check by hand; it is surfaced verbatim in suite reports.
struct IdentityDef {
  std::string id;
  int arity = 0;
  Expr lhs;
  Expr rhs;
  std::string note;
};

namespace detail {

inline std::vector<IdentityDef> build_identity_catalog() {
  using E = Expr;
  auto S = [](int i) { return E::S(i); };
  // bracket over slot indices, the common case
  auto B = [&](std::vector<int> is) {
    std::vector<E> ks;
    ks.reserve(is.size());
    for (int i : is) ks.push_back(E::S(i));
    return E::B(std::move(ks));
  };
  // bracket whose leading entry is a compound expression
  auto BX = [](E head, std::vector<int> is) {
    std::vector<E> ks;
    ks.push_back(std::move(head));
    for (int i : is) ks.push_back(E::S(i));
    return E::B(std::move(ks));
  };

  std::vector<IdentityDef> cat;
  auto put = [&cat](std::string id, int arity, E lhs, E rhs, std::string note = "") {
    if (expr_max_slot(lhs) > arity || expr_max_slot(rhs) > arity)
      throw std::logic_error("identity " + id + " uses a slot beyond its arity");
    cat.push_back({std::move(id), arity, std::move(lhs), std::move(rhs), std::move(note)});
  };

  // [u, v1 v2] = v1 [u, v2] + [u, v1] v2          slots: u, v1, v2
  put("LEIBNIZ_RIGHT", 3, E::B({S(1), S(2) * S(3)}),
      S(2) * B({1, 3}) + B({1, 2}) * S(3));

  // [u1 u2, v] = u1 [u2, v] + [u1, v] u2          slots: u1, u2, v
  put("LEIBNIZ_LEFT", 3, E::B({S(1) * S(2), S(3)}),
      S(1) * B({2, 3}) + B({1, 3}) * S(2));

  // [u1 u2, v, w], four terms                     slots: u1, u2, v, w
  put("EXPAND_3", 4, E::B({S(1) * S(2), S(3), S(4)}),
      S(1) * B({2, 3, 4}) + B({1, 4}) * B({2, 3}) + B({1, 3}) * B({2, 4}) +
          B({1, 3, 4}) * S(2));

  // [u1 u2, v, w, t], eight terms                 slots: u1, u2, v, w, t
  put("EXPAND_4", 5, E::B({S(1) * S(2), S(3), S(4), S(5)}),
      S(1) * B({2, 3, 4, 5}) + B({1, 5}) * B({2, 3, 4}) + B({1, 4}) * B({2, 3, 5}) +
          B({1, 4, 5}) * B({2, 3}) + B({1, 3}) * B({2, 4, 5}) + B({1, 3, 5}) * B({2, 4}) +
          B({1, 3, 4}) * B({2, 5}) + B({1, 3, 4, 5}) * S(2));

  // cyclic sum of left-normed 3-brackets vanishes
  put("JACOBI", 3, B({1, 2, 3}) + B({2, 3, 1}) + B({3, 1, 2}), E::zero());

  // [s1,s2,s3,s4 s5,s6] rewritten with word borders on the outside.
  put("D1", 6, E::B({S(1), S(2), S(3), S(4) * S(5), S(6)}),
      S(4) * B({1, 2, 3, 5, 6}) + B({1, 2, 3, 5}) * B({4, 6}) + B({1, 2, 3, 4}) * B({5, 6}) -
          E::B({B({1, 2, 3, 5}), B({4, 6})}) + B({1, 2, 3, 4, 6}) * S(5),
      "the subtracted double bracket pairs [s1,s2,s3,s5] with [s4,s6]; pairing "
      "[s1,s2,s3,s4] with [s5,s6] instead does not balance");

  // [s1, s2 s3, s4]                               slots: u, y1, y2, u2
  put("D2", 4, E::B({S(1), S(2) * S(3), S(4)}),
      S(2) * B({1, 3, 4}) + B({2, 4}) * B({1, 3}) + B({1, 2}) * B({3, 4}) +
          B({1, 2, 4}) * S(3));

  // [s1, s2 s3, s4, s5]                           slots: u, a, b, v, w
  put("D3", 5, E::B({S(1), S(2) * S(3), S(4), S(5)}),
      S(2) * B({1, 3, 4, 5}) + B({2, 5}) * B({1, 3, 4}) + B({2, 4}) * B({1, 3, 5}) +
          B({2, 4, 5}) * B({1, 3}) + B({1, 2}) * B({3, 4, 5}) + B({1, 2, 5}) * B({3, 4}) +
          B({1, 2, 4}) * B({3, 5}) + B({1, 2, 4, 5}) * S(3));

  // cyclic 3-bracket sum annihilates any right factor
  put("D4", 6, (B({1, 2, 3}) + B({2, 3, 1}) + B({3, 1, 2})) * B({4, 5, 6}), E::zero());

  // [s2 s3, s1, s4] with both borders moved right  slots: a4, a5, a6, a7
  put("D5", 4, E::B({S(2) * S(3), S(1), S(4)}),
      B({3, 1, 4}) * S(2) - B({3, 1, 4, 2}) - B({1, 2}) * B({3, 4}) - B({1, 3}) * B({2, 4}) +
          E::B({B({2, 4}), B({3, 1})}) + B({2, 1, 4}) * S(3),
      "the double bracket reads [[s2,s4],[s3,s1]]; no other pairing of these "
      "four letters into a bracket of 2-brackets balances the equality");

  {
    // q(a,b,c,d) = [a,b][c,d] + [a,c][b,d], the recurring 2+2 block
    auto q = [&](int a, int b, int c, int d) { return B({a, b}) * B({c, d}) + B({a, c}) * B({b, d}); };

    // [s2 s3, s1, s4] q(s5..s8): split form with the 2+2 block carried along
    put("D6", 8, E::B({S(2) * S(3), S(1), S(4)}) * q(5, 6, 7, 8),
        S(2) * B({3, 1, 4}) * q(5, 6, 7, 8) - q(1, 2, 3, 4) * q(5, 6, 7, 8) +
            E::B({B({2, 4}), B({3, 1})}) * q(5, 6, 7, 8) +
            (S(3) * B({2, 1, 4}) + B({2, 1, 4, 3})) * q(5, 6, 7, 8));

    // shared inner rewriting of [s2 s3, s1, s4] used by D7 and D8
    auto inner = [&]() {
      return S(2) * B({3, 1, 4}) - q(1, 2, 3, 4) + E::B({B({2, 4}), B({3, 1})}) +
             B({2, 1, 4}) * S(3);
    };

    put("D7", 6, E::B({S(2) * S(3), S(1), S(4), S(5), S(6)}), BX(inner(), {5, 6}));

    put("D8", 7,
        E::B({S(2) * S(3), S(1), S(4), S(5)}) * B({6, 7}) +
            E::B({S(2) * S(3), S(1), S(4), S(6)}) * B({5, 7}),
        BX(inner(), {5}) * B({6, 7}) + BX(inner(), {6}) * B({5, 7}));

    // 2+2 times 2+2, last slot split          slots: s1..s7 = a1..a7, s8|s9 halves
    put("D9", 9,
        q(1, 2, 3, 4) * (B({5, 6}) * E::B({S(7), S(8) * S(9)}) + B({5, 7}) * E::B({S(6), S(8) * S(9)})),
        q(1, 2, 3, 4) * (B({5, 6}) * B({7, 9}) + B({5, 7}) * B({6, 9})) * S(8) +
            q(1, 2, 3, 4) * (B({5, 6}) * B({7, 8}) + B({5, 7}) * B({6, 8})) * S(9) -
            q(1, 2, 3, 4) * (B({5, 6}) * B({7, 9, 8}) + B({5, 7}) * B({6, 9, 8})));

    // 2+2 times 2+2, first slot split         slots: s1|s2 halves, s3..s5 = a2..a4, s6..s9 = a5..a8
    put("D10", 9,
        (E::B({S(1) * S(2), S(3)}) * B({4, 5}) + E::B({S(1) * S(2), S(4)}) * B({3, 5})) * q(6, 7, 8, 9),
        S(1) * (B({2, 3}) * B({4, 5}) + B({2, 4}) * B({3, 5})) * q(6, 7, 8, 9) +
            S(2) * (B({1, 3}) * B({4, 5}) + B({1, 4}) * B({3, 5})) * q(6, 7, 8, 9) +
            (B({1, 3, 2}) * B({4, 5}) + B({1, 4, 2}) * B({3, 5})) * q(6, 7, 8, 9));

    // 2+2 times 2+2, seventh slot split       slots: s1..s6 = a1..a6, s7|s8 halves, s9 = a8
    put("D11", 9,
        q(1, 2, 3, 4) * (B({5, 6}) * E::B({S(7) * S(8), S(9)}) + E::B({S(5), S(7) * S(8)}) * B({6, 9})),
        q(1, 2, 3, 4) * (B({5, 6}) * B({8, 9}) + B({5, 8}) * B({6, 9})) * S(7) +
            q(1, 2, 3, 4) * (B({5, 6}) * B({7, 9}) + B({5, 7}) * B({6, 9})) * S(8) -
            q(1, 2, 3, 4) * (B({5, 6}) * B({8, 9, 7}) + B({5, 7}) * B({6, 9, 8})) -
            q(1, 2, 3, 4) * (B({5, 8}) * B({6, 9, 7}) + B({5, 8, 7}) * B({6, 9})));

    // 3-bracket times 2+2, first slot split   slots: s1|s2 halves, s3 s4 = a2 a3, s5..s8 = a4..a7
    put("D12", 8, E::B({S(1) * S(2), S(3), S(4)}) * q(5, 6, 7, 8),
        S(1) * B({2, 3, 4}) * q(5, 6, 7, 8) +
            (B({1, 4}) * B({2, 3}) + B({1, 3}) * B({2, 4})) * q(5, 6, 7, 8) +
            B({1, 3, 4}) * q(5, 6, 7, 8) * S(2) -
            B({1, 3, 4}) * E::B({q(5, 6, 7, 8), S(2)}));

    // [q, s5 s6, s7], fifth slot of the 2+2-then-bracket form split
    put("D13", 7, E::B({q(1, 2, 3, 4), S(5) * S(6), S(7)}),
        S(5) * E::B({q(1, 2, 3, 4), S(6), S(7)}) + E::B({q(1, 2, 3, 4), S(5), S(7)}) * S(6) +
            E::B({q(1, 2, 3, 4), S(5)}) * B({6, 7}) + E::B({q(1, 2, 3, 4), S(6)}) * B({5, 7}) -
            (E::B({q(1, 2, 3, 4), S(6), S(5), S(7)}) - E::B({q(1, 2, 3, 4), S(6), S(7), S(5)})),
        "the border of the second summand is the second half s6 of the split "
        "slot, and the trailing double-bracket difference enters with a minus "
        "sign");

    // [s4 w, s6, s7] for w = [s1,s2][s3,s5] + [s1,s3][s2,s5]
    auto w45 = [&]() { return B({1, 2}) * B({3, 5}) + B({1, 3}) * B({2, 5}); };
    put("D14", 7, E::B({S(4) * w45(), S(6), S(7)}),
        S(4) * E::B({w45(), S(6), S(7)}) -
            (E::B({w45(), S(7)}) * B({6, 4}) + E::B({w45(), S(6)}) * B({7, 4})) +
            B({4, 6, 7}) * w45() + E::B({E::B({w45(), S(7)}), B({6, 4})}) +
            E::B({E::B({w45(), S(6)}), B({7, 4})}),
        "both trailing double brackets enter with a plus sign, since AB = "
        "BA + [A,B] with A = [w,s7] and B = [s6,s4]");
  }

  // 4-bracket-times-2-bracket pair, second slot split
  // slots: s1 = a1, s2|s3 halves of a2, s4 s5 = a3 a4, s6 s7 = a5 a6
  {
    auto S = [](int i) { return E::S(i); };
    auto B = [&](std::vector<int> is) {
      std::vector<E> ks;
      for (int i : is) ks.push_back(E::S(i));
      return E::B(std::move(ks));
    };
    auto kappa = B({2, 4}) * B({1, 3}) + B({2, 1}) * B({4, 3});
    put("D15", 7,
        E::B({S(1), S(2) * S(3), S(4), S(5)}) * B({6, 7}) +
            E::B({S(1), S(2) * S(3), S(4), S(6)}) * B({5, 7}),
        S(2) * (B({1, 3, 4, 5}) * B({6, 7}) + B({1, 3, 4, 6}) * B({5, 7})) +
            S(3) * (B({1, 2, 4, 5}) * B({6, 7}) + B({1, 2, 4, 6}) * B({5, 7})) +
            B({1, 2, 4, 5, 3}) * B({6, 7}) + B({1, 2, 4, 6, 3}) * B({5, 7}) +
            B({1, 3, 4}) * (B({2, 5}) * B({6, 7}) + B({2, 6}) * B({5, 7})) +
            E::B({B({2, 5}), B({1, 3, 4})}) * B({6, 7}) +
            E::B({B({2, 6}), B({1, 3, 4})}) * B({5, 7}) +
            B({1, 2, 4}) * (B({3, 5}) * B({6, 7}) + B({3, 6}) * B({5, 7})) +
            E::B({kappa, S(5)}) * B({6, 7}) + E::B({kappa, S(6)}) * B({5, 7}));

    // 5-bracket, second slot split
    // slots: s1 = a1, s2|s3 halves of a2, s4 s5 s6 = a3 a4 a5
    auto kappa2 = B({2, 4}) * B({1, 3}) + B({1, 2}) * B({3, 4});
    put("D16", 6, E::B({S(1), S(2) * S(3), S(4), S(5), S(6)}),
        S(2) * B({1, 3, 4, 5, 6}) + B({2, 6}) * B({1, 3, 4, 5}) + B({2, 5}) * B({1, 3, 4, 6}) +
            B({2, 5, 6}) * B({1, 3, 4}) + B({1, 2, 4}) * B({3, 5, 6}) +
            B({1, 2, 4, 6}) * B({3, 5}) + B({1, 2, 4, 5}) * B({3, 6}) +
            B({1, 2, 4, 5, 6}) * S(3) + E::B({kappa2, S(5), S(6)}));
  }

  return cat;
}

}  // namespace detail

inline const std::vector<IdentityDef>& identity_catalog() {
  static const std::vector<IdentityDef> cat = detail::build_identity_catalog();
  return cat;
}

inline const IdentityDef& find_identity(const std::string& id) {
  for (const auto& d : identity_catalog())
    if (d.id == id) return d;
  throw std::invalid_argument("unknown identity id: " + id);
}

template <class R>
Poly<R> expand(const R& rg, const std::string& id, const std::vector<Poly<R>>& args) {
  const IdentityDef& d = find_identity(id);
  if (args.size() != static_cast<std::size_t>(d.arity))
    throw std::invalid_argument(id + " takes " + std::to_string(d.arity) + " arguments, got " +
                                std::to_string(args.size()));
  return eval_expr(rg, d.rhs, args);
}

template <class R>
Poly<R> check_identity(const R& rg, const std::string& id, const std::vector<Poly<R>>& args) {
  const IdentityDef& d = find_identity(id);
  if (args.size() != static_cast<std::size_t>(d.arity))
    throw std::invalid_argument(id + " takes " + std::to_string(d.arity) + " arguments, got " +
                                std::to_string(args.size()));
  return eval_expr(rg, d.lhs, args) - eval_expr(rg, d.rhs, args);
}

// A catalog extension computed elsewhere: both sides already evaluated over
// the integers at a fixed instantiation. The suite maps the difference into
// the requested ring, so one integer verification covers every ring.
struct DerivedIdentity {
  std::string id;
  std::string note;
  Poly<IntRing> lhs;
  Poly<IntRing> rhs;
};

struct SuiteEntry {
  std::string id;
  std::size_t residual_terms = 0;
  std::string note;
};

template <class R>
Poly<R> poly_from_int(const R& rg, const Poly<IntRing>& p) {
  Poly<R> out(rg);
  for (const auto& [w, c] : p.terms) out.add_term(w, rg.from_bigint(c));
  return out;
}

// Evaluates every catalog identity at fresh distinct variables x1..x_arity
// and reports the residual term count (0 means the identity holds). Extra
// entries are appended after the built-in catalog in the order given.
template <class R>
std::vector<SuiteEntry> run_derivation_suite_on(const R& rg,
                                                const std::vector<IdentityDef>& catalog,
                                                const std::vector<DerivedIdentity>& extra = {}) {
  std::vector<SuiteEntry> report;
  for (const auto& d : catalog) {
    std::vector<Poly<R>> args;
    args.reserve(static_cast<std::size_t>(d.arity));
    for (int i = 1; i <= d.arity; ++i) args.push_back(Poly<R>::var(rg, static_cast<Var>(i)));
    Poly<R> residual = eval_expr(rg, d.lhs, args) - eval_expr(rg, d.rhs, args);
    report.push_back({d.id, residual.terms.size(), d.note});
  }
  for (const auto& d : extra) {
    Poly<R> residual = poly_from_int(rg, d.lhs) - poly_from_int(rg, d.rhs);
    report.push_back({d.id, residual.terms.size(), d.note});
  }
  return report;
}

template <class R>
std::vector<SuiteEntry> run_derivation_suite(const R& rg,
                                             const std::vector<DerivedIdentity>& extra = {}) {
  return run_derivation_suite_on(rg, identity_catalog(), extra);
}

inline bool suite_all_zero(const std::vector<SuiteEntry>& report) {
  for (const auto& e : report)
    if (e.residual_terms != 0) return false;
  return true;
}

inline std::string suite_report_json(const std::vector<SuiteEntry>& report) {
  std::string out = "[";
  bool first = true;
  for (const auto& e : report) {
    if (!first) out += ",";
    first = false;
    out += "{\"id\":\"" + e.id + "\",\"residual_term_count\":" + std::to_string(e.residual_terms);
    if (!e.note.empty()) {
      out += ",\"note\":\"";
      for (char c : e.note) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
      }
      out += "\"";
    }
    out += "}";
  }
  out += "]";
  return out;
}

// Order of the permutation group generated by the given permutations of
// {0, ..., n-1}, by plain closure. Small n only; used to confirm that a
// handful of transpositions generate the full symmetric group.
inline std::size_t permutation_closure_order(std::size_t n,
                                             const std::vector<std::vector<std::size_t>>& gens) {
  std::vector<std::size_t> id(n);
  for (std::size_t i = 0; i < n; ++i) id[i] = i;
  std::set<std::vector<std::size_t>> seen{id};
  std::vector<std::vector<std::size_t>> frontier{id};
  while (!frontier.empty()) {
    std::vector<std::vector<std::size_t>> next;
    for (const auto& p : frontier) {
      for (const auto& g : gens) {
        if (g.size() != n) throw std::invalid_argument("generator size mismatch");
        std::vector<std::size_t> q(n);
        for (std::size_t i = 0; i < n; ++i) q[i] = g[p[i]];
        if (seen.insert(q).second) next.push_back(std::move(q));
      }
    }
    frontier = std::move(next);
  }
  return seen.size();
}

}  // namespace lnt
