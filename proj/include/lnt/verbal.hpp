#pragma once

// Membership certificates for the two-sided ideal generated by all values
// of the left-normed commutator [p1,p2,p3,p4,p5] on ring elements. A
// certificate writes its target as an integer combination of bordered
// generator values whose five slots may hold arbitrary polynomials, so one
// certificate built over the integers stays valid over every coefficient
// ring and under every substitution for its variables.

#include <algorithm>
#include <array>
#include <cstdint>
#include <deque>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "lnt/families.hpp"
#include "lnt/identities.hpp"
#include "lnt/parse.hpp"

namespace lnt {

struct VerbalTerm {
  BigInt coeff{0};
  Poly<IntRing> left{IntRing{}};
  std::array<Poly<IntRing>, 5> slots{Poly<IntRing>{IntRing{}}, Poly<IntRing>{IntRing{}},
                                     Poly<IntRing>{IntRing{}}, Poly<IntRing>{IntRing{}},
                                     Poly<IntRing>{IntRing{}}};
  Poly<IntRing> right{IntRing{}};
};

struct VerbalCertificate {
  Poly<IntRing> target;
  std::vector<VerbalTerm> terms;
  explicit VerbalCertificate(Poly<IntRing> t) : target(std::move(t)) {}
};

template <class R>
Poly<R> verbal_term_value(const R& rg, const VerbalTerm& t) {
  std::vector<Poly<R>> slots;
  slots.reserve(5);
  for (const auto& s : t.slots) slots.push_back(poly_from_int(rg, s));
  Poly<R> v = poly_from_int(rg, t.left) * left_normed(slots) * poly_from_int(rg, t.right);
  return v.scaled(rg.from_bigint(t.coeff));
}

template <class R>
Poly<R> verbal_value(const R& rg, const VerbalCertificate& c) {
  Poly<R> acc(rg);
  for (const auto& t : c.terms) acc += verbal_term_value(rg, t);
  return acc;
}

template <class R>
bool verify_verbal_over(const R& rg, const VerbalCertificate& c) {
  return verbal_value(rg, c) == poly_from_int(rg, c.target);
}

inline bool verify_verbal(const VerbalCertificate& c) {
  IntRing Z;
  return verify_verbal_over(Z, c);
}

inline VerbalCertificate verbal_add(VerbalCertificate a, const VerbalCertificate& b) {
  a.target += b.target;
  a.terms.insert(a.terms.end(), b.terms.begin(), b.terms.end());
  return a;
}

inline VerbalCertificate verbal_scale(const BigInt& k, VerbalCertificate c) {
  IntRing Z;
  c.target = c.target.scaled(k);
  if (k == 0) {
    c.terms.clear();
    return c;
  }
  for (auto& t : c.terms) t.coeff *= k;
  return c;
}

inline VerbalCertificate verbal_mul_left(const Poly<IntRing>& p, VerbalCertificate c) {
  c.target = p * c.target;
  for (auto& t : c.terms) t.left = p * t.left;
  return c;
}

inline VerbalCertificate verbal_mul_right(VerbalCertificate c, const Poly<IntRing>& p) {
  c.target = c.target * p;
  for (auto& t : c.terms) t.right = t.right * p;
  return c;
}

// [value, p] = value*p - p*value, applied term by term.
inline VerbalCertificate verbal_comm(const VerbalCertificate& c, const Poly<IntRing>& p) {
  return verbal_add(verbal_mul_right(c, p), verbal_scale(-1, verbal_mul_left(p, c)));
}

namespace detail {

inline void collect_vars(const Poly<IntRing>& p, std::map<Var, Poly<IntRing>>& images) {
  IntRing Z;
  for (const auto& [w, c] : p.terms)
    for (Var v : w.letters) images.try_emplace(v, Poly<IntRing>::var(Z, v));
}

}  // namespace detail

// Simultaneous substitution into target, borders and slots. Variables
// without an image are kept, so partial maps are fine.
inline VerbalCertificate verbal_substitute(const VerbalCertificate& c,
                                           std::map<Var, Poly<IntRing>> images) {
  detail::collect_vars(c.target, images);
  for (const auto& t : c.terms) {
    detail::collect_vars(t.left, images);
    for (const auto& s : t.slots) detail::collect_vars(s, images);
    detail::collect_vars(t.right, images);
  }
  VerbalCertificate out{substitute(c.target, images)};
  out.terms.reserve(c.terms.size());
  for (const auto& t : c.terms) {
    VerbalTerm nt;
    nt.coeff = t.coeff;
    nt.left = substitute(t.left, images);
    for (int i = 0; i < 5; ++i) nt.slots[static_cast<std::size_t>(i)] =
        substitute(t.slots[static_cast<std::size_t>(i)], images);
    nt.right = substitute(t.right, images);
    out.terms.push_back(std::move(nt));
  }
  return out;
}

// Merges terms that share borders and slots; drops zero coefficients and
// terms whose generator value vanishes identically.
inline VerbalCertificate verbal_coalesce(const VerbalCertificate& c) {
  IntRing Z;
  std::map<std::string, VerbalTerm> merged;
  for (const auto& t : c.terms) {
    std::string key = format_poly(t.left);
    for (const auto& s : t.slots) {
      key += '|';
      key += format_poly(s);
    }
    key += '|';
    key += format_poly(t.right);
    auto [it, fresh] = merged.try_emplace(std::move(key), t);
    if (!fresh) it->second.coeff += t.coeff;
  }
  VerbalCertificate out{c.target};
  for (auto& [k, t] : merged) {
    if (t.coeff == 0) continue;
    std::vector<Poly<IntRing>> slots(t.slots.begin(), t.slots.end());
    if (left_normed(slots).is_zero()) continue;
    out.terms.push_back(std::move(t));
  }
  return out;
}

// One generator value [s1,s2,s3,s4,s5] as its own certificate.
inline VerbalCertificate verbal_generator(std::array<Poly<IntRing>, 5> slots) {
  IntRing Z;
  std::vector<Poly<IntRing>> v(slots.begin(), slots.end());
  VerbalCertificate c{left_normed(v)};
  VerbalTerm t;
  t.coeff = 1;
  t.left = Poly<IntRing>::one(Z);
  t.slots = std::move(slots);
  t.right = Poly<IntRing>::one(Z);
  c.terms.push_back(std::move(t));
  return c;
}

// Left-normed commutator of five or more entries: the excess entries are
// peeled into commutator borders of the five-slot core.
inline VerbalCertificate verbal_left_normed(const std::vector<Poly<IntRing>>& ps) {
  if (ps.size() < 5)
    throw std::invalid_argument("verbal_left_normed needs at least five entries");
  VerbalCertificate c = verbal_generator({ps[0], ps[1], ps[2], ps[3], ps[4]});
  for (std::size_t i = 5; i < ps.size(); ++i) c = verbal_comm(c, ps[i]);
  return c;
}

namespace detail {

using PolyList = std::vector<Poly<IntRing>>;

// Flattens [ [A], [B] ] into signed left-normed lists via
// [M,[N,z]] = [[M,N],z] - [[M,z],N].
inline void bracket_pair_lists(const PolyList& a, const PolyList& b, int sign,
                               std::vector<std::pair<int, PolyList>>& out) {
  if (b.size() == 1) {
    PolyList l = a;
    l.push_back(b[0]);
    out.emplace_back(sign, std::move(l));
    return;
  }
  PolyList p(b.begin(), b.end() - 1);
  const Poly<IntRing>& z = b.back();
  std::vector<std::pair<int, PolyList>> inner;
  bracket_pair_lists(a, p, sign, inner);
  for (auto& [s, l] : inner) {
    l.push_back(z);
    out.emplace_back(s, std::move(l));
  }
  PolyList az = a;
  az.push_back(z);
  bracket_pair_lists(az, p, -sign, out);
}

}  // namespace detail

// Certificate for the commutator of two left-normed Lie values,
// [ [a1,..,aj], [b1,..,bk] ] with j + k >= 5.
inline VerbalCertificate verbal_bracket_pair(const std::vector<Poly<IntRing>>& a,
                                             const std::vector<Poly<IntRing>>& b) {
  if (a.empty() || b.empty() || a.size() + b.size() < 5)
    throw std::invalid_argument("verbal_bracket_pair needs lists of joint length five");
  std::vector<std::pair<int, detail::PolyList>> lists;
  detail::bracket_pair_lists(a, b, 1, lists);
  VerbalCertificate c{bracket(left_normed(a), left_normed(b))};
  for (auto& [s, l] : lists) {
    VerbalCertificate piece = verbal_scale(s, verbal_left_normed(l));
    c.terms.insert(c.terms.end(), piece.terms.begin(), piece.terms.end());
  }
  if (!verify_verbal(c)) throw std::logic_error("bracket pair certificate mismatch");
  return c;
}

// [p1,p2,p3,p4][p5,p6] + [p1,p2,p3,p5][p4,p6], from expanding
// [p1,p2,p3,p4*p5,p6] and moving the commutator remainders across.
inline VerbalCertificate verbal_rule_42(const Poly<IntRing>& p1, const Poly<IntRing>& p2,
                                        const Poly<IntRing>& p3, const Poly<IntRing>& p4,
                                        const Poly<IntRing>& p5, const Poly<IntRing>& p6) {
  IntRing Z;
  std::vector<Poly<IntRing>> q{p1, p2, p3, p4};
  Poly<IntRing> target = left_normed(q) * bracket(p5, p6);
  std::vector<Poly<IntRing>> q2{p1, p2, p3, p5};
  target += left_normed(q2) * bracket(p4, p6);
  VerbalCertificate c = verbal_left_normed({p1, p2, p3, p4 * p5, p6});
  c = verbal_add(std::move(c), verbal_scale(-1, verbal_mul_left(p4, verbal_left_normed({p1, p2, p3, p5, p6}))));
  c = verbal_add(std::move(c), verbal_scale(-1, verbal_mul_right(verbal_left_normed({p1, p2, p3, p4, p6}), p5)));
  c = verbal_add(std::move(c), verbal_bracket_pair({p1, p2, p3, p5}, {p4, p6}));
  c.target = target;
  if (!verify_verbal(c)) throw std::logic_error("rule 42 certificate mismatch");
  return c;
}

// [y1,[p,q]][[r,s],y2] + [[r,s],y1][y2,[p,q]], from expanding the middle
// slot of [[r,s], y1*y2, [p,q]].
inline VerbalCertificate verbal_rule_pair(const Poly<IntRing>& r, const Poly<IntRing>& s,
                                          const Poly<IntRing>& p, const Poly<IntRing>& q,
                                          const Poly<IntRing>& y1, const Poly<IntRing>& y2) {
  Poly<IntRing> u1 = bracket(r, s);
  Poly<IntRing> u2 = bracket(p, q);
  Poly<IntRing> target = bracket(y1, u2) * bracket(u1, y2) + bracket(u1, y1) * bracket(y2, u2);
  VerbalCertificate c = verbal_bracket_pair({r, s, y1 * y2}, {p, q});
  c = verbal_add(std::move(c), verbal_scale(-1, verbal_mul_left(y1, verbal_bracket_pair({r, s, y2}, {p, q}))));
  c = verbal_add(std::move(c), verbal_scale(-1, verbal_mul_right(verbal_bracket_pair({r, s, y1}, {p, q}), y2)));
  c.target = target;
  if (!verify_verbal(c)) throw std::logic_error("pair rule certificate mismatch");
  return c;
}

namespace detail {

template <std::size_t N>
std::array<Poly<IntRing>, N> fresh_vars() {
  IntRing Z;
  return [&]<std::size_t... I>(std::index_sequence<I...>) {
    return std::array<Poly<IntRing>, N>{Poly<IntRing>::var(Z, static_cast<Var>(I + 1))...};
  }(std::make_index_sequence<N>{});
}

inline Poly<IntRing> triple(const Poly<IntRing>& a, const Poly<IntRing>& b,
                            const Poly<IntRing>& c) {
  return left_normed(std::vector<Poly<IntRing>>{a, b, c});
}

inline Poly<IntRing> prod33(const std::array<Poly<IntRing>, 6>& v) {
  return triple(v[0], v[1], v[2]) * triple(v[3], v[4], v[5]);
}

// F + (36)F for F = [v1,v2,v3][v4,v5,v6]: the pair rule at
// (r,s)=(v1,v2), (p,q)=(v4,v5), y1=v3, y2=v6, then one product swap.
inline VerbalCertificate rule_t36(const std::array<Poly<IntRing>, 6>& v) {
  Poly<IntRing> target = prod33(v) + prod33({v[0], v[1], v[5], v[3], v[4], v[2]});
  VerbalCertificate c =
      verbal_scale(-1, verbal_rule_pair(v[0], v[1], v[3], v[4], v[2], v[5]));
  c = verbal_add(std::move(c),
                 verbal_scale(-1, verbal_bracket_pair({v[3], v[4], v[2]}, {v[0], v[1], v[5]})));
  c.target = target;
  if (!verify_verbal(c)) throw std::logic_error("transposition 36 certificate mismatch");
  return c;
}

// F + (34)F, from expanding the middle slot of [v1,v2,v3*v4,v5,v6] and
// clearing the mixed products with rule 42 and product swaps.
inline VerbalCertificate rule_t34(const std::array<Poly<IntRing>, 6>& v) {
  const Poly<IntRing>&a1 = v[0], &a2 = v[1], &a3 = v[2], &a4 = v[3], &a5 = v[4], &a6 = v[5];
  Poly<IntRing> target = prod33(v) + prod33({a1, a2, a4, a3, a5, a6});
  VerbalCertificate c = verbal_left_normed({a1, a2, a3 * a4, a5, a6});
  c = verbal_add(std::move(c), verbal_scale(-1, verbal_mul_left(a3, verbal_left_normed({a1, a2, a4, a5, a6}))));
  c = verbal_add(std::move(c), verbal_scale(-1, verbal_mul_right(verbal_left_normed({a1, a2, a3, a5, a6}), a4)));
  c = verbal_add(std::move(c), verbal_rule_42(a1, a2, a3, a6, a5, a4));
  c = verbal_add(std::move(c), verbal_rule_42(a1, a2, a4, a5, a6, a3));
  c = verbal_add(std::move(c), verbal_scale(-1, verbal_bracket_pair({a3, a6}, {a1, a2, a4, a5})));
  c = verbal_add(std::move(c), verbal_scale(-1, verbal_bracket_pair({a3, a5}, {a1, a2, a4, a6})));
  c = verbal_add(std::move(c), verbal_scale(-1, verbal_bracket_pair({a3, a5, a6}, {a1, a2, a4})));
  c.target = target;
  if (!verify_verbal(c)) throw std::logic_error("transposition 34 certificate mismatch");
  return c;
}

using Perm6 = std::array<std::uint8_t, 6>;

inline Perm6 perm_compose(const Perm6& p, const Perm6& q) {
  Perm6 r;
  for (int i = 0; i < 6; ++i) r[static_cast<std::size_t>(i)] = p[q[static_cast<std::size_t>(i)] - 1];
  return r;
}

inline std::map<Var, Poly<IntRing>> perm_images(const Perm6& p) {
  IntRing Z;
  std::map<Var, Poly<IntRing>> m;
  for (int i = 0; i < 6; ++i)
    m.emplace(static_cast<Var>(i + 1),
              Poly<IntRing>::var(Z, static_cast<Var>(p[static_cast<std::size_t>(i)])));
  return m;
}

inline Poly<IntRing> prod33_at(const Perm6& p) {
  IntRing Z;
  std::array<Poly<IntRing>, 6> v = {
      Poly<IntRing>::var(Z, p[0]), Poly<IntRing>::var(Z, p[1]), Poly<IntRing>::var(Z, p[2]),
      Poly<IntRing>::var(Z, p[3]), Poly<IntRing>::var(Z, p[4]), Poly<IntRing>::var(Z, p[5])};
  return prod33(v);
}

// Walks the group generated by the sign-true transpositions and the
// product swap, composing congruence certificates for F against its
// variable relabelings. Because the swap carries the opposite sign to its
// parity, both signed states of every permutation are reachable; the
// states for the two three-cycles and the negative identity combine into
// a certificate for F itself.
inline VerbalCertificate build_rule_33_scheme() {
  IntRing Z;
  const std::array<Poly<IntRing>, 6> xs = fresh_vars<6>();
  const Poly<IntRing> F = prod33(xs);

  struct Gen {
    Perm6 perm;
    int sign;
    VerbalCertificate cert;
  };
  std::vector<Gen> gens;
  gens.push_back({{2, 1, 3, 4, 5, 6}, -1, VerbalCertificate{Poly<IntRing>(Z)}});
  gens.push_back({{1, 2, 3, 5, 4, 6}, -1, VerbalCertificate{Poly<IntRing>(Z)}});
  gens.push_back({{1, 2, 6, 4, 5, 3}, -1, rule_t36(xs)});
  gens.push_back({{1, 2, 4, 3, 5, 6}, -1, rule_t34(xs)});
  gens.push_back({{4, 5, 6, 1, 2, 3}, 1,
                  verbal_bracket_pair({xs[0], xs[1], xs[2]}, {xs[3], xs[4], xs[5]})});

  // Breadth-first search over (permutation, sign) states, keeping parent
  // pointers only; certificates are rebuilt along the short paths that are
  // actually needed.
  struct State {
    Perm6 perm;
    int sign;
  };
  auto key_of = [](const Perm6& p, int s) {
    std::string k(p.begin(), p.end());
    k.push_back(s > 0 ? '+' : '-');
    return k;
  };
  const Perm6 id{1, 2, 3, 4, 5, 6};
  std::map<std::string, std::pair<std::string, int>> parent;
  std::deque<State> queue;
  parent.emplace(key_of(id, 1), std::make_pair(std::string(), -1));
  queue.push_back({id, 1});
  while (!queue.empty()) {
    State st = queue.front();
    queue.pop_front();
    for (int g = 0; g < static_cast<int>(gens.size()); ++g) {
      Perm6 np = perm_compose(st.perm, gens[static_cast<std::size_t>(g)].perm);
      int ns = st.sign * gens[static_cast<std::size_t>(g)].sign;
      std::string k = key_of(np, ns);
      if (parent.count(k)) continue;
      parent.emplace(k, std::make_pair(key_of(st.perm, st.sign), g));
      queue.push_back({np, ns});
    }
  }

  auto congruence_cert = [&](const Perm6& sigma, int sign) {
    std::string k = key_of(sigma, sign);
    if (!parent.count(k))
      throw std::logic_error("signed permutation state out of reach");
    std::vector<int> path;
    for (std::string cur = k; !parent.at(cur).first.empty(); cur = parent.at(cur).first)
      path.push_back(parent.at(cur).second);
    std::reverse(path.begin(), path.end());
    Perm6 acc = id;
    int acc_sign = 1;
    VerbalCertificate cert{Poly<IntRing>(Z)};
    for (int g : path) {
      const Gen& gen = gens[static_cast<std::size_t>(g)];
      VerbalCertificate moved = verbal_substitute(gen.cert, perm_images(acc));
      cert = verbal_add(std::move(cert), verbal_scale(acc_sign, std::move(moved)));
      acc = perm_compose(acc, gen.perm);
      acc_sign *= gen.sign;
      Poly<IntRing> want = F - prod33_at(acc).scaled(acc_sign);
      cert.target = want;
      if (!verify_verbal(cert)) throw std::logic_error("congruence composition mismatch");
    }
    return cert;
  };

  VerbalCertificate c_ab = congruence_cert({2, 3, 1, 4, 5, 6}, 1);
  VerbalCertificate c_ba = congruence_cert({3, 1, 2, 4, 5, 6}, 1);
  VerbalCertificate c_neg = congruence_cert(id, -1);

  // The two three-cycle congruences sum to 3F through the Jacobi identity,
  // the negative identity state is 2F on its own, and the difference is F.
  VerbalCertificate scheme = verbal_add(std::move(c_ab), c_ba);
  scheme = verbal_add(std::move(scheme), verbal_scale(-1, c_neg));
  scheme.target = F;
  scheme = verbal_coalesce(scheme);
  if (!verify_verbal(scheme)) throw std::logic_error("product 33 scheme mismatch");
  return scheme;
}

inline const VerbalCertificate& rule_33_scheme() {
  static const VerbalCertificate scheme = build_rule_33_scheme();
  return scheme;
}

}  // namespace detail

// [p1,p2,p3][p4,p5,p6] for arbitrary polynomials.
inline VerbalCertificate verbal_rule_33(const Poly<IntRing>& p1, const Poly<IntRing>& p2,
                                        const Poly<IntRing>& p3, const Poly<IntRing>& p4,
                                        const Poly<IntRing>& p5, const Poly<IntRing>& p6) {
  std::map<Var, Poly<IntRing>> images{{1, p1}, {2, p2}, {3, p3}, {4, p4}, {5, p5}, {6, p6}};
  return verbal_substitute(detail::rule_33_scheme(), std::move(images));
}

namespace detail {

inline Poly<IntRing> q_of(const Poly<IntRing>& b1, const Poly<IntRing>& b2,
                          const Poly<IntRing>& b3, const Poly<IntRing>& b4) {
  return q_poly(b1, b2, b3, b4);
}

// [v1,v2,v3] * ([v4,v5][v6,v7] + [v4,v6][v5,v7]), by expanding
// [v1,v2,v3][v5*v6,v4,v7] into rule 33 instances.
inline VerbalCertificate build_rule_322(const std::array<Poly<IntRing>, 7>& v) {
  const Poly<IntRing>&a1 = v[0], &a2 = v[1], &a3 = v[2], &a4 = v[3], &a5 = v[4], &a6 = v[5],
                     &a7 = v[6];
  Poly<IntRing> target = triple(a1, a2, a3) * q_of(a4, a5, a6, a7);
  VerbalCertificate c = verbal_scale(-1, verbal_rule_33(a1, a2, a3, a5 * a6, a4, a7));
  c = verbal_add(std::move(c), verbal_mul_right(verbal_rule_33(a1, a2, a3, a6, a4, a7), a5));
  c = verbal_add(std::move(c), verbal_scale(-1, verbal_rule_33(a1, a2, a3, bracket(a6, a4), a7, a5)));
  c = verbal_add(std::move(c), verbal_rule_33(a1, a2, a3, bracket(a5, a7), a6, a4));
  c = verbal_add(std::move(c), verbal_scale(-1, verbal_rule_33(a1, a2, a3, bracket(a5, a7), a4, a6)));
  c = verbal_add(std::move(c), verbal_mul_right(verbal_rule_33(a1, a2, a3, a5, a4, a7), a6));
  c.target = target;
  if (!verify_verbal(c)) throw std::logic_error("product 322 certificate mismatch");
  return c;
}

inline const VerbalCertificate& rule_322_scheme() {
  static const VerbalCertificate scheme = verbal_coalesce(build_rule_322(fresh_vars<7>()));
  return scheme;
}

}  // namespace detail

inline VerbalCertificate verbal_rule_322(const std::array<Poly<IntRing>, 7>& v) {
  std::map<Var, Poly<IntRing>> images;
  for (int i = 0; i < 7; ++i) images.emplace(static_cast<Var>(i + 1), v[static_cast<std::size_t>(i)]);
  return verbal_substitute(detail::rule_322_scheme(), std::move(images));
}

namespace detail {

// Q(v1..v4) * Q(v5..v8), by expanding [v2*v3,v1,v4] * Q(v5..v8) into
// product 322 instances.
inline VerbalCertificate build_rule_2222(const std::array<Poly<IntRing>, 8>& v) {
  const Poly<IntRing>&a1 = v[0], &a2 = v[1], &a3 = v[2], &a4 = v[3];
  std::array<Poly<IntRing>, 4> d = {v[4], v[5], v[6], v[7]};
  auto f5 = [&](const Poly<IntRing>& u1, const Poly<IntRing>& u2, const Poly<IntRing>& u3) {
    return verbal_rule_322({u1, u2, u3, d[0], d[1], d[2], d[3]});
  };
  Poly<IntRing> target = q_of(a1, a2, a3, a4) * q_of(d[0], d[1], d[2], d[3]);
  VerbalCertificate c = verbal_scale(-1, f5(a2 * a3, a1, a4));
  c = verbal_add(std::move(c), verbal_mul_left(a2, f5(a3, a1, a4)));
  c = verbal_add(std::move(c), f5(bracket(a2, a4), a3, a1));
  c = verbal_add(std::move(c), verbal_scale(-1, f5(bracket(a2, a4), a1, a3)));
  c = verbal_add(std::move(c), verbal_mul_left(a3, f5(a2, a1, a4)));
  c = verbal_add(std::move(c), f5(bracket(a2, a1), a4, a3));
  c.target = target;
  if (!verify_verbal(c)) throw std::logic_error("product 2222 certificate mismatch");
  return c;
}

inline const VerbalCertificate& rule_2222_scheme() {
  static const VerbalCertificate scheme = verbal_coalesce(build_rule_2222(fresh_vars<8>()));
  return scheme;
}

// [Q(v1..v4),v5,v6]. Writing Q as the commutator expansion of [v2*v3,v1,v4]
// turns the bracket into four pieces, each certified through rule 33,
// rule 42, product swaps and direct generator values.
inline VerbalCertificate build_rule_2211(const std::array<Poly<IntRing>, 6>& v) {
  const Poly<IntRing>&a1 = v[0], &a2 = v[1], &a3 = v[2], &a4 = v[3], &a5 = v[4], &a6 = v[5];
  Poly<IntRing> target = bracket(bracket(q_of(a1, a2, a3, a4), a5), a6);
  Poly<IntRing> m = bracket(a2, a4);
  // [a2*[a3,a1,a4], a5, a6]
  VerbalCertificate c = verbal_mul_left(a2, verbal_left_normed({a3, a1, a4, a5, a6}));
  c = verbal_add(std::move(c), verbal_scale(-1, verbal_rule_42(a3, a1, a4, a5, a6, a2)));
  c = verbal_add(std::move(c), verbal_bracket_pair({a2, a6}, {a3, a1, a4, a5}));
  c = verbal_add(std::move(c), verbal_bracket_pair({a2, a5}, {a3, a1, a4, a6}));
  c = verbal_add(std::move(c), verbal_rule_33(a2, a5, a6, a3, a1, a4));
  // [[[a2,a4],[a3,a1]], a5, a6]
  c = verbal_add(std::move(c), verbal_left_normed({m, a3, a1, a5, a6}));
  c = verbal_add(std::move(c), verbal_scale(-1, verbal_left_normed({m, a1, a3, a5, a6})));
  // [[a2,a1,a4]*a3, a5, a6]
  c = verbal_add(std::move(c), verbal_rule_33(a2, a1, a4, a3, a5, a6));
  c = verbal_add(std::move(c), verbal_scale(-1, verbal_rule_42(a2, a1, a4, a5, a6, a3)));
  c = verbal_add(std::move(c), verbal_mul_right(verbal_left_normed({a2, a1, a4, a5, a6}), a3));
  // -[a2*a3, a1, a4, a5, a6]
  c = verbal_add(std::move(c), verbal_scale(-1, verbal_left_normed({a2 * a3, a1, a4, a5, a6})));
  c.target = target;
  if (!verify_verbal(c)) throw std::logic_error("commutator 2211 certificate mismatch");
  return c;
}

inline const VerbalCertificate& rule_2211_scheme() {
  static const VerbalCertificate scheme = verbal_coalesce(build_rule_2211(fresh_vars<6>()));
  return scheme;
}

// [Q(v1..v4),v5][v6,v7] + [Q(v1..v4),v6][v5,v7]. The same expansion of
// [v2*v3,v1,v4] is paired against the trailing two-slot brackets, so every
// piece lands on rule 42, rule 322, rule 33 or a bordered product swap.
inline VerbalCertificate build_rule_2212(const std::array<Poly<IntRing>, 7>& v) {
  const Poly<IntRing>&a1 = v[0], &a2 = v[1], &a3 = v[2], &a4 = v[3], &a5 = v[4], &a6 = v[5],
                     &a7 = v[6];
  Poly<IntRing> q1 = q_of(a1, a2, a3, a4);
  Poly<IntRing> target =
      bracket(q1, a5) * bracket(a6, a7) + bracket(q1, a6) * bracket(a5, a7);
  Poly<IntRing> m = bracket(a2, a4);
  // [a2*[a3,a1,a4], a5][a6,a7] + [a2*[a3,a1,a4], a6][a5,a7]
  VerbalCertificate c = verbal_mul_left(a2, verbal_rule_42(a3, a1, a4, a5, a6, a7));
  c = verbal_add(std::move(c), verbal_rule_322({a3, a1, a4, a2, a5, a6, a7}));
  c = verbal_add(std::move(c),
                 verbal_mul_right(verbal_bracket_pair({a2, a5}, {a3, a1, a4}), bracket(a6, a7)));
  c = verbal_add(std::move(c),
                 verbal_mul_right(verbal_bracket_pair({a2, a6}, {a3, a1, a4}), bracket(a5, a7)));
  // [[[a2,a4],[a3,a1]], a5][a6,a7] + [[[a2,a4],[a3,a1]], a6][a5,a7]
  c = verbal_add(std::move(c), verbal_rule_42(m, a3, a1, a5, a6, a7));
  c = verbal_add(std::move(c), verbal_scale(-1, verbal_rule_42(m, a1, a3, a5, a6, a7)));
  // [[a2,a1,a4]*a3, a5][a6,a7] + [[a2,a1,a4]*a3, a6][a5,a7]
  c = verbal_add(std::move(c), verbal_rule_322({a2, a1, a4, a3, a5, a6, a7}));
  c = verbal_add(std::move(c), verbal_mul_right(verbal_rule_42(a2, a1, a4, a5, a6, a7), a3));
  c = verbal_add(std::move(c), verbal_scale(-1, verbal_rule_33(bracket(a2, a1), a4, a5, a6, a7, a3)));
  c = verbal_add(std::move(c), verbal_scale(-1, verbal_rule_33(bracket(a2, a1), a4, a6, a5, a7, a3)));
  // -([a2*a3, a1, a4, a5][a6,a7] + [a2*a3, a1, a4, a6][a5,a7])
  c = verbal_add(std::move(c), verbal_scale(-1, verbal_rule_42(a2 * a3, a1, a4, a5, a6, a7)));
  c.target = target;
  if (!verify_verbal(c)) throw std::logic_error("product 2212 certificate mismatch");
  return c;
}

inline const VerbalCertificate& rule_2212_scheme() {
  static const VerbalCertificate scheme = verbal_coalesce(build_rule_2212(fresh_vars<7>()));
  return scheme;
}

}  // namespace detail

inline VerbalCertificate verbal_rule_2222(const std::array<Poly<IntRing>, 8>& v) {
  std::map<Var, Poly<IntRing>> images;
  for (int i = 0; i < 8; ++i) images.emplace(static_cast<Var>(i + 1), v[static_cast<std::size_t>(i)]);
  return verbal_substitute(detail::rule_2222_scheme(), std::move(images));
}

inline VerbalCertificate verbal_rule_2211(const std::array<Poly<IntRing>, 6>& v) {
  std::map<Var, Poly<IntRing>> images;
  for (int i = 0; i < 6; ++i) images.emplace(static_cast<Var>(i + 1), v[static_cast<std::size_t>(i)]);
  return verbal_substitute(detail::rule_2211_scheme(), std::move(images));
}

inline VerbalCertificate verbal_rule_2212(const std::array<Poly<IntRing>, 7>& v) {
  std::map<Var, Poly<IntRing>> images;
  for (int i = 0; i < 7; ++i) images.emplace(static_cast<Var>(i + 1), v[static_cast<std::size_t>(i)]);
  return verbal_substitute(detail::rule_2212_scheme(), std::move(images));
}

// Certificate for one defining family at arbitrary polynomial arguments.
inline VerbalCertificate verbal_family(Family f, const std::vector<Poly<IntRing>>& a) {
  if (static_cast<int>(a.size()) != family_arity(f))
    throw std::invalid_argument(std::string("wrong argument count for ") + family_name(f));
  switch (f) {
    case Family::F1:
      return verbal_left_normed(a);
    case Family::F2:
      return verbal_rule_33(a[0], a[1], a[2], a[3], a[4], a[5]);
    case Family::F3:
      return verbal_rule_33(bracket(a[0], a[1]), a[2], a[3], a[4], a[5], a[6]);
    case Family::F4:
      return verbal_rule_42(a[0], a[1], a[2], a[3], a[4], a[5]);
    case Family::F5:
      return verbal_rule_322({a[0], a[1], a[2], a[3], a[4], a[5], a[6]});
    case Family::F6:
      return verbal_rule_2211({a[0], a[1], a[2], a[3], a[4], a[5]});
    case Family::F7:
      return verbal_rule_2212({a[0], a[1], a[2], a[3], a[4], a[5], a[6]});
    case Family::F8:
      return verbal_rule_2222({a[0], a[1], a[2], a[3], a[4], a[5], a[6], a[7]});
    default:
      throw std::invalid_argument(std::string("no verbal certificate for ") + family_name(f));
  }
}

inline std::string verbal_to_json(const VerbalCertificate& c) {
  nlohmann::json j;
  j["target"] = format_poly(c.target);
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& t : c.terms) {
    nlohmann::json jt;
    jt["coeff"] = t.coeff.str();
    jt["left"] = format_poly(t.left);
    nlohmann::json slots = nlohmann::json::array();
    for (const auto& s : t.slots) slots.push_back(format_poly(s));
    jt["slots"] = std::move(slots);
    jt["right"] = format_poly(t.right);
    terms.push_back(std::move(jt));
  }
  j["terms"] = std::move(terms);
  return j.dump();
}

inline VerbalCertificate verbal_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  IntRing Z;
  VerbalCertificate c{parse_poly(Z, j.at("target").get<std::string>())};
  for (const auto& jt : j.at("terms")) {
    VerbalTerm t;
    t.coeff = BigInt(jt.at("coeff").get<std::string>());
    t.left = parse_poly(Z, jt.at("left").get<std::string>());
    const auto& slots = jt.at("slots");
    if (slots.size() != 5) throw std::invalid_argument("expected five slots per term");
    for (int i = 0; i < 5; ++i)
      t.slots[static_cast<std::size_t>(i)] = parse_poly(Z, slots[static_cast<std::size_t>(i)].get<std::string>());
    t.right = parse_poly(Z, jt.at("right").get<std::string>());
    c.terms.push_back(std::move(t));
  }
  return c;
}

}  // namespace lnt
