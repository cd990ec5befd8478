#pragma once

#include <array>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "certificate.hpp"
#include "forms.hpp"
#include "identities.hpp"

namespace lnt {

// Rewrites a form instance with monomial slots as an integer combination of
// bordered family instances at single variables. The recursion splits the
// last letter off a composite slot and expresses the overflow through forms
// of lower rank or lower total degree; the (degree, rank) measure decreases
// strictly in lexicographic order on every recursive call, which both
// terminates the recursion and is asserted at run time. A handful of steps
// transport an instance to a symmetric arrangement of the same form (swapping
// bracket halves or antisymmetric slot pairs); these keep the measure and are
// bounded by a small hop counter instead.
//
// Every produced certificate is checked on the spot: its composed target must
// equal the form value at the given arguments. Verification of the term list
// itself stays with verify_certificate, which the tests exercise.
class Reducer {
 public:
  Certificate reduce(FormId f, const std::vector<Word>& args) {
    const int k = form_arity(f);
    if (static_cast<int>(args.size()) != k)
      throw std::invalid_argument(std::string(form_name(f)) + " takes " + std::to_string(k) +
                                  " slots, got " + std::to_string(args.size()));
    for (const Word& w : args)
      if (w.is_one()) throw std::invalid_argument("form slots must be nonempty monomials");
    return reduce_guarded(f, args, 0);
  }

  std::size_t memo_size() const { return memo_.size(); }

 private:
  IntRing Z_;
  std::map<std::string, Certificate> memo_;
  std::vector<std::pair<std::size_t, int>> frames_;

  static std::string memo_key(FormId f, const std::vector<Word>& a) {
    std::string s = form_name(f);
    for (const Word& w : a) {
      s += '/';
      s += word_key(w);
    }
    return s;
  }

  static std::size_t args_degree(const std::vector<Word>& a) {
    std::size_t n = 0;
    for (const Word& w : a) n += w.degree();
    return n;
  }

  // True when slot i of form f has an expansion case of its own; the other
  // slots fall back on a relabeling that moves the work to such a slot.
  static bool case_is_direct(FormId f, int i) {
    switch (f) {
      case FormId::COMM5: return i >= 2;
      case FormId::P33: return i >= 5;
      case FormId::P43: return i != 1 && i != 6;
      case FormId::P42: return i != 1 && i != 4;
      case FormId::P322: return i != 2 && i != 6;
      case FormId::C2211: return true;
      case FormId::P2212: return i != 6;
      case FormId::P2222: return i == 1 || i >= 7;
    }
    return false;
  }

  // 1-based index of the slot to split, 0 if the instance is already
  // literal. Prefers the rightmost composite slot with its own expansion
  // case; the expansion identities hold for arbitrary words in the other
  // slots, so any such slot is a sound choice. Only when every composite
  // slot needs a relabeling do we take the rightmost composite overall,
  // which keeps every slot to its right literal and lets the relabeling
  // land on an expansion case after at most two transports.
  static int split_slot(FormId f, const std::vector<Word>& a) {
    int fallback = 0;
    for (int i = static_cast<int>(a.size()); i >= 1; --i) {
      if (a[static_cast<std::size_t>(i - 1)].degree() < 2) continue;
      if (case_is_direct(f, i)) return i;
      if (fallback == 0) fallback = i;
    }
    return fallback;
  }

  Poly<IntRing> mono(const Word& w) const { return Poly<IntRing>::monomial(Z_, w); }
  Poly<IntRing> lnp(std::vector<Word> ws) const { return left_normed_words(Z_, ws); }
  Poly<IntRing> qp(const Word& b1, const Word& b2, const Word& b3, const Word& b4) const {
    return q_poly(mono(b1), mono(b2), mono(b3), mono(b4));
  }

  Poly<IntRing> value_of(FormId f, const std::vector<Word>& a) const {
    std::vector<Poly<IntRing>> args;
    args.reserve(a.size());
    for (const Word& w : a) args.push_back(mono(w));
    return family_poly(form_family(f), args);
  }

  Certificate call(FormId f, std::vector<Word> a) { return reduce_guarded(f, std::move(a), 0); }

  Certificate lateral(FormId f, std::vector<Word> a, int hops) {
    if (hops >= 4) throw std::logic_error("same-form transport chain exceeded its bound");
    return reduce_guarded(f, std::move(a), hops + 1);
  }

  Certificate reduce_guarded(FormId f, std::vector<Word> a, int hops) {
    const std::size_t deg = args_degree(a);
    const int rank = form_rank(f);
    if (hops == 0 && !frames_.empty()) {
      const auto& [pd, pr] = frames_.back();
      if (!(deg < pd || (deg == pd && rank < pr)))
        throw std::logic_error(std::string("measure violation: ") + form_name(f) + " at degree " +
                               std::to_string(deg) + " called from degree " + std::to_string(pd) +
                               " rank " + std::to_string(pr));
    }
    const std::string key = memo_key(f, a);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    frames_.emplace_back(deg, rank);
    Certificate cert = dispatch(f, a, hops);
    frames_.pop_back();

    if (!(cert.target == value_of(f, a)))
      throw std::logic_error(std::string("composed target mismatch for ") + form_name(f) +
                             " at " + key);
    memo_.emplace(key, cert);
    return cert;
  }

  Certificate dispatch(FormId f, const std::vector<Word>& a, int hops) {
    const int i = split_slot(f, a);
    if (i == 0) {
      // Literal instance: the certificate is the instance itself.
      Certificate c(value_of(f, a));
      CertTerm t;
      t.coeff = 1;
      t.family = form_family(f);
      for (const Word& w : a) t.vars.push_back(w.letters[0]);
      c.terms.push_back(std::move(t));
      return c;
    }
    switch (f) {
      case FormId::COMM5: return comm5_case(a, i, hops);
      case FormId::P33: return p33_case(a, i, hops);
      case FormId::P43: return p43_case(a, i, hops);
      case FormId::P42: return p42_case(a, i, hops);
      case FormId::P322: return p322_case(a, i, hops);
      case FormId::C2211: return c2211_case(a, i, hops);
      case FormId::P2212: return p2212_case(a, i, hops);
      case FormId::P2222: return p2222_case(a, i, hops);
    }
    throw std::logic_error("unknown form");
  }

  static void split(const Word& slot, Word& w, Word& z) {
    std::vector<Var> head(slot.letters.begin(), slot.letters.end() - 1);
    w = Word(std::move(head));
    z = Word::var(slot.letters.back());
  }

  static std::vector<Word> swapped(std::vector<Word> a, int i, int j) {
    std::swap(a[static_cast<std::size_t>(i)], a[static_cast<std::size_t>(j)]);
    return a;
  }

  static void add(Certificate& acc, const Certificate& piece) { acc = cert_add(acc, piece); }
  static void sub(Certificate& acc, const Certificate& piece) {
    acc = cert_add(acc, cert_scale(BigInt(-1), piece));
  }
  Certificate borderL(const Word& w, Certificate c) const { return cert_border(std::move(c), w, Word{}); }
  Certificate borderR(Certificate c, const Word& w) const { return cert_border(std::move(c), Word{}, w); }

  // Left-normed bracket of five or more words as a certificate. Beyond five
  // slots the outer letters peel off through the commutator combinator, so
  // the single recursive call sits at strictly smaller degree.
  Certificate H1(std::vector<Word> ws) {
    if (ws.size() < 5) throw std::logic_error("left-normed certificate needs five or more slots");
    if (ws.size() == 5) return call(FormId::COMM5, std::move(ws));
    Word last = ws.back();
    ws.pop_back();
    return cert_comm_word(H1(std::move(ws)), last);
  }

  // [[A], [B]] flattened into signed left-normed instances: peeling the last
  // slot of B uses [M,[N,z]] = [[M,N],z] - [[M,z],N].
  void h2_flatten(std::vector<Word> A, std::vector<Word> B, const BigInt& sign,
                  std::vector<std::pair<BigInt, std::vector<Word>>>& out) {
    if (B.size() == 1) {
      A.push_back(B[0]);
      out.emplace_back(sign, std::move(A));
      return;
    }
    Word z = B.back();
    B.pop_back();
    {
      std::vector<std::pair<BigInt, std::vector<Word>>> inner;
      h2_flatten(A, B, sign, inner);
      for (auto& [s, args] : inner) {
        args.push_back(z);
        out.emplace_back(std::move(s), std::move(args));
      }
    }
    std::vector<Word> Az = A;
    Az.push_back(z);
    h2_flatten(std::move(Az), std::move(B), -sign, out);
  }

  Certificate H2(const std::vector<Word>& A, const std::vector<Word>& B) {
    std::vector<std::pair<BigInt, std::vector<Word>>> parts;
    h2_flatten(A, B, BigInt(1), parts);
    Certificate acc{Poly<IntRing>(Z_)};
    for (auto& [s, args] : parts) add(acc, cert_scale(s, H1(std::move(args))));
    return acc;
  }

  // [b1,b2,b3,b4] * Q(c1,c2,c3,c4): commuting the product generator past the
  // outer slot leaves three-by-three products and weight-five commutators.
  Certificate vhelper(const std::array<Word, 4>& b, const std::array<Word, 4>& c) {
    const auto& [b1, b2, b3, b4] = b;
    const auto& [c1, c2, c3, c4] = c;
    std::vector<Word> B3{b1, b2, b3};
    Certificate acc = borderR(call(FormId::P322, {b1, b2, b3, c1, c2, c3, c4}), b4);
    sub(acc, borderL(b4, call(FormId::P322, {b1, b2, b3, c1, c2, c3, c4})));
    sub(acc, cert_mul_left(lnp({c1, c2}), call(FormId::P33, {b1, b2, b3, c3, c4, b4})));
    sub(acc, cert_mul_right(H2(B3, {c1, c2}), lnp({c3, c4, b4})));
    sub(acc, cert_mul_right(call(FormId::P33, {b1, b2, b3, c1, c2, b4}), lnp({c3, c4})));
    sub(acc, cert_mul_left(lnp({c1, c3}), call(FormId::P33, {b1, b2, b3, c2, c4, b4})));
    sub(acc, cert_mul_right(H2(B3, {c1, c3}), lnp({c2, c4, b4})));
    sub(acc, cert_mul_right(call(FormId::P33, {b1, b2, b3, c1, c3, b4}), lnp({c2, c4})));
    return acc;
  }

  // Q(c) * [g1,g2,g3].
  Certificate qg(const std::array<Word, 4>& c, const std::array<Word, 3>& G) {
    const auto& [c1, c2, c3, c4] = c;
    const auto& [g1, g2, g3] = G;
    std::vector<Word> Gv{g1, g2, g3};
    Certificate acc = call(FormId::P322, {g1, g2, g3, c1, c2, c3, c4});
    add(acc, cert_mul_right(H2({c1, c2}, Gv), lnp({c3, c4})));
    add(acc, cert_mul_left(lnp({c1, c2}), H2({c3, c4}, Gv)));
    add(acc, cert_mul_right(H2({c1, c3}, Gv), lnp({c2, c4})));
    add(acc, cert_mul_left(lnp({c1, c3}), H2({c2, c4}, Gv)));
    return acc;
  }

  // [Q(c), [y1,y2,y3]] through the bracket expansion of Q's two products.
  Certificate q_comm_bracket3(const std::array<Word, 4>& c, const std::array<Word, 3>& G) {
    const auto& [g1, g2, g3] = G;
    auto c2211 = [&](const Word& u, const Word& v) {
      return call(FormId::C2211, {c[0], c[1], c[2], c[3], u, v});
    };
    Certificate inner = c2211(g1, g2);
    sub(inner, c2211(g2, g1));
    Certificate acc = cert_comm_word(inner, g3);
    sub(acc, cert_comm_word(c2211(g3, g1), g2));
    add(acc, cert_comm_word(c2211(g3, g2), g1));
    return acc;
  }

  // Q(c) * [y1,y2,y3,y4].
  Certificate qy4(const std::array<Word, 4>& c, const std::array<Word, 4>& Y) {
    const auto& [c1, c2, c3, c4] = c;
    std::vector<Word> Yv{Y[0], Y[1], Y[2], Y[3]};
    auto wrap = [&](const Word& u, const Word& v) {
      std::vector<Word> uv = Yv;
      uv.push_back(u);
      uv.push_back(v);
      std::vector<Word> vu = Yv;
      vu.push_back(v);
      vu.push_back(u);
      return cert_add(H1(uv), cert_scale(BigInt(-1), H1(vu)));
    };
    Certificate acc = vhelper(Y, c);
    sub(acc, cert_mul_left(lnp({c1, c2}), wrap(c3, c4)));
    sub(acc, cert_mul_right(wrap(c1, c2), lnp({c3, c4})));
    sub(acc, cert_mul_left(lnp({c1, c3}), wrap(c2, c4)));
    sub(acc, cert_mul_right(wrap(c1, c3), lnp({c2, c4})));
    return acc;
  }

  // [Q(c), x] * [g1,g2,g3].
  Certificate qxg(const std::array<Word, 4>& c, const Word& x, const std::array<Word, 3>& G) {
    Certificate acc = borderR(qg(c, G), x);
    sub(acc, qy4(c, {G[0], G[1], G[2], x}));
    sub(acc, borderL(x, qg(c, G)));
    return acc;
  }

  // Q(c) * [y,z] * [g1,g2,g3].
  Certificate q12g(const std::array<Word, 4>& c, const Word& y, const Word& z,
                   const std::array<Word, 3>& G) {
    Certificate acc = cert_mul_right(call(FormId::P322, {G[0], G[1], G[2], c[0], c[1], c[2], c[3]}),
                                     lnp({y, z}));
    add(acc, cert_mul_right(q_comm_bracket3(c, G), lnp({y, z})));
    add(acc, cert_mul_left(qp(c[0], c[1], c[2], c[3]), H2({y, z}, {G[0], G[1], G[2]})));
    return acc;
  }

  // Q(c) * [g1,g2,g3] * [y,z].
  Certificate q1g2(const std::array<Word, 4>& c, const std::array<Word, 3>& G, const Word& y,
                   const Word& z) {
    Certificate acc = cert_mul_right(call(FormId::P322, {G[0], G[1], G[2], c[0], c[1], c[2], c[3]}),
                                     lnp({y, z}));
    add(acc, cert_mul_right(q_comm_bracket3(c, G), lnp({y, z})));
    return acc;
  }

  // [g1,g2,g3] * [Q(c), z].
  Certificate g_qcomm(const std::array<Word, 3>& G, const std::array<Word, 4>& c, const Word& z) {
    const auto& [g1, g2, g3] = G;
    std::vector<Word> Gv{g1, g2, g3};
    auto piece = [&](const Word& ci, const Word& cj, const Word& ck, const Word& cl) {
      Certificate acc = cert_mul_left(lnp({ci, cj}), call(FormId::P33, {g1, g2, g3, ck, cl, z}));
      add(acc, cert_mul_right(H2(Gv, {ci, cj}), lnp({ck, cl, z})));
      add(acc, cert_mul_right(call(FormId::P33, {g1, g2, g3, ci, cj, z}), lnp({ck, cl})));
      return acc;
    };
    return cert_add(piece(c[0], c[1], c[2], c[3]), piece(c[0], c[2], c[1], c[3]));
  }

  // [Q(c), Q(d)] via the product rule on Q(d)'s two summands.
  Certificate qq_comm(const std::array<Word, 4>& c, const std::array<Word, 4>& d) {
    auto c2211 = [&](const Word& u, const Word& v) {
      return call(FormId::C2211, {c[0], c[1], c[2], c[3], u, v});
    };
    auto wrap = [&](const Word& u, const Word& v) {
      return cert_add(c2211(u, v), cert_scale(BigInt(-1), c2211(v, u)));
    };
    Certificate acc = cert_mul_left(lnp({d[0], d[1]}), wrap(d[2], d[3]));
    add(acc, cert_mul_right(wrap(d[0], d[1]), lnp({d[2], d[3]})));
    add(acc, cert_mul_left(lnp({d[0], d[2]}), wrap(d[1], d[3])));
    add(acc, cert_mul_right(wrap(d[0], d[2]), lnp({d[1], d[3]})));
    return acc;
  }

  // Splitting data for a composite slot of Q(c): Q with the slot replaced by
  // the prefix or the last letter, plus the signed cross products that the
  // rewriting leaves behind. Crosses are listed as ordered products u1 * u2
  // of a 2-bracket and a 3-bracket (in either order).
  struct Cross {
    BigInt sign;
    std::vector<Word> u1, u2;
  };

  std::vector<Cross> q_crosses(const std::array<Word, 4>& c, int slot, const Word& w,
                               const Word& z) const {
    const auto& [c1, c2, c3, c4] = c;
    switch (slot) {
      case 1:
        return {{BigInt(1), {w, c2}, {z, c3, c4}},
                {BigInt(-1), {w, c2}, {z, c4, c3}},
                {BigInt(1), {w, c3}, {z, c2, c4}},
                {BigInt(-1), {w, c3}, {z, c4, c2}}};
      case 2:
        return {{BigInt(1), {c1, w}, {z, c3, c4}},
                {BigInt(-1), {c1, w}, {z, c4, c3}},
                {BigInt(1), {c1, c3, w}, {z, c4}}};
      case 3:
        return {{BigInt(1), {c1, w}, {z, c2, c4}},
                {BigInt(-1), {c1, w}, {z, c4, c2}},
                {BigInt(1), {c1, c2, w}, {z, c4}}};
      case 4:
        return {{BigInt(1), {c1, c2, w}, {c3, z}}, {BigInt(1), {c1, c3, w}, {c2, z}}};
    }
    throw std::logic_error("bad Q slot");
  }

  // [w * Q(cx), x5, x6]: shared by the product-commutator cases.
  Certificate wrapA(const std::array<Word, 4>& cx, const Word& w, const Word& x5, const Word& x6) {
    std::vector<Word> cxv{cx[0], cx[1], cx[2], cx[3]};
    auto c2211 = [&](const Word& u, const Word& v) {
      std::vector<Word> args = cxv;
      args.push_back(u);
      args.push_back(v);
      return call(FormId::C2211, std::move(args));
    };
    Certificate acc = borderL(w, c2211(x5, x6));
    sub(acc, call(FormId::P2212, {cx[0], cx[1], cx[2], cx[3], x5, x6, w}));
    add(acc, call(FormId::P322, {w, x5, x6, cx[0], cx[1], cx[2], cx[3]}));
    add(acc, cert_comm_word(c2211(x5, x6), w));
    sub(acc, cert_comm_word(c2211(x5, w), x6));
    add(acc, cert_comm_word(c2211(x6, x5), w));
    sub(acc, cert_comm_word(c2211(x6, w), x5));
    return acc;
  }

  // [Q(cy) * z, x5, x6].
  Certificate wrapB(const std::array<Word, 4>& cy, const Word& z, const Word& x5, const Word& x6) {
    Certificate acc = qg(cy, {z, x5, x6});
    sub(acc, call(FormId::P2212, {cy[0], cy[1], cy[2], cy[3], x5, x6, z}));
    add(acc, borderR(call(FormId::C2211, {cy[0], cy[1], cy[2], cy[3], x5, x6}), z));
    return acc;
  }

  // [u1 * u2, x5, x6] for a cross product.
  Certificate wrap_cross1(const Cross& cr, const Word& x5, const Word& x6) {
    const auto& u1 = cr.u1;
    const auto& u2 = cr.u2;
    Certificate acc{Poly<IntRing>(Z_)};
    if (u1.size() == 2) {
      std::vector<Word> r5 = u2;
      r5.push_back(x5);
      r5.push_back(x6);
      add(acc, cert_mul_left(lnp(u1), call(FormId::COMM5, std::move(r5))));
      add(acc, call(FormId::P43, {u2[0], u2[1], u2[2], x5, u1[0], u1[1], x6}));
      add(acc, H2({u1[0], u1[1], x6}, {u2[0], u2[1], u2[2], x5}));
      add(acc, call(FormId::P43, {u2[0], u2[1], u2[2], x6, u1[0], u1[1], x5}));
      add(acc, H2({u1[0], u1[1], x5}, {u2[0], u2[1], u2[2], x6}));
      add(acc, call(FormId::P43, {u1[0], u1[1], x5, x6, u2[0], u2[1], u2[2]}));
    } else {
      add(acc, call(FormId::P43, {u2[0], u2[1], x5, x6, u1[0], u1[1], u1[2]}));
      add(acc, H2(u1, {u2[0], u2[1], x5, x6}));
      add(acc, call(FormId::P43, {u1[0], u1[1], u1[2], x6, u2[0], u2[1], x5}));
      add(acc, call(FormId::P43, {u1[0], u1[1], u1[2], x5, u2[0], u2[1], x6}));
      std::vector<Word> r5 = u1;
      r5.push_back(x5);
      r5.push_back(x6);
      add(acc, cert_mul_right(call(FormId::COMM5, std::move(r5)), lnp(u2)));
    }
    return cert_scale(cr.sign, std::move(acc));
  }

  // [w * Q(cx), x5][x6, x7] + [w * Q(cx), x6][x5, x7].
  Certificate wrapA2(const std::array<Word, 4>& cx, const Word& w, const Word& x5, const Word& x6,
                     const Word& x7) {
    auto c2211 = [&](const Word& u, const Word& v) {
      return call(FormId::C2211, {cx[0], cx[1], cx[2], cx[3], u, v});
    };
    Certificate acc = borderL(w, call(FormId::P2212, {cx[0], cx[1], cx[2], cx[3], x5, x6, x7}));
    add(acc, call(FormId::P2222, {cx[0], cx[1], cx[2], cx[3], w, x5, x6, x7}));
    Certificate d5 = c2211(w, x5);
    sub(d5, c2211(x5, w));
    sub(acc, cert_mul_right(std::move(d5), lnp({x6, x7})));
    Certificate d6 = c2211(w, x6);
    sub(d6, c2211(x6, w));
    sub(acc, cert_mul_right(std::move(d6), lnp({x5, x7})));
    return acc;
  }

  // [Q(cy) * z, x5][x6, x7] + [Q(cy) * z, x6][x5, x7].
  Certificate wrapB2(const std::array<Word, 4>& cy, const Word& z, const Word& x5, const Word& x6,
                     const Word& x7) {
    Certificate acc = call(FormId::P2222, {cy[0], cy[1], cy[2], cy[3], z, x5, x6, x7});
    add(acc, borderR(call(FormId::P2212, {cy[0], cy[1], cy[2], cy[3], x5, x6, x7}), z));
    add(acc, qxg(cy, x5, {z, x6, x7}));
    sub(acc, qxg(cy, x5, {z, x7, x6}));
    add(acc, qxg(cy, x6, {z, x5, x7}));
    sub(acc, qxg(cy, x6, {z, x7, x5}));
    return acc;
  }

  // [u1 * u2, x5][x6, x7] + [u1 * u2, x6][x5, x7] for a cross product.
  Certificate wrap_cross2(const Cross& cr, const Word& x5, const Word& x6, const Word& x7) {
    const auto& u1 = cr.u1;
    const auto& u2 = cr.u2;
    Certificate acc{Poly<IntRing>(Z_)};
    if (u1.size() == 2) {
      add(acc, cert_mul_left(lnp(u1), call(FormId::P42, {u2[0], u2[1], u2[2], x5, x6, x7})));
      add(acc, cert_mul_right(call(FormId::P33, {u1[0], u1[1], x5, u2[0], u2[1], u2[2]}),
                              lnp({x6, x7})));
      add(acc, cert_mul_right(call(FormId::P33, {u1[0], u1[1], x6, u2[0], u2[1], u2[2]}),
                              lnp({x5, x7})));
    } else {
      add(acc, cert_mul_right(call(FormId::P33, {u1[0], u1[1], u1[2], u2[0], u2[1], x5}),
                              lnp({x6, x7})));
      add(acc, cert_mul_right(call(FormId::P33, {u1[0], u1[1], u1[2], u2[0], u2[1], x6}),
                              lnp({x5, x7})));
      add(acc, cert_mul_left(lnp(u2), call(FormId::P42, {u1[0], u1[1], u1[2], x5, x6, x7})));
      std::vector<Word> u1x5 = u1;
      u1x5.push_back(x5);
      add(acc, cert_mul_right(H2(u1x5, u2), lnp({x6, x7})));
      std::vector<Word> u1x6 = u1;
      u1x6.push_back(x6);
      add(acc, cert_mul_right(H2(u1x6, u2), lnp({x5, x7})));
    }
    return cert_scale(cr.sign, std::move(acc));
  }

  Certificate comm5_case(const std::vector<Word>& a, int i, int hops) {
    const Word &a1 = a[0], &a2 = a[1], &a3 = a[2], &a4 = a[3], &a5 = a[4];
    Word w, z;
    split(a[static_cast<std::size_t>(i - 1)], w, z);
    switch (i) {
      case 5: {
        Certificate acc = borderL(w, call(FormId::COMM5, {a1, a2, a3, a4, z}));
        add(acc, borderR(call(FormId::COMM5, {a1, a2, a3, a4, w}), z));
        return acc;
      }
      case 4: {
        Certificate acc = borderL(w, call(FormId::COMM5, {a1, a2, a3, z, a5}));
        add(acc, call(FormId::P42, {a1, a2, a3, z, w, a5}));
        add(acc, borderR(call(FormId::COMM5, {a1, a2, a3, w, a5}), z));
        add(acc, H2({w, a5}, {a1, a2, a3, z}));
        return acc;
      }
      case 3: {
        Certificate acc = borderL(w, call(FormId::COMM5, {a1, a2, z, a4, a5}));
        sub(acc, call(FormId::P42, {a1, a2, z, a4, a5, w}));
        add(acc, H2({w, a5}, {a1, a2, z, a4}));
        add(acc, H2({w, a4}, {a1, a2, z, a5}));
        add(acc, call(FormId::P33, {w, a4, a5, a1, a2, z}));
        add(acc, call(FormId::P33, {a1, a2, w, z, a4, a5}));
        sub(acc, call(FormId::P42, {a1, a2, w, a5, a4, z}));
        add(acc, borderR(call(FormId::COMM5, {a1, a2, w, a4, a5}), z));
        return acc;
      }
      case 2: {
        Certificate acc = borderL(w, call(FormId::COMM5, {a1, z, a3, a4, a5}));
        sub(acc, call(FormId::P42, {a1, z, a3, a4, a5, w}));
        add(acc, H2({w, a5}, {a1, z, a3, a4}));
        add(acc, H2({w, a4}, {a1, z, a3, a5}));
        add(acc, call(FormId::P33, {w, a4, a5, a1, z, a3}));
        add(acc, call(FormId::P33, {a1, w, a3, z, a4, a5}));
        sub(acc, call(FormId::P42, {a1, w, a3, a5, a4, z}));
        add(acc, borderR(call(FormId::COMM5, {a1, w, a3, a4, a5}), z));
        add(acc, call(FormId::C2211, {w, a3, a1, z, a4, a5}));
        return acc;
      }
      case 1:
        return cert_scale(BigInt(-1), lateral(FormId::COMM5, swapped(a, 0, 1), hops));
    }
    throw std::logic_error("bad slot");
  }

  Certificate p33_case(const std::vector<Word>& a, int i, int hops) {
    const Word &a1 = a[0], &a2 = a[1], &a3 = a[2], &a4 = a[3], &a5 = a[4], &a6 = a[5];
    Word w, z;
    split(a[static_cast<std::size_t>(i - 1)], w, z);
    switch (i) {
      case 6: {
        Certificate acc = borderL(w, call(FormId::P33, {a1, a2, a3, a4, a5, z}));
        add(acc, call(FormId::P43, {a1, a2, a3, w, a4, a5, z}));
        add(acc, borderR(call(FormId::P33, {a1, a2, a3, a4, a5, w}), z));
        return acc;
      }
      case 5: {
        Certificate acc = borderL(w, call(FormId::P33, {a1, a2, a3, a4, z, a6}));
        add(acc, call(FormId::P43, {a1, a2, a3, w, a4, z, a6}));
        add(acc, call(FormId::P322, {a1, a2, a3, w, a6, a4, z}));
        add(acc, borderR(call(FormId::P33, {a1, a2, a3, a4, w, a6}), z));
        return acc;
      }
      case 4:
        return cert_scale(BigInt(-1), lateral(FormId::P33, swapped(a, 3, 4), hops));
      default: {
        // Composite in the first factor: swap the factors and absorb the
        // commutator between them.
        Certificate acc = lateral(FormId::P33, {a4, a5, a6, a1, a2, a3}, hops);
        add(acc, H2({a1, a2, a3}, {a4, a5, a6}));
        return acc;
      }
    }
  }

  Certificate p43_case(const std::vector<Word>& a, int i, int hops) {
    const Word &a1 = a[0], &a2 = a[1], &a3 = a[2], &a4 = a[3], &r1 = a[4], &r2 = a[5], &r3 = a[6];
    Word w, z;
    split(a[static_cast<std::size_t>(i - 1)], w, z);
    switch (i) {
      case 7: {
        Certificate acc = borderL(w, call(FormId::P43, {a1, a2, a3, a4, r1, r2, z}));
        add(acc, cert_mul_right(call(FormId::COMM5, {a1, a2, a3, a4, w}), lnp({r1, r2, z})));
        add(acc, borderR(call(FormId::P43, {a1, a2, a3, a4, r1, r2, w}), z));
        return acc;
      }
      case 6:
        return cert_scale(BigInt(-1), lateral(FormId::P43, swapped(a, 4, 5), hops));
      case 5: {
        Certificate acc = borderL(w, call(FormId::P43, {a1, a2, a3, a4, z, r2, r3}));
        add(acc, cert_mul_right(call(FormId::COMM5, {a1, a2, a3, a4, w}), lnp({z, r2, r3})));
        add(acc, borderR(call(FormId::P43, {a1, a2, a3, a4, w, r2, r3}), z));
        sub(acc, vhelper({a1, a2, a3, a4}, {w, r3, r2, z}));
        return acc;
      }
      case 4: {
        Certificate acc = borderL(w, call(FormId::P43, {a1, a2, a3, z, r1, r2, r3}));
        add(acc, borderL(z, call(FormId::P43, {a1, a2, a3, w, r1, r2, r3})));
        add(acc, cert_mul_right(call(FormId::COMM5, {a1, a2, a3, w, z}), lnp({r1, r2, r3})));
        return acc;
      }
      case 3: {
        Certificate acc = borderL(w, call(FormId::P43, {a1, a2, z, a4, r1, r2, r3}));
        add(acc, cert_mul_left(lnp({w, a4}), call(FormId::P33, {a1, a2, z, r1, r2, r3})));
        add(acc, cert_mul_right(call(FormId::P33, {a1, a2, w, r1, r2, r3}), lnp({z, a4})));
        add(acc, cert_mul_left(lnp({a1, a2, w}), H2({z, a4}, {r1, r2, r3})));
        add(acc, borderL(z, call(FormId::P43, {a1, a2, w, a4, r1, r2, r3})));
        add(acc, cert_mul_right(call(FormId::COMM5, {a1, a2, w, a4, z}), lnp({r1, r2, r3})));
        return acc;
      }
      case 2: {
        Certificate acc = borderL(w, call(FormId::P43, {a1, z, a3, a4, r1, r2, r3}));
        add(acc, cert_mul_left(lnp({w, a4}), call(FormId::P33, {a1, z, a3, r1, r2, r3})));
        add(acc, cert_mul_left(lnp({w, a3}), call(FormId::P33, {a1, z, a4, r1, r2, r3})));
        add(acc, cert_mul_right(call(FormId::P33, {w, a3, a4, r1, r2, r3}), lnp({a1, z})));
        add(acc, cert_mul_left(lnp({w, a3, a4}), H2({a1, z}, {r1, r2, r3})));
        add(acc, cert_mul_left(lnp({a1, w}), call(FormId::P33, {z, a3, a4, r1, r2, r3})));
        add(acc, cert_mul_right(call(FormId::P33, {a1, w, a4, r1, r2, r3}), lnp({z, a3})));
        add(acc, cert_mul_left(lnp({a1, w, a4}), H2({z, a3}, {r1, r2, r3})));
        add(acc, cert_mul_right(call(FormId::P33, {a1, w, a3, r1, r2, r3}), lnp({z, a4})));
        add(acc, cert_mul_left(lnp({a1, w, a3}), H2({z, a4}, {r1, r2, r3})));
        add(acc, borderL(z, call(FormId::P43, {a1, w, a3, a4, r1, r2, r3})));
        add(acc, cert_mul_right(call(FormId::COMM5, {a1, w, a3, a4, z}), lnp({r1, r2, r3})));
        return acc;
      }
      case 1:
        return cert_scale(BigInt(-1), lateral(FormId::P43, swapped(a, 0, 1), hops));
    }
    throw std::logic_error("bad slot");
  }

  Certificate p42_case(const std::vector<Word>& a, int i, int hops) {
    const Word &a1 = a[0], &a2 = a[1], &a3 = a[2], &a4 = a[3], &a5 = a[4], &a6 = a[5];
    Word w, z;
    split(a[static_cast<std::size_t>(i - 1)], w, z);
    switch (i) {
      case 6: {
        Certificate acc = borderL(w, call(FormId::P42, {a1, a2, a3, a4, a5, z}));
        add(acc, borderR(call(FormId::P42, {a1, a2, a3, a4, a5, w}), z));
        add(acc, cert_mul_right(call(FormId::COMM5, {a1, a2, a3, a4, w}), lnp({a5, z})));
        add(acc, cert_mul_right(call(FormId::COMM5, {a1, a2, a3, a5, w}), lnp({a4, z})));
        return acc;
      }
      case 5: {
        Certificate acc = borderL(w, call(FormId::P42, {a1, a2, a3, a4, z, a6}));
        add(acc, borderR(call(FormId::P42, {a1, a2, a3, a4, w, a6}), z));
        add(acc, cert_mul_right(call(FormId::COMM5, {a1, a2, a3, a4, w}), lnp({z, a6})));
        sub(acc, call(FormId::P43, {a1, a2, a3, w, a4, a6, z}));
        return acc;
      }
      case 4:
        return lateral(FormId::P42, swapped(a, 3, 4), hops);
      case 3: {
        Certificate acc = borderL(w, call(FormId::P42, {a1, a2, z, a4, a5, a6}));
        add(acc, call(FormId::P322, {a1, a2, z, w, a4, a5, a6}));
        add(acc, call(FormId::P322, {a1, a2, w, z, a4, a5, a6}));
        add(acc, borderL(z, call(FormId::P42, {a1, a2, w, a4, a5, a6})));
        add(acc, cert_mul_right(H2({w, a4}, {a1, a2, z}), lnp({a5, a6})));
        add(acc, cert_mul_right(H2({w, a5}, {a1, a2, z}), lnp({a4, a6})));
        add(acc, cert_mul_right(call(FormId::COMM5, {a1, a2, w, a4, z}), lnp({a5, a6})));
        add(acc, cert_mul_right(call(FormId::COMM5, {a1, a2, w, a5, z}), lnp({a4, a6})));
        return acc;
      }
      case 2: {
        Certificate acc = borderL(w, call(FormId::P42, {a1, z, a3, a4, a5, a6}));
        add(acc, borderL(z, call(FormId::P42, {a1, w, a3, a4, a5, a6})));
        add(acc, cert_mul_right(call(FormId::COMM5, {a1, w, a3, a4, z}), lnp({a5, a6})));
        add(acc, cert_mul_right(call(FormId::COMM5, {a1, w, a3, a5, z}), lnp({a4, a6})));
        add(acc, call(FormId::P322, {a1, z, a3, w, a4, a5, a6}));
        add(acc, cert_mul_right(H2({w, a4}, {a1, z, a3}), lnp({a5, a6})));
        add(acc, cert_mul_right(H2({w, a5}, {a1, z, a3}), lnp({a4, a6})));
        add(acc, call(FormId::P322, {a1, w, a3, z, a4, a5, a6}));
        add(acc, call(FormId::P2212, {w, a3, a1, z, a4, a5, a6}));
        return acc;
      }
      case 1:
        return cert_scale(BigInt(-1), lateral(FormId::P42, swapped(a, 0, 1), hops));
    }
    throw std::logic_error("bad slot");
  }

  Certificate p322_case(const std::vector<Word>& a, int i, int hops) {
    const Word &a1 = a[0], &a2 = a[1], &a3 = a[2];
    const std::array<Word, 4> c{a[3], a[4], a[5], a[6]};
    Word w, z;
    split(a[static_cast<std::size_t>(i - 1)], w, z);
    switch (i) {
      case 1: {
        Certificate acc = borderL(w, call(FormId::P322, {z, a2, a3, c[0], c[1], c[2], c[3]}));
        sub(acc, call(FormId::P2222, {w, a3, a2, z, c[0], c[1], c[2], c[3]}));
        add(acc, borderR(call(FormId::P322, {w, a2, a3, c[0], c[1], c[2], c[3]}), z));
        sub(acc, g_qcomm({w, a2, a3}, c, z));
        return acc;
      }
      case 2:
        return cert_scale(BigInt(-1), lateral(FormId::P322, swapped(a, 0, 1), hops));
      case 3: {
        Certificate acc = borderL(w, call(FormId::P322, {a1, a2, z, c[0], c[1], c[2], c[3]}));
        add(acc, borderR(call(FormId::P322, {a1, a2, w, c[0], c[1], c[2], c[3]}), z));
        sub(acc, g_qcomm({a1, a2, w}, c, z));
        return acc;
      }
      case 4: {
        Certificate acc = borderL(w, call(FormId::P322, {a1, a2, a3, z, c[1], c[2], c[3]}));
        add(acc, vhelper({a1, a2, a3, w}, {z, c[1], c[2], c[3]}));
        add(acc, borderR(call(FormId::P322, {a1, a2, a3, w, c[1], c[2], c[3]}), z));
        for (const Cross& cr : q_crosses(c, 1, w, z)) {
          Certificate piece = cert_mul_left(lnp(cr.u1), call(FormId::P33, {a1, a2, a3, cr.u2[0], cr.u2[1], cr.u2[2]}));
          add(piece, cert_mul_right(H2({a1, a2, a3}, cr.u1), lnp(cr.u2)));
          add(acc, cert_scale(cr.sign, std::move(piece)));
        }
        return acc;
      }
      case 5: {
        Certificate acc = borderL(w, call(FormId::P322, {a1, a2, a3, c[0], z, c[2], c[3]}));
        add(acc, vhelper({a1, a2, a3, w}, {c[0], z, c[2], c[3]}));
        add(acc, borderR(call(FormId::P322, {a1, a2, a3, c[0], w, c[2], c[3]}), z));
        Certificate d = call(FormId::P33, {a1, a2, a3, z, c[2], c[3]});
        sub(d, call(FormId::P33, {a1, a2, a3, z, c[3], c[2]}));
        add(acc, cert_mul_left(lnp({c[0], w}), std::move(d)));
        add(acc, cert_mul_right(H2({a1, a2, a3}, {c[0], w}),
                                lnp({z, c[2], c[3]}) - lnp({z, c[3], c[2]})));
        add(acc, cert_mul_right(call(FormId::P33, {a1, a2, a3, c[0], c[2], w}), lnp({z, c[3]})));
        return acc;
      }
      case 6:
        return lateral(FormId::P322, swapped(a, 4, 5), hops);
      case 7: {
        Certificate acc = borderR(call(FormId::P322, {a1, a2, a3, c[0], c[1], c[2], z}), w);
        add(acc, borderR(call(FormId::P322, {a1, a2, a3, c[0], c[1], c[2], w}), z));
        sub(acc, cert_mul_left(lnp({c[0], c[1]}), call(FormId::P33, {a1, a2, a3, c[2], z, w})));
        sub(acc, cert_mul_right(H2({a1, a2, a3}, {c[0], c[1]}), lnp({c[2], z, w})));
        sub(acc, cert_mul_left(lnp({c[0], c[2]}), call(FormId::P33, {a1, a2, a3, c[1], z, w})));
        sub(acc, cert_mul_right(H2({a1, a2, a3}, {c[0], c[2]}), lnp({c[1], z, w})));
        return acc;
      }
    }
    throw std::logic_error("bad slot");
  }

  Certificate c2211_case(const std::vector<Word>& a, int i, int hops) {
    (void)hops;
    const std::array<Word, 4> c{a[0], a[1], a[2], a[3]};
    const Word &a5 = a[4], &a6 = a[5];
    Word w, z;
    split(a[static_cast<std::size_t>(i - 1)], w, z);
    switch (i) {
      case 6: {
        Certificate acc = borderL(w, call(FormId::C2211, {c[0], c[1], c[2], c[3], a5, z}));
        add(acc, borderR(call(FormId::C2211, {c[0], c[1], c[2], c[3], a5, w}), z));
        return acc;
      }
      case 5: {
        Certificate acc = borderL(w, call(FormId::C2211, {c[0], c[1], c[2], c[3], z, a6}));
        add(acc, borderR(call(FormId::C2211, {c[0], c[1], c[2], c[3], w, a6}), z));
        add(acc, call(FormId::P2212, {c[0], c[1], c[2], c[3], w, z, a6}));
        sub(acc, cert_comm_word(call(FormId::C2211, {c[0], c[1], c[2], c[3], z, w}), a6));
        add(acc, cert_comm_word(call(FormId::C2211, {c[0], c[1], c[2], c[3], z, a6}), w));
        return acc;
      }
      default: {
        // Composite inside the product generator: rewrite Q around the split
        // slot and wrap the three parts with the two outer commutator slots.
        std::array<Word, 4> cx = c, cy = c;
        cx[static_cast<std::size_t>(i - 1)] = z;
        cy[static_cast<std::size_t>(i - 1)] = w;
        Certificate acc = wrapA(cx, w, a5, a6);
        add(acc, wrapB(cy, z, a5, a6));
        for (const Cross& cr : q_crosses(c, i, w, z)) add(acc, wrap_cross1(cr, a5, a6));
        return acc;
      }
    }
  }

  Certificate p2212_case(const std::vector<Word>& a, int i, int hops) {
    const std::array<Word, 4> c{a[0], a[1], a[2], a[3]};
    const Word &a5 = a[4], &a6 = a[5], &a7 = a[6];
    Word w, z;
    split(a[static_cast<std::size_t>(i - 1)], w, z);
    switch (i) {
      case 7: {
        Certificate acc = borderL(w, call(FormId::P2212, {c[0], c[1], c[2], c[3], a5, a6, z}));
        add(acc, borderR(call(FormId::P2212, {c[0], c[1], c[2], c[3], a5, a6, w}), z));
        add(acc, cert_mul_right(call(FormId::C2211, {c[0], c[1], c[2], c[3], a5, w}), lnp({a6, z})));
        add(acc, cert_mul_right(call(FormId::C2211, {c[0], c[1], c[2], c[3], a6, w}), lnp({a5, z})));
        return acc;
      }
      case 6:
        return lateral(FormId::P2212, swapped(a, 4, 5), hops);
      case 5: {
        Certificate acc = borderL(w, call(FormId::P2212, {c[0], c[1], c[2], c[3], z, a6, a7}));
        add(acc, borderR(call(FormId::P2212, {c[0], c[1], c[2], c[3], w, a6, a7}), z));
        add(acc, qxg(c, w, {z, a6, a7}));
        sub(acc, qxg(c, w, {z, a7, a6}));
        add(acc, cert_mul_right(call(FormId::C2211, {c[0], c[1], c[2], c[3], a6, w}), lnp({z, a7})));
        return acc;
      }
      default: {
        std::array<Word, 4> cx = c, cy = c;
        cx[static_cast<std::size_t>(i - 1)] = z;
        cy[static_cast<std::size_t>(i - 1)] = w;
        Certificate acc = wrapA2(cx, w, a5, a6, a7);
        add(acc, wrapB2(cy, z, a5, a6, a7));
        for (const Cross& cr : q_crosses(c, i, w, z)) add(acc, wrap_cross2(cr, a5, a6, a7));
        return acc;
      }
    }
  }

  Certificate p2222_case(const std::vector<Word>& a, int i, int hops) {
    const std::array<Word, 4> c{a[0], a[1], a[2], a[3]};
    const std::array<Word, 4> d{a[4], a[5], a[6], a[7]};
    Word w, z;
    split(a[static_cast<std::size_t>(i - 1)], w, z);
    switch (i) {
      case 8: {
        Certificate acc = borderR(call(FormId::P2222, {c[0], c[1], c[2], c[3], d[0], d[1], d[2], z}), w);
        add(acc, borderR(call(FormId::P2222, {c[0], c[1], c[2], c[3], d[0], d[1], d[2], w}), z));
        sub(acc, q12g(c, d[0], d[1], {d[2], z, w}));
        sub(acc, q12g(c, d[0], d[2], {d[1], z, w}));
        return acc;
      }
      case 7: {
        Certificate acc = borderR(call(FormId::P2222, {c[0], c[1], c[2], c[3], d[0], d[1], z, d[3]}), w);
        add(acc, borderR(call(FormId::P2222, {c[0], c[1], c[2], c[3], d[0], d[1], w, d[3]}), z));
        sub(acc, q12g(c, d[0], d[1], {z, d[3], w}));
        sub(acc, q12g(c, d[0], w, {d[1], d[3], z}));
        sub(acc, q12g(c, d[0], z, {d[1], d[3], w}));
        sub(acc, q1g2(c, {d[0], z, w}, d[1], d[3]));
        return acc;
      }
      case 1: {
        Certificate acc = borderL(w, call(FormId::P2222, {z, c[1], c[2], c[3], d[0], d[1], d[2], d[3]}));
        add(acc, borderL(z, call(FormId::P2222, {w, c[1], c[2], c[3], d[0], d[1], d[2], d[3]})));
        add(acc, cert_mul_left(lnp({c[2], c[3]}),
                               call(FormId::P322, {w, c[1], z, d[0], d[1], d[2], d[3]})));
        add(acc, cert_mul_right(H2({w, c[1], z}, {c[2], c[3]}), qp(d[0], d[1], d[2], d[3])));
        add(acc, cert_mul_left(lnp({c[1], c[3]}),
                               call(FormId::P322, {w, c[2], z, d[0], d[1], d[2], d[3]})));
        add(acc, cert_mul_right(H2({w, c[2], z}, {c[1], c[3]}), qp(d[0], d[1], d[2], d[3])));
        return acc;
      }
      case 6:
        return lateral(FormId::P2222, swapped(a, 5, 6), hops);
      default: {
        // Composite in the left factor or in the first right slot: swap the
        // two product generators and absorb their commutator.
        std::vector<Word> flipped{d[0], d[1], d[2], d[3], c[0], c[1], c[2], c[3]};
        Certificate acc = lateral(FormId::P2222, std::move(flipped), hops);
        add(acc, qq_comm(c, d));
        return acc;
      }
    }
  }
};

// One-shot convenience around a fresh memo table.
inline Certificate reduce_form(FormId f, const std::vector<Word>& args) {
  Reducer r;
  return r.reduce(f, args);
}

// Splitting identities as catalog extensions: one entry per form and slot,
// instantiated with a product of two fresh variables in the split slot. The
// left side is the form value, the right side the certificate value, both
// over the integers, so the derivation suite can map the difference into any
// ring.
inline std::vector<DerivedIdentity> split_identity_entries() {
  std::vector<DerivedIdentity> out;
  IntRing Z;
  Reducer red;
  const FormId order[] = {FormId::P2222, FormId::P322, FormId::P2212, FormId::P43,
                          FormId::C2211, FormId::P33,  FormId::P42,   FormId::COMM5};
  int counter = 17;
  for (FormId f : order) {
    const int k = form_arity(f);
    for (int slot = 1; slot <= k; ++slot) {
      std::vector<Word> args;
      for (int j = 1; j <= k; ++j) {
        if (j == slot)
          args.push_back(Word{{static_cast<Var>(j), static_cast<Var>(k + 1)}});
        else
          args.push_back(Word::var(static_cast<Var>(j)));
      }
      Certificate cert = red.reduce(f, args);
      std::string note = std::string(form_name(f)) + " slot " + std::to_string(slot) +
                         " splits into bordered lower instances";
      out.push_back(DerivedIdentity{"D" + std::to_string(counter++), std::move(note),
                                    cert.target, cert_value(Z, cert)});
    }
  }
  return out;
}

}  // namespace lnt
