#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "ring.hpp"
#include "word.hpp"

namespace lnt {

// Element of the free associative algebra over R: finite R-combination of
// words, kept canonical (zero coefficients are never stored).
template <class R>
struct Poly {
  using Elem = typename R::Elem;

  R ring;
  std::map<Word, Elem, WordLess> terms;

  explicit Poly(R rg) : ring(std::move(rg)) {}

  static Poly zero(const R& rg) { return Poly(rg); }
  static Poly constant(const R& rg, Elem c) {
    Poly p(rg);
    p.add_term(Word::one(), std::move(c));
    return p;
  }
  static Poly one(const R& rg) { return constant(rg, rg.one()); }
  static Poly var(const R& rg, Var v) { return monomial(rg, Word::var(v)); }
  static Poly monomial(const R& rg, Word w) {
    Poly p(rg);
    p.add_term(std::move(w), rg.one());
    return p;
  }

  bool is_zero() const { return terms.empty(); }

  void add_term(Word w, Elem c) {
    if (ring.is_zero(c)) return;
    auto [it, fresh] = terms.try_emplace(std::move(w), c);
    if (!fresh) {
      it->second = ring.add(it->second, c);
      if (ring.is_zero(it->second)) terms.erase(it);
    }
  }

  void check_ring(const Poly& o) const {
    if (!ring.same(o.ring)) throw std::invalid_argument("ring mismatch");
  }

  Poly& operator+=(const Poly& o) {
    check_ring(o);
    for (auto& [w, c] : o.terms) add_term(w, c);
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    check_ring(o);
    for (auto& [w, c] : o.terms) add_term(w, ring.neg(c));
    return *this;
  }
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator-(const Poly& a) {
    Poly r(a.ring);
    for (auto& [w, c] : a.terms) r.terms.emplace(w, a.ring.neg(c));
    return r;
  }

  Poly scaled(const Elem& c) const {
    Poly r(ring);
    if (ring.is_zero(c)) return r;
    for (auto& [w, k] : terms) r.add_term(w, ring.mul(k, c));
    return r;
  }

  friend Poly operator*(const Poly& a, const Poly& b) {
    a.check_ring(b);
    Poly r(a.ring);
    for (auto& [wa, ca] : a.terms)
      for (auto& [wb, cb] : b.terms) r.add_term(wa * wb, a.ring.mul(ca, cb));
    return r;
  }

  friend bool operator==(const Poly& a, const Poly& b) {
    a.check_ring(b);
    if (a.terms.size() != b.terms.size()) return false;
    auto ia = a.terms.begin();
    auto ib = b.terms.begin();
    for (; ia != a.terms.end(); ++ia, ++ib) {
      if (!(ia->first == ib->first) || !a.ring.eq(ia->second, ib->second)) return false;
    }
    return true;
  }

  std::size_t max_degree() const {
    return terms.empty() ? 0 : terms.rbegin()->first.degree();
  }
};

template <class R>
Poly<R> word_times(const Poly<R>& p, const Word& left, const Word& right) {
  Poly<R> r(p.ring);
  for (auto& [w, c] : p.terms) r.terms.emplace(left * w * right, c);
  return r;
}

template <class R>
Poly<R> bracket(const Poly<R>& a, const Poly<R>& b) {
  return a * b - b * a;
}

// Left-normed commutator [p1,p2,...,pk] = [[..[p1,p2],..],pk]; k >= 1.
template <class R>
Poly<R> left_normed(const std::vector<Poly<R>>& args) {
  if (args.empty()) throw std::invalid_argument("left_normed needs at least one argument");
  Poly<R> acc = args[0];
  for (std::size_t i = 1; i < args.size(); ++i) acc = bracket(acc, args[i]);
  return acc;
}

// Left-normed commutator of words as a signed integer combination; shared by
// every ring via from_bigint on the coefficients.
inline std::map<Word, BigInt, WordLess> comm_words(const std::vector<Word>& args) {
  if (args.empty()) throw std::invalid_argument("left_normed needs at least one argument");
  std::map<Word, BigInt, WordLess> acc;
  acc[args[0]] = 1;
  for (std::size_t i = 1; i < args.size(); ++i) {
    std::map<Word, BigInt, WordLess> next;
    auto put = [&](Word w, BigInt c) {
      auto [it, fresh] = next.try_emplace(std::move(w), c);
      if (!fresh) {
        it->second += c;
        if (it->second == 0) next.erase(it);
      }
    };
    for (auto& [w, c] : acc) {
      put(w * args[i], c);
      put(args[i] * w, -c);
    }
    acc.swap(next);
  }
  return acc;
}

template <class R>
Poly<R> left_normed_words(const R& rg, const std::vector<Word>& args) {
  Poly<R> p(rg);
  for (auto& [w, c] : comm_words(args)) p.add_term(w, rg.from_bigint(c));
  return p;
}

// Substitute variables by polynomials. Every variable occurring in p must be
// assigned, otherwise the offending variable is named in the error.
template <class R>
Poly<R> substitute(const Poly<R>& p, const std::map<Var, Poly<R>>& images) {
  Poly<R> out(p.ring);
  for (auto& [w, c] : p.terms) {
    Poly<R> prod = Poly<R>::constant(p.ring, c);
    for (Var v : w.letters) {
      auto it = images.find(v);
      if (it == images.end())
        throw std::invalid_argument("no image given for variable " + var_name(v));
      prod = prod * it->second;
    }
    out += prod;
  }
  return out;
}

inline Multidegree multidegree_of_term(const Word& w) { return multidegree_of(w); }

// True if every term of p has multidegree d.
template <class R>
bool is_component(const Poly<R>& p, const Multidegree& d) {
  for (auto& [w, c] : p.terms)
    if (multidegree_of(w) != d) return false;
  return true;
}

template <class R>
Poly<R> component_part(const Poly<R>& p, const Multidegree& d) {
  Poly<R> r(p.ring);
  for (auto& [w, c] : p.terms)
    if (multidegree_of(w) == d) r.terms.emplace(w, c);
  return r;
}

// Split into multihomogeneous components.
template <class R>
std::map<Multidegree, Poly<R>> components(const Poly<R>& p) {
  std::map<Multidegree, Poly<R>> out;
  for (auto& [w, c] : p.terms) {
    Multidegree d = multidegree_of(w);
    auto it = out.find(d);
    if (it == out.end()) it = out.emplace(d, Poly<R>(p.ring)).first;
    it->second.terms.emplace(w, c);
  }
  return out;
}

template <class R>
std::string format_poly(const Poly<R>& p) {
  if (p.terms.empty()) return "0";
  std::string s;
  bool first = true;
  for (auto& [w, c] : p.terms) {
    std::string cs = p.ring.str(c);
    bool negative = !cs.empty() && cs[0] == '-';
    std::string mag = negative ? cs.substr(1) : cs;
    if (first) {
      if (negative) s += "-";
      first = false;
    } else {
      s += negative ? " - " : " + ";
    }
    if (w.is_one()) {
      s += mag;
    } else if (mag == "1") {
      s += word_text(w);
    } else {
      s += mag + "*" + word_text(w);
    }
  }
  return s;
}

}  // namespace lnt
