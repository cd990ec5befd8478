#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace lnt {

// Variables are indexed from 1; x1 is Var(1).
using Var = std::uint32_t;

// A word of the free monoid on {x1, x2, ...}. The empty word is the unit.
struct Word {
  std::vector<Var> letters;

  Word() = default;
  explicit Word(std::vector<Var> ls) : letters(std::move(ls)) {}

  static Word one() { return Word{}; }
  static Word var(Var v) { return Word{{v}}; }

  std::size_t degree() const { return letters.size(); }
  bool is_one() const { return letters.empty(); }

  friend Word operator*(const Word& a, const Word& b) {
    Word r;
    r.letters.reserve(a.letters.size() + b.letters.size());
    r.letters.insert(r.letters.end(), a.letters.begin(), a.letters.end());
    r.letters.insert(r.letters.end(), b.letters.begin(), b.letters.end());
    return r;
  }
  friend bool operator==(const Word& a, const Word& b) = default;
};

// Monomial order used everywhere: total degree first, ties by lex on letters.
inline bool word_less(const Word& a, const Word& b) {
  if (a.letters.size() != b.letters.size())
    return a.letters.size() < b.letters.size();
  return a.letters < b.letters;
}

struct WordLess {
  bool operator()(const Word& a, const Word& b) const { return word_less(a, b); }
};

// Multidegree: variable -> multiplicity, zero entries never stored.
using Multidegree = std::map<Var, std::uint32_t>;

inline Multidegree multidegree_of(const Word& w) {
  Multidegree d;
  for (Var v : w.letters) ++d[v];
  return d;
}

inline std::size_t total_degree(const Multidegree& d) {
  std::size_t n = 0;
  for (auto& [v, m] : d) n += m;
  return n;
}

inline Multidegree mdeg_add(const Multidegree& a, const Multidegree& b) {
  Multidegree r = a;
  for (auto& [v, m] : b) r[v] += m;
  return r;
}

// a - b, or nullopt-like failure signalled by returning false.
inline bool mdeg_sub(const Multidegree& a, const Multidegree& b, Multidegree& out) {
  out = a;
  for (auto& [v, m] : b) {
    auto it = out.find(v);
    if (it == out.end() || it->second < m) return false;
    it->second -= m;
    if (it->second == 0) out.erase(it);
  }
  return true;
}

inline std::string var_name(Var v) { return "x" + std::to_string(v); }

// "x1.x2.x1" with "" for the empty word; used in certificates and cache files.
inline std::string word_key(const Word& w) {
  std::string s;
  for (std::size_t i = 0; i < w.letters.size(); ++i) {
    if (i) s += '.';
    s += var_name(w.letters[i]);
  }
  return s;
}

// "x1*x2*x1" display form, "1" for the empty word.
inline std::string word_text(const Word& w) {
  if (w.is_one()) return "1";
  std::string s;
  for (std::size_t i = 0; i < w.letters.size(); ++i) {
    if (i) s += '*';
    s += var_name(w.letters[i]);
  }
  return s;
}

}  // namespace lnt
