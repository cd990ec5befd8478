#pragma once

#include <json.hpp>

#include <map>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "families.hpp"
#include "parse.hpp"
#include "poly.hpp"

namespace lnt {

// One summand of a membership witness: coeff * left * F(vars) * right, where
// F is a generator family evaluated at single variables. A sum of such terms
// with integer coefficients exhibits the target as an element of the ideal
// generated by the families, simultaneously over every coefficient ring.
struct CertTerm {
  BigInt coeff;
  Word left;
  Family family = Family::F1;
  std::vector<Var> vars;
  Word right;
};

struct Certificate {
  Poly<IntRing> target;
  std::vector<CertTerm> terms;

  explicit Certificate(Poly<IntRing> t) : target(std::move(t)) {}
};

template <class R>
Poly<R> cert_term_value(const R& rg, const CertTerm& t) {
  std::vector<Poly<R>> args;
  args.reserve(t.vars.size());
  for (Var v : t.vars) args.push_back(Poly<R>::var(rg, v));
  Poly<R> body = family_poly(t.family, args);
  Poly<R> placed = word_times(body, t.left, t.right);
  return placed.scaled(rg.from_bigint(t.coeff));
}

// The witness value as an element of K<X> over the requested ring. The terms
// carry integer data, so mapping them through from_bigint keeps the identity
// exact over Z, Q and every F_p at once.
template <class R>
Poly<R> cert_value(const R& rg, const Certificate& c) {
  Poly<R> acc(rg);
  for (const auto& t : c.terms) acc += cert_term_value(rg, t);
  return acc;
}

inline bool verify_certificate(const Certificate& c) {
  IntRing Z;
  return cert_value(Z, c) == c.target;
}

template <class R>
bool verify_certificate_over(const R& rg, const Certificate& c) {
  Poly<R> want(rg);
  for (const auto& [w, coeff] : c.target.terms) want.add_term(w, rg.from_bigint(coeff));
  return cert_value(rg, c) == want;
}

// Merges terms that share the same placement and instance, dropping zeros.
// Keeps composed witnesses from growing beyond the distinct summands.
inline void cert_coalesce(Certificate& c) {
  std::map<std::string, std::pair<BigInt, const CertTerm*>> acc;
  for (auto& t : c.terms) {
    std::string key = word_key(t.left) + "|" + family_name(t.family) + "|";
    for (Var v : t.vars) key += var_name(v) + ".";
    key += "|" + word_key(t.right);
    auto [it, fresh] = acc.try_emplace(std::move(key), t.coeff, &t);
    if (!fresh) it->second.first += t.coeff;
  }
  std::vector<CertTerm> merged;
  merged.reserve(acc.size());
  for (auto& [k, entry] : acc) {
    if (entry.first == 0) continue;
    CertTerm t = *entry.second;
    t.coeff = entry.first;
    merged.push_back(std::move(t));
  }
  c.terms = std::move(merged);
}

inline Certificate cert_add(Certificate a, const Certificate& b) {
  a.target += b.target;
  a.terms.insert(a.terms.end(), b.terms.begin(), b.terms.end());
  cert_coalesce(a);
  return a;
}

inline Certificate cert_scale(const BigInt& c, Certificate a) {
  a.target = a.target.scaled(c);
  for (auto& t : a.terms) t.coeff *= c;
  cert_coalesce(a);
  return a;
}

// left * value * right, with monomial borders.
inline Certificate cert_border(Certificate a, const Word& left, const Word& right) {
  a.target = word_times(a.target, left, right);
  for (auto& t : a.terms) {
    t.left = left * t.left;
    t.right = t.right * right;
  }
  return a;
}

// p * value for a polynomial p: every term of p borders the witness once.
inline Certificate cert_mul_left(const Poly<IntRing>& p, const Certificate& a) {
  Certificate out(p * a.target);
  for (const auto& [w, coeff] : p.terms)
    for (const auto& t : a.terms)
      out.terms.push_back({coeff * t.coeff, w * t.left, t.family, t.vars, t.right});
  cert_coalesce(out);
  return out;
}

inline Certificate cert_mul_right(const Certificate& a, const Poly<IntRing>& p) {
  Certificate out(a.target * p);
  for (const auto& [w, coeff] : p.terms)
    for (const auto& t : a.terms)
      out.terms.push_back({coeff * t.coeff, t.left, t.family, t.vars, t.right * w});
  cert_coalesce(out);
  return out;
}

// [value, z] for a monomial z.
inline Certificate cert_comm_word(const Certificate& a, const Word& z) {
  Word empty;
  return cert_add(cert_border(a, empty, z), cert_scale(BigInt(-1), cert_border(a, z, empty)));
}

// [value, p] for a polynomial p.
inline Certificate cert_comm_poly(const Certificate& a, const Poly<IntRing>& p) {
  return cert_add(cert_mul_right(a, p), cert_scale(BigInt(-1), cert_mul_left(p, a)));
}

namespace detail {

inline Word cert_word_parse(const std::string& s) {
  if (s == "1") return Word{};
  IntRing Z;
  Poly<IntRing> p = parse_poly(Z, s);
  if (p.terms.size() != 1 || !(p.terms.begin()->second == BigInt(1)))
    throw std::invalid_argument("expected a monomial with unit coefficient: " + s);
  return p.terms.begin()->first;
}

}  // namespace detail

inline std::string cert_to_json(const Certificate& c) {
  nlohmann::json j;
  j["target"] = format_poly(c.target);
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& t : c.terms) {
    nlohmann::json jt;
    jt["coeff"] = t.coeff.str();
    jt["left"] = word_text(t.left);
    jt["family"] = family_name(t.family);
    nlohmann::json vars = nlohmann::json::array();
    for (Var v : t.vars) vars.push_back(static_cast<std::uint64_t>(v));
    jt["vars"] = std::move(vars);
    jt["right"] = word_text(t.right);
    terms.push_back(std::move(jt));
  }
  j["terms"] = std::move(terms);
  return j.dump();
}

inline Certificate cert_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  IntRing Z;
  Certificate c(parse_poly(Z, j.at("target").get<std::string>()));
  for (const auto& jt : j.at("terms")) {
    CertTerm t;
    t.coeff = BigInt(jt.at("coeff").get<std::string>());
    t.left = detail::cert_word_parse(jt.at("left").get<std::string>());
    t.family = family_from_name(jt.at("family").get<std::string>());
    for (const auto& v : jt.at("vars")) t.vars.push_back(v.get<std::uint64_t>());
    t.right = detail::cert_word_parse(jt.at("right").get<std::string>());
    c.terms.push_back(std::move(t));
  }
  return c;
}

}  // namespace lnt
