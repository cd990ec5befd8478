#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <random>
#include <vector>

#include "lnt/parse.hpp"
#include "lnt/poly.hpp"

using namespace lnt;

namespace {

// Reference implementation kept deliberately dumb and independent of the
// library types: words are int vectors, polynomials are coefficient maps,
// everything is quadratic. Used to cross-check the real arithmetic.
using RWord = std::vector<int>;
using RPoly = std::map<RWord, long long>;

void racc(RPoly& p, const RWord& w, long long c) {
  auto it = p.find(w);
  long long v = (it == p.end() ? 0 : it->second) + c;
  if (v == 0) {
    if (it != p.end()) p.erase(it);
  } else if (it == p.end()) {
    p.emplace(w, v);
  } else {
    it->second = v;
  }
}

RPoly radd(const RPoly& a, const RPoly& b) {
  RPoly r = a;
  for (auto& [w, c] : b) racc(r, w, c);
  return r;
}

RPoly rscale(const RPoly& a, long long k) {
  RPoly r;
  for (auto& [w, c] : a)
    if (c * k != 0) r[w] = c * k;
  return r;
}

RPoly rmul(const RPoly& a, const RPoly& b) {
  RPoly r;
  for (auto& [wa, ca] : a)
    for (auto& [wb, cb] : b) {
      RWord w = wa;
      w.insert(w.end(), wb.begin(), wb.end());
      racc(r, w, ca * cb);
    }
  return r;
}

RPoly rbracket(const RPoly& a, const RPoly& b) {
  return radd(rmul(a, b), rscale(rmul(b, a), -1));
}

RPoly to_ref(const Poly<IntRing>& p) {
  RPoly r;
  for (auto& [w, c] : p.terms) {
    RWord rw(w.letters.begin(), w.letters.end());
    r[rw] = c.convert_to<long long>();
  }
  return r;
}

Poly<IntRing> random_poly(std::mt19937& gen, int nterms, int maxlen, int nvars) {
  IntRing Z;
  Poly<IntRing> p(Z);
  std::uniform_int_distribution<int> len(0, maxlen), var(1, nvars), coef(-4, 4);
  for (int i = 0; i < nterms; ++i) {
    std::vector<Var> ls;
    int L = len(gen);
    for (int j = 0; j < L; ++j) ls.push_back(static_cast<Var>(var(gen)));
    p.add_term(Word(std::move(ls)), coef(gen));
  }
  return p;
}

}  // namespace

TEST_CASE("word order is degree first then lex", "[poly]") {
  Word a({1, 2}), b({2}), c({1, 3}), d({2, 1});
  CHECK(word_less(b, a));        // shorter first
  CHECK(word_less(a, c));        // lex within a degree
  CHECK(word_less(c, d));
  CHECK(!word_less(a, a));
  CHECK(word_less(Word::one(), b));
}

TEST_CASE("arithmetic matches the reference implementation", "[poly]") {
  std::mt19937 gen(12345);
  for (int trial = 0; trial < 120; ++trial) {
    auto a = random_poly(gen, 4, 3, 3);
    auto b = random_poly(gen, 4, 3, 3);
    auto c = random_poly(gen, 3, 2, 3);
    CHECK(to_ref(a + b) == radd(to_ref(a), to_ref(b)));
    CHECK(to_ref(a * b) == rmul(to_ref(a), to_ref(b)));
    CHECK(to_ref(bracket(a, b)) == rbracket(to_ref(a), to_ref(b)));
    CHECK(to_ref((a + b) * c) == radd(rmul(to_ref(a), to_ref(c)), rmul(to_ref(b), to_ref(c))));
    CHECK(to_ref(a * (b * c)) == rmul(rmul(to_ref(a), to_ref(b)), to_ref(c)));
  }
}

TEST_CASE("three letter commutator expands to the four signed words", "[poly]") {
  IntRing Z;
  auto x = [&](Var v) { return Poly<IntRing>::var(Z, v); };
  auto p = left_normed<IntRing>({x(1), x(2), x(3)});

  Poly<IntRing> expect(Z);
  expect.add_term(Word({1, 2, 3}), 1);
  expect.add_term(Word({2, 1, 3}), -1);
  expect.add_term(Word({3, 1, 2}), -1);
  expect.add_term(Word({3, 2, 1}), 1);
  CHECK(p == expect);
}

TEST_CASE("five letter commutator has sixteen unit coefficients", "[poly]") {
  IntRing Z;
  std::vector<Poly<IntRing>> args;
  for (Var v = 1; v <= 5; ++v) args.push_back(Poly<IntRing>::var(Z, v));
  auto p = left_normed(args);

  REQUIRE(p.terms.size() == 16);
  for (auto& [w, c] : p.terms) {
    CHECK((c == 1 || c == -1));
    CHECK(w.degree() == 5);
  }
  CHECK(p.terms.at(Word({1, 2, 3, 4, 5})) == 1);
  CHECK(p.terms.at(Word({5, 4, 3, 2, 1})) == 1);
  CHECK(p.terms.at(Word({2, 1, 3, 4, 5})) == -1);
  CHECK(p.terms.at(Word({5, 4, 3, 1, 2})) == -1);
}

TEST_CASE("signed word expansion agrees with the polynomial commutator", "[poly]") {
  IntRing Z;
  std::mt19937 gen(999);
  std::uniform_int_distribution<int> var(1, 4), len(1, 3);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Word> ws;
    std::vector<Poly<IntRing>> ps;
    int k = 2 + trial % 4;
    for (int i = 0; i < k; ++i) {
      std::vector<Var> ls;
      int L = len(gen);
      for (int j = 0; j < L; ++j) ls.push_back(static_cast<Var>(var(gen)));
      ws.emplace_back(std::move(ls));
      ps.push_back(Poly<IntRing>::monomial(Z, ws.back()));
    }
    CHECK(left_normed_words(Z, ws) == left_normed(ps));
  }
}

TEST_CASE("jacobi identity holds for polynomial arguments", "[poly]") {
  IntRing Z;
  std::mt19937 gen(777);
  for (int trial = 0; trial < 30; ++trial) {
    auto a = random_poly(gen, 3, 2, 3);
    auto b = random_poly(gen, 3, 2, 3);
    auto c = random_poly(gen, 3, 2, 3);
    auto j = bracket(a, bracket(b, c)) + bracket(b, bracket(c, a)) + bracket(c, bracket(a, b));
    CHECK(j.is_zero());
  }
}

TEST_CASE("substitution is a ring homomorphism", "[poly]") {
  IntRing Z;
  std::mt19937 gen(4242);
  std::map<Var, Poly<IntRing>> img;
  for (Var v = 1; v <= 3; ++v) img.emplace(v, random_poly(gen, 2, 2, 2));
  for (int trial = 0; trial < 25; ++trial) {
    auto a = random_poly(gen, 3, 2, 3);
    auto b = random_poly(gen, 3, 2, 3);
    CHECK(substitute(a + b, img) == substitute(a, img) + substitute(b, img));
    CHECK(substitute(a * b, img) == substitute(a, img) * substitute(b, img));
  }
}

TEST_CASE("substitution names a missing variable", "[poly]") {
  IntRing Z;
  auto p = Poly<IntRing>::var(Z, 7);
  std::map<Var, Poly<IntRing>> img;
  img.emplace(1, Poly<IntRing>::one(Z));
  CHECK_THROWS_WITH(substitute(p, img), Catch::Matchers::ContainsSubstring("x7"));
}

TEST_CASE("multidegree components split and recombine", "[poly]") {
  IntRing Z;
  std::mt19937 gen(31337);
  for (int trial = 0; trial < 20; ++trial) {
    auto p = random_poly(gen, 6, 4, 3);
    auto parts = components(p);
    Poly<IntRing> sum(Z);
    for (auto& [d, q] : parts) {
      CHECK(is_component(q, d));
      CHECK(component_part(p, d) == q);
      sum += q;
    }
    CHECK(sum == p);
  }
}

TEST_CASE("mixed ring operands are rejected", "[poly]") {
  ModRing F5(5), F7(7);
  auto a = Poly<ModRing>::var(F5, 1);
  auto b = Poly<ModRing>::var(F7, 1);
  CHECK_THROWS_WITH(a + b, Catch::Matchers::ContainsSubstring("ring mismatch"));
  CHECK_THROWS_WITH(a * b, Catch::Matchers::ContainsSubstring("ring mismatch"));
}

TEST_CASE("modular ring requires a prime modulus", "[poly]") {
  CHECK_THROWS_WITH(ModRing(6), Catch::Matchers::ContainsSubstring("not prime"));
  CHECK_THROWS_WITH(ModRing(1), Catch::Matchers::ContainsSubstring("not prime"));
  CHECK_NOTHROW(ModRing(2));
  CHECK_NOTHROW(ModRing(101));
}

TEST_CASE("modular coefficients wrap and cancel", "[poly]") {
  ModRing F3(3);
  auto x1 = Poly<ModRing>::var(F3, 1);
  auto p = x1 + x1 + x1;
  CHECK(p.is_zero());
  auto q = x1 + x1;
  CHECK(format_poly(q) == "2*x1");
}

TEST_CASE("rational coefficients stay exact", "[poly]") {
  RatRing Q;
  Poly<RatRing> p(Q);
  p.add_term(Word::var(1), Q.from_fraction(1, 3));
  p.add_term(Word::var(1), Q.from_fraction(1, 6));
  REQUIRE(p.terms.size() == 1);
  CHECK(Q.str(p.terms.begin()->second) == "1/2");
}
