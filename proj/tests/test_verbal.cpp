#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <random>
#include <vector>

#include "lnt/verbal.hpp"

using namespace lnt;

namespace {

IntRing Z;

Poly<IntRing> x(Var v) { return Poly<IntRing>::var(Z, v); }

std::vector<Poly<IntRing>> fresh_args(Family f) {
  std::vector<Poly<IntRing>> out;
  for (int i = 0; i < family_arity(f); ++i) out.push_back(x(static_cast<Var>(i + 1)));
  return out;
}

// random argument: one or two monomials of degree <= 2 with small coefficients
Poly<IntRing> random_arg(std::mt19937& gen) {
  std::uniform_int_distribution<int> nterms(1, 2);
  std::uniform_int_distribution<int> deg(1, 2);
  std::uniform_int_distribution<int> letter(1, 5);
  std::uniform_int_distribution<int> coeff(1, 3);
  std::uniform_int_distribution<int> sign(0, 1);
  Poly<IntRing> p(Z);
  int k = nterms(gen);
  for (int t = 0; t < k; ++t) {
    std::vector<Var> ls;
    int d = deg(gen);
    for (int i = 0; i < d; ++i) ls.push_back(static_cast<Var>(letter(gen)));
    int c = coeff(gen) * (sign(gen) ? 1 : -1);
    p.add_term(Word{std::move(ls)}, BigInt(c));
  }
  return p;
}

const std::vector<Family> kCertFamilies = {Family::F1, Family::F2, Family::F3, Family::F4,
                                           Family::F5, Family::F6, Family::F7, Family::F8};

}  // namespace

TEST_CASE("family certificates at fresh variables hit their defining polynomials", "[verbal]") {
  for (Family f : kCertFamilies) {
    auto args = fresh_args(f);
    VerbalCertificate c = verbal_family(f, args);
    INFO(family_name(f));
    CHECK(c.target == family_poly(f, args));
    CHECK(verify_verbal(c));
  }
}

TEST_CASE("family certificates stay valid over prime fields and the rationals", "[verbal]") {
  ModRing F2(2), F3(3), F5(5);
  RatRing Q;
  for (Family f : kCertFamilies) {
    VerbalCertificate c = verbal_family(f, fresh_args(f));
    INFO(family_name(f));
    CHECK(verify_verbal_over(F2, c));
    CHECK(verify_verbal_over(F3, c));
    CHECK(verify_verbal_over(F5, c));
    CHECK(verify_verbal_over(Q, c));
  }
}

TEST_CASE("certificates survive substitution by polynomial arguments", "[verbal]") {
  std::mt19937 gen(20240818);
  ModRing F7(7);
  for (Family f : kCertFamilies) {
    std::vector<Poly<IntRing>> args;
    for (int i = 0; i < family_arity(f); ++i) args.push_back(random_arg(gen));
    VerbalCertificate c = verbal_family(f, args);
    INFO(family_name(f));
    CHECK(c.target == family_poly(f, args));
    CHECK(verify_verbal(c));
    CHECK(verify_verbal_over(F7, c));
  }
}

TEST_CASE("substituting into a verified scheme preserves validity", "[verbal]") {
  // relabeling with repeats: the deg-8 scheme keeps verifying after x_i -> x_{r(i)}
  std::mt19937 gen(20240819);
  std::uniform_int_distribution<int> letter(1, 4);
  const VerbalCertificate& scheme = detail::rule_2222_scheme();
  for (int trial = 0; trial < 3; ++trial) {
    std::map<Var, Poly<IntRing>> images;
    for (int i = 1; i <= 8; ++i)
      images.emplace(static_cast<Var>(i), x(static_cast<Var>(letter(gen))));
    VerbalCertificate moved = verbal_substitute(scheme, std::move(images));
    CHECK(verify_verbal(moved));
  }
}

TEST_CASE("borders and scaling act on the certified value", "[verbal]") {
  VerbalCertificate g = verbal_generator({x(1), x(2), x(3), x(4), x(5)});
  Poly<IntRing> v = left_normed(std::vector<Poly<IntRing>>{x(1), x(2), x(3), x(4), x(5)});
  CHECK(g.target == v);

  VerbalCertificate lm = verbal_mul_left(x(6), g);
  CHECK(lm.target == x(6) * v);
  CHECK(verify_verbal(lm));

  VerbalCertificate rm = verbal_mul_right(g, x(6) + x(7));
  CHECK(rm.target == v * (x(6) + x(7)));
  CHECK(verify_verbal(rm));

  VerbalCertificate cm = verbal_comm(g, x(6));
  CHECK(cm.target == bracket(v, x(6)));
  CHECK(verify_verbal(cm));

  CHECK(verbal_scale(0, g).terms.empty());
  VerbalCertificate neg = verbal_scale(-2, g);
  CHECK(neg.target == v.scaled(BigInt(-2)));
  CHECK(verify_verbal(neg));
}

TEST_CASE("coalescing merges repeated terms and drops dead ones", "[verbal]") {
  VerbalCertificate g = verbal_generator({x(1), x(2), x(3), x(4), x(5)});
  VerbalCertificate doubled = verbal_add(g, g);
  VerbalCertificate merged = verbal_coalesce(doubled);
  REQUIRE(merged.terms.size() == 1);
  CHECK(merged.terms[0].coeff == 2);
  CHECK(verify_verbal(merged));

  // a cancelling pair collapses to nothing
  VerbalCertificate cancel = verbal_add(verbal_scale(-1, g), g);
  CHECK(verbal_coalesce(cancel).terms.empty());

  // a slot equal to another kills the generator value
  VerbalCertificate dead = verbal_generator({x(1), x(1), x(3), x(4), x(5)});
  CHECK(dead.target.is_zero());
  CHECK(verbal_coalesce(dead).terms.empty());

  // coalescing twice changes nothing further
  VerbalCertificate once = verbal_coalesce(verbal_family(Family::F4, fresh_args(Family::F4)));
  VerbalCertificate twice = verbal_coalesce(once);
  CHECK(once.terms.size() == twice.terms.size());
  CHECK(verbal_value(Z, once) == verbal_value(Z, twice));
}

TEST_CASE("longer commutator lists peel into borders of the five slot core", "[verbal]") {
  std::vector<Poly<IntRing>> ps;
  for (int i = 1; i <= 7; ++i) ps.push_back(x(static_cast<Var>(i)));
  VerbalCertificate c = verbal_left_normed(ps);
  CHECK(c.target == left_normed(ps));
  CHECK(verify_verbal(c));
  CHECK(c.terms.size() == 4);
}

TEST_CASE("bracket pair certificates cover mixed list lengths", "[verbal]") {
  std::vector<Poly<IntRing>> a{x(1), x(2), x(3)};
  std::vector<Poly<IntRing>> b{x(4), x(5), x(6)};
  VerbalCertificate c = verbal_bracket_pair(a, b);
  CHECK(c.target == bracket(left_normed(a), left_normed(b)));
  CHECK(verify_verbal(c));

  VerbalCertificate d = verbal_bracket_pair({x(1), x(2), x(3), x(4)}, {x(5), x(6)});
  CHECK(verify_verbal(d));

  CHECK_THROWS_AS(verbal_bracket_pair({x(1)}, {x(2), x(3)}), std::invalid_argument);
  CHECK_THROWS_AS(verbal_bracket_pair({}, {x(1), x(2), x(3), x(4), x(5)}),
                  std::invalid_argument);
}

TEST_CASE("verbal certificates survive a json round trip", "[verbal]") {
  VerbalCertificate c = verbal_rule_42(x(1), x(2) + x(3), x(3), x(4), x(5), x(1));
  std::string text = verbal_to_json(c);
  VerbalCertificate back = verbal_from_json(text);
  CHECK(back.target == c.target);
  REQUIRE(back.terms.size() == c.terms.size());
  CHECK(verbal_value(Z, back) == verbal_value(Z, c));
  CHECK(verify_verbal(back));
}

TEST_CASE("bad verbal arguments are rejected", "[verbal]") {
  CHECK_THROWS_AS(verbal_family(Family::F1, {x(1), x(2)}), std::invalid_argument);
  CHECK_THROWS_AS(verbal_left_normed({x(1), x(2), x(3), x(4)}), std::invalid_argument);
}

TEST_CASE("a perturbed verbal certificate no longer verifies", "[verbal]") {
  VerbalCertificate c = verbal_family(Family::F4, fresh_args(Family::F4));
  REQUIRE(!c.terms.empty());
  c.terms[0].coeff += 1;
  CHECK(!verify_verbal(c));
}
