#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "lnt/basis.hpp"
#include "lnt/elim.hpp"
#include "lnt/families.hpp"
#include "lnt/poly.hpp"

using namespace lnt;

namespace {

IntRing Z;
RatRing Q;

Multidegree multilinear(int n) {
  Multidegree d;
  for (int i = 1; i <= n; ++i) d[i] = 1;
  return d;
}

SparseVec<IntRing> ivec(std::vector<std::pair<std::uint32_t, long long>> e) {
  SparseVec<IntRing> v;
  for (auto& [i, c] : e) v.entries.emplace_back(i, BigInt(c));
  return v;
}

template <class R>
Poly<R> bracket_product_2_3(const R& rg) {
  std::vector<Poly<R>> ab{Poly<R>::var(rg, 1), Poly<R>::var(rg, 2)};
  std::vector<Poly<R>> cde{Poly<R>::var(rg, 3), Poly<R>::var(rg, 4), Poly<R>::var(rg, 5)};
  return left_normed(ab) * left_normed(cde);
}

template <class R>
std::vector<SparseVec<R>> component_span(const R& rg, const std::string& spec_name,
                                         const Multidegree& d, const ComponentBasis& b) {
  std::vector<SparseVec<R>> out;
  for (const auto& p : enumerate_component(builtin_specs().at(spec_name), d, rg))
    out.push_back(vectorize(p, b));
  return out;
}

// recombine a coefficient list against the original span
template <class R>
SparseVec<R> combine(const R& rg, const std::vector<SparseVec<R>>& span,
                     const std::vector<std::pair<std::uint32_t, typename R::Elem>>& coeffs) {
  SparseVec<R> acc;
  for (const auto& [j, c] : coeffs) axpy(rg, acc, c, span[j]);
  return acc;
}

SparseVec<IntRing> random_ivec(std::mt19937& gen, std::uint32_t dim) {
  std::uniform_int_distribution<int> coeff(-9, 9);
  SparseVec<IntRing> v;
  for (std::uint32_t i = 0; i < dim; ++i) {
    int c = coeff(gen);
    if (c != 0) v.entries.emplace_back(i, BigInt(c));
  }
  return v;
}

template <class R>
SparseVec<R> to_ring(const R& rg, const SparseVec<IntRing>& v) {
  SparseVec<R> w;
  for (const auto& [i, c] : v.entries) {
    auto m = rg.from_bigint(c);
    if (!rg.is_zero(m)) w.entries.emplace_back(i, m);
  }
  return w;
}

}  // namespace

TEST_CASE("a 2x3 bracket product sits at index three in the fourth span", "[membership]") {
  auto b5 = component_basis(multilinear(5));
  auto t4z = component_span(Z, "T4", multilinear(5), b5);
  auto tz = vectorize(bracket_product_2_3(Z), b5);

  auto res = lattice_membership(t4z, tz);
  REQUIRE(res.verdict == Verdict::TORSION);
  CHECK(res.torsion_index == 3);

  // the returned combination is a certificate for 3 * target, bit exact
  auto three_t = tz;
  scale_in_place(Z, three_t, BigInt(3));
  CHECK(combine(Z, t4z, res.coeffs) == three_t);

  // and 3 is minimal: neither the target nor its double lies in the lattice
  ZLattice L;
  for (const auto& v : t4z) L.add(v);
  auto two_t = tz;
  scale_in_place(Z, two_t, BigInt(2));
  CHECK(!L.reduces_to_zero(tz));
  CHECK(!L.reduces_to_zero(two_t));
  CHECK(L.reduces_to_zero(three_t));

  // over the rationals the index is invertible, so it is a member
  auto t4q = component_span(Q, "T4", multilinear(5), b5);
  auto tq = vectorize(bracket_product_2_3(Q), b5);
  auto rq = field_membership(Q, t4q, tq);
  REQUIRE(rq.verdict == Verdict::MEMBER);
  CHECK(combine(Q, t4q, rq.coeffs) == tq);

  // same over prime fields away from 3, but not at 3
  for (std::uint64_t p : {2ull, 5ull, 7ull, 101ull}) {
    ModRing F(p);
    auto sp = component_span(F, "T4", multilinear(5), b5);
    auto tf = vectorize(bracket_product_2_3(F), b5);
    auto rf = field_membership(F, sp, tf);
    REQUIRE(rf.verdict == Verdict::MEMBER);
    CHECK(combine(F, sp, rf.coeffs) == tf);
  }
  ModRing F3(3);
  auto sp3 = component_span(F3, "T4", multilinear(5), b5);
  CHECK(field_membership(F3, sp3, vectorize(bracket_product_2_3(F3), b5)).verdict ==
        Verdict::NOT_MEMBER);
}

TEST_CASE("a generator is a member with unit coefficient", "[membership]") {
  auto b5 = component_basis(multilinear(5));
  auto t5z = component_span(Z, "T5", multilinear(5), b5);

  std::vector<Poly<IntRing>> vars;
  for (int i = 1; i <= 5; ++i) vars.push_back(Poly<IntRing>::var(Z, i));
  auto target = vectorize(left_normed(vars), b5);

  auto res = lattice_membership(t5z, target);
  REQUIRE(res.verdict == Verdict::MEMBER);
  REQUIRE(res.coeffs.size() == 1);
  CHECK(res.coeffs[0].second == 1);
  CHECK(t5z[res.coeffs[0].first] == target);

  // the field engines report the first span vector the same way
  auto t5q = component_span(Q, "T5", multilinear(5), b5);
  auto rq = field_membership(Q, t5q, t5q[0]);
  REQUIRE(rq.verdict == Verdict::MEMBER);
  REQUIRE(rq.coeffs.size() == 1);
  CHECK(rq.coeffs[0].first == 0);
  CHECK(rq.coeffs[0].second == 1);

  ModRing F7(7);
  auto t5f = component_span(F7, "T5", multilinear(5), b5);
  auto rf = field_membership(F7, t5f, t5f[0]);
  REQUIRE(rf.verdict == Verdict::MEMBER);
  REQUIRE(rf.coeffs.size() == 1);
  CHECK(rf.coeffs[0].first == 0);
  CHECK(rf.coeffs[0].second == 1);
}

TEST_CASE("zero target is a member with the empty combination", "[membership]") {
  SparseVec<IntRing> zero;
  auto r1 = lattice_membership({ivec({{0, 2}})}, zero);
  CHECK(r1.verdict == Verdict::MEMBER);
  CHECK(r1.coeffs.empty());
  auto r2 = lattice_membership({}, zero);
  CHECK(r2.verdict == Verdict::MEMBER);

  SparseVec<RatRing> zq;
  CHECK(field_membership(Q, {}, zq).verdict == Verdict::MEMBER);
  ModRing F2(2);
  SparseVec<ModRing> zf;
  CHECK(field_membership(F2, {}, zf).verdict == Verdict::MEMBER);
}

TEST_CASE("plain words are not commutator combinations", "[membership]") {
  auto b2 = component_basis(multilinear(2));
  std::vector<Poly<RatRing>> xy{Poly<RatRing>::var(Q, 1), Poly<RatRing>::var(Q, 2)};
  auto comm = vectorize(left_normed(xy), b2);
  auto word = vectorize(Poly<RatRing>::monomial(Q, Word(std::vector<Var>{1, 2})), b2);
  CHECK(field_membership(Q, {comm}, word).verdict == Verdict::NOT_MEMBER);
}

TEST_CASE("integer input is rejected by the field engine", "[membership]") {
  CHECK_THROWS_WITH(field_membership(Z, {ivec({{0, 1}})}, ivec({{0, 1}})),
                    Catch::Matchers::ContainsSubstring("lattice_membership"));
}

TEST_CASE("member certificates recombine to the target", "[membership]") {
  std::mt19937 gen(501);
  std::uniform_int_distribution<int> coeff(-4, 4);
  ModRing F5(5);
  for (int trial = 0; trial < 100; ++trial) {
    auto span = std::vector<SparseVec<IntRing>>{};
    for (int i = 0; i < 6; ++i) span.push_back(random_ivec(gen, 9));
    // targets built as integer combinations are members by construction
    SparseVec<IntRing> t;
    for (const auto& v : span) axpy(Z, t, BigInt(coeff(gen)), v);
    auto res = lattice_membership(span, t);
    REQUIRE(res.verdict == Verdict::MEMBER);
    CHECK(combine(Z, span, res.coeffs) == t);

    std::vector<SparseVec<RatRing>> spanq;
    for (const auto& v : span) spanq.push_back(to_ring(Q, v));
    auto rq = field_membership(Q, spanq, to_ring(Q, t));
    REQUIRE(rq.verdict == Verdict::MEMBER);
    CHECK(combine(Q, spanq, rq.coeffs) == to_ring(Q, t));

    std::vector<SparseVec<ModRing>> spanf;
    for (const auto& v : span) spanf.push_back(to_ring(F5, v));
    auto rf = field_membership(F5, spanf, to_ring(F5, t));
    REQUIRE(rf.verdict == Verdict::MEMBER);
    CHECK(combine(F5, spanf, rf.coeffs) == to_ring(F5, t));
  }
}

TEST_CASE("verdicts are consistent across rings", "[membership]") {
  std::mt19937 gen(502);
  std::uniform_int_distribution<int> coeff(-3, 3);
  std::uniform_int_distribution<int> mode(0, 2);
  const std::uint64_t primes[] = {2, 3, 5, 7};
  int member_seen = 0, torsion_seen = 0, nonmember_seen = 0;
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<SparseVec<IntRing>> span;
    for (int i = 0; i < 5; ++i) span.push_back(random_ivec(gen, 8));
    SparseVec<IntRing> t;
    int m = mode(gen);
    for (const auto& v : span) axpy(Z, t, BigInt(coeff(gen)), v);
    if (m == 1) {
      // scale the span afterwards so the combination often needs fractions
      for (auto& v : span) scale_in_place(Z, v, BigInt(2));
    } else if (m == 2) {
      axpy(Z, t, BigInt(1), random_ivec(gen, 8));
    }

    auto rz = lattice_membership(span, t, false);
    std::vector<SparseVec<RatRing>> spanq;
    for (const auto& v : span) spanq.push_back(to_ring(Q, v));
    auto rq = field_membership(Q, spanq, to_ring(Q, t), false);

    // membership over the integers descends to every coefficient ring, and
    // rational membership is exactly integer membership up to torsion
    if (rz.verdict == Verdict::MEMBER || rz.verdict == Verdict::TORSION)
      CHECK(rq.verdict == Verdict::MEMBER);
    else
      CHECK(rq.verdict == Verdict::NOT_MEMBER);

    for (std::uint64_t p : primes) {
      ModRing F(p);
      std::vector<SparseVec<ModRing>> spanf;
      for (const auto& v : span) spanf.push_back(to_ring(F, v));
      auto rf = field_membership(F, spanf, to_ring(F, t), false);
      if (rz.verdict == Verdict::MEMBER) CHECK(rf.verdict == Verdict::MEMBER);
      if (rz.verdict == Verdict::TORSION && rz.torsion_index % p != 0)
        CHECK(rf.verdict == Verdict::MEMBER);
      // a rejection modulo any prime forces rejection over the integers
      if (rf.verdict == Verdict::NOT_MEMBER) CHECK(rz.verdict != Verdict::MEMBER);
    }

    member_seen += rz.verdict == Verdict::MEMBER;
    torsion_seen += rz.verdict == Verdict::TORSION;
    nonmember_seen += rz.verdict == Verdict::NOT_MEMBER;
  }
  // the generator must actually exercise all three verdicts
  CHECK(member_seen > 0);
  CHECK(torsion_seen > 0);
  CHECK(nonmember_seen > 0);
}

TEST_CASE("a torsion element can be a member modulo a prime dividing its index",
          "[membership]") {
  // Torsion index k does not force rejection mod p for p | k: with
  // L = span{(1,0),(0,9)} and t = (1,3), 3t = (3,9) lies in L and no smaller
  // multiple does, yet t = (1,0) + 3*(0,1) reduces to a member mod 3.
  std::vector<SparseVec<IntRing>> span{ivec({{0, 1}}), ivec({{1, 9}})};
  auto t = ivec({{0, 1}, {1, 3}});
  auto rz = lattice_membership(span, t, false);
  REQUIRE(rz.verdict == Verdict::TORSION);
  CHECK(rz.torsion_index == 3);

  ModRing F3(3);
  std::vector<SparseVec<ModRing>> spanf;
  for (const auto& v : span) spanf.push_back(to_ring(F3, v));
  CHECK(field_membership(F3, spanf, to_ring(F3, t), false).verdict == Verdict::MEMBER);
}

TEST_CASE("span comparison over components", "[membership]") {
  auto b5 = component_basis(multilinear(5));

  // a list equals itself
  auto t5z = component_span(Z, "T5", multilinear(5), b5);
  CHECK(span_equal(Z, t5z, t5z).relation == SpanRelation::EQUAL);

  // the eight-family span matches the verbal span in the multilinear
  // degree-5 component, both ways round
  auto i5z = component_span(Z, "I5", multilinear(5), b5);
  CHECK(span_equal(Z, i5z, t5z).relation == SpanRelation::EQUAL);
  CHECK(span_equal(Z, t5z, i5z).relation == SpanRelation::EQUAL);

  // over F3 the three-generator list sticks out of the fourth verbal span:
  // the product generator instance [x1,x2][x3,x4,x5] has torsion index 3,
  // so it is missing from the verbal span in characteristic 3
  ModRing F3(3);
  auto g43 = component_span(F3, "G4_3", multilinear(5), b5);
  auto t4 = component_span(F3, "T4", multilinear(5), b5);
  auto cmp = span_equal(F3, g43, t4);
  REQUIRE(cmp.relation == SpanRelation::A_NOT_IN_B);
  // the returned witness is in the left-hand span and not in the right
  ModEchelon EA(F3), EB(F3);
  for (const auto& v : g43) EA.add(v);
  for (const auto& v : t4) EB.add(v);
  CHECK(EA.reduces_to_zero(cmp.witness));
  CHECK(!EB.reduces_to_zero(cmp.witness));
  // and so is the canonical one
  auto prod = vectorize(bracket_product_2_3(F3), b5);
  CHECK(EA.reduces_to_zero(prod));
  CHECK(!EB.reduces_to_zero(prod));

  // away from 3 the same two lists agree
  ModRing F5r(5);
  auto g43_5 = component_span(F5r, "G4_3", multilinear(5), b5);
  auto t4_5 = component_span(F5r, "T4", multilinear(5), b5);
  CHECK(span_equal(F5r, g43_5, t4_5).relation == SpanRelation::EQUAL);
  auto g43_q = component_span(Q, "G4_3", multilinear(5), b5);
  auto t4_q = component_span(Q, "T4", multilinear(5), b5);
  CHECK(span_equal(Q, g43_q, t4_q).relation == SpanRelation::EQUAL);
}

TEST_CASE("span comparison reports witness direction", "[membership]") {
  auto v = ivec({{0, 1}, {1, -1}});
  auto w = ivec({{0, 1}});
  auto r = span_equal(Z, std::vector<SparseVec<IntRing>>{v, w},
                      std::vector<SparseVec<IntRing>>{v});
  CHECK(r.relation == SpanRelation::A_NOT_IN_B);
  CHECK(r.witness == w);

  // over the integers, doubling leaves the rational span but shrinks the
  // lattice
  auto dv = v;
  scale_in_place(Z, dv, BigInt(2));
  auto r2 = span_equal(Z, std::vector<SparseVec<IntRing>>{dv},
                       std::vector<SparseVec<IntRing>>{v});
  CHECK(r2.relation == SpanRelation::B_NOT_IN_A);
  CHECK(r2.witness == v);
  auto r3 = span_equal(Q, std::vector<SparseVec<RatRing>>{to_ring(Q, dv)},
                       std::vector<SparseVec<RatRing>>{to_ring(Q, v)});
  CHECK(r3.relation == SpanRelation::EQUAL);
}
