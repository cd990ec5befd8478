#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cstdio>
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

// random vector in dimension dim with entries in [-9, 9], zeros dropped
SparseVec<IntRing> random_ivec(std::mt19937& gen, std::uint32_t dim) {
  std::uniform_int_distribution<int> coeff(-9, 9);
  SparseVec<IntRing> v;
  for (std::uint32_t i = 0; i < dim; ++i) {
    int c = coeff(gen);
    if (c != 0) v.entries.emplace_back(i, BigInt(c));
  }
  return v;
}

std::vector<SparseVec<IntRing>> random_span(std::mt19937& gen, std::size_t nrows,
                                            std::uint32_t dim) {
  std::vector<SparseVec<IntRing>> rows;
  for (std::size_t i = 0; i < nrows; ++i) rows.push_back(random_ivec(gen, dim));
  return rows;
}

// lattice-preserving scrambles: reorder generators and replace r_i by
// r_i + c*r_j for j != i
void scramble(std::mt19937& gen, std::vector<SparseVec<IntRing>>& rows) {
  std::shuffle(rows.begin(), rows.end(), gen);
  if (rows.size() < 2) return;
  std::uniform_int_distribution<std::size_t> pick(0, rows.size() - 1);
  std::uniform_int_distribution<int> coeff(-3, 3);
  for (int step = 0; step < 8; ++step) {
    std::size_t i = pick(gen), j = pick(gen);
    if (i == j) continue;
    axpy(Z, rows[i], BigInt(coeff(gen)), rows[j]);
  }
}

std::vector<SparseVec<IntRing>> hnf_rows(const std::vector<SparseVec<IntRing>>& span) {
  ZLattice L;
  for (const auto& v : span) L.add(v);
  L.finalize_canonical();
  return L.rows();
}

template <class R>
std::vector<SparseVec<R>> component_span(const R& rg, const std::string& spec_name,
                                         const Multidegree& d, const ComponentBasis& b) {
  std::vector<SparseVec<R>> out;
  for (const auto& p : enumerate_component(builtin_specs().at(spec_name), d, rg))
    out.push_back(vectorize(p, b));
  return out;
}

}  // namespace

TEST_CASE("component basis lists a multidegree lexicographically", "[lattice]") {
  auto b3 = component_basis(multilinear(3));
  REQUIRE(b3.size() == 6);
  CHECK(word_text(b3.monomials.front()) == "x1*x2*x3");
  CHECK(word_text(b3.monomials.back()) == "x3*x2*x1");
  CHECK(std::is_sorted(b3.monomials.begin(), b3.monomials.end(), WordLess{}));
  for (std::uint32_t i = 0; i < b3.size(); ++i) CHECK(b3.index_of(b3.monomials[i]) == i);

  auto b21 = component_basis(Multidegree{{1, 2}, {2, 1}});
  REQUIRE(b21.size() == 3);
  CHECK(word_text(b21.monomials[0]) == "x1*x1*x2");
  CHECK(word_text(b21.monomials[1]) == "x1*x2*x1");
  CHECK(word_text(b21.monomials[2]) == "x2*x1*x1");

  CHECK(component_basis(multilinear(5)).size() == 120);

  CHECK_THROWS_AS(component_basis(Multidegree{}), std::invalid_argument);
  CHECK_THROWS_WITH(b3.index_of(Word(std::vector<Var>{1, 1, 2})),
                    Catch::Matchers::ContainsSubstring("x1*x1*x2"));
}

TEST_CASE("vectorize and unvectorize invert each other", "[lattice]") {
  auto b = component_basis(Multidegree{{1, 2}, {2, 1}, {3, 1}});
  std::mt19937 gen(2024);
  std::uniform_int_distribution<int> coeff(-20, 20);
  for (int trial = 0; trial < 50; ++trial) {
    Poly<IntRing> p(Z);
    for (const Word& w : b.monomials) {
      int c = coeff(gen);
      if (c != 0) p.add_term(w, BigInt(c));
    }
    auto v = vectorize(p, b);
    CHECK(unvectorize(Z, v, b) == p);
    CHECK(std::is_sorted(v.entries.begin(), v.entries.end(),
                         [](const auto& a, const auto& c2) { return a.first < c2.first; }));
  }

  // the zero polynomial becomes the empty vector
  CHECK(vectorize(Poly<IntRing>::zero(Z), b).is_zero());

  // a commutator of two variables has exactly two unit entries
  auto b2 = component_basis(multilinear(2));
  std::vector<Poly<IntRing>> xy{Poly<IntRing>::var(Z, 1), Poly<IntRing>::var(Z, 2)};
  auto v = vectorize(left_normed(xy), b2);
  REQUIRE(v.entries.size() == 2);
  CHECK(v.entries[0].second == 1);
  CHECK(v.entries[1].second == -1);

  // a term outside the component is rejected by name
  CHECK_THROWS_WITH(vectorize(Poly<IntRing>::var(Z, 1), b2),
                    Catch::Matchers::ContainsSubstring("x1"));
}

TEST_CASE("sparse vector arithmetic merges and cancels", "[lattice]") {
  auto r = ivec({{0, 2}, {3, 1}});
  axpy(Z, r, BigInt(3), ivec({{1, 1}, {3, -1}}));
  CHECK(r == ivec({{0, 2}, {1, 3}, {3, -2}}));
  axpy(Z, r, BigInt(1), ivec({{0, -2}, {1, -3}, {3, 2}}));
  CHECK(r.is_zero());

  ModRing F5(5);
  SparseVec<ModRing> m;
  m.entries = {{0, 2}, {1, 4}};
  SparseVec<ModRing> x;
  x.entries = {{0, 1}, {1, 2}};
  axpy(F5, m, std::uint64_t(4), x);  // 2+4*1=6=1, 4+4*2=12=2
  REQUIRE(m.entries.size() == 2);
  CHECK(m.entries[0].second == 1);
  CHECK(m.entries[1].second == 2);
  axpy(F5, m, std::uint64_t(2), x);  // 1+2=3, 2+4=6=1
  axpy(F5, m, F5.neg(1), x);         // 3-1=2, 1-2=-1=4
  CHECK(m.entries[0].second == 2);
  CHECK(m.entries[1].second == 4);

  // signed dedup collapses sign pairs and drops zeros
  auto a = ivec({{0, 1}, {1, -2}});
  auto na = a;
  negate_in_place(Z, na);
  auto doubled = a;
  scale_in_place(Z, doubled, BigInt(2));
  auto rows = dedup_signed(Z, {a, na, a, SparseVec<IntRing>{}, doubled});
  CHECK(rows.size() == 2);
}

TEST_CASE("integer echelon computes the canonical Hermite form", "[lattice]") {
  ZLattice L;
  L.add(ivec({{0, 2}, {1, 1}}));
  L.add(ivec({{0, 3}, {2, 1}}));
  L.add(ivec({{1, 5}}));
  REQUIRE(L.rank() == 3);
  L.finalize_canonical();
  auto rows = L.rows();
  // worked by hand: pivots 1,1,10 with reduced upper entries
  CHECK(rows[0] == ivec({{0, 1}, {2, 7}}));
  CHECK(rows[1] == ivec({{1, 1}, {2, 6}}));
  CHECK(rows[2] == ivec({{2, 10}}));
  CHECK(L.pivot_product() == 10);
}

TEST_CASE("Hermite form is canonical under generator changes", "[lattice]") {
  std::mt19937 gen(77);
  for (int trial = 0; trial < 30; ++trial) {
    auto rows = random_span(gen, 6, 8);
    auto h1 = hnf_rows(rows);
    auto scrambled = rows;
    scramble(gen, scrambled);
    CHECK(hnf_rows(scrambled) == h1);
    // idempotence: the form is its own Hermite form
    CHECK(hnf_rows(h1) == h1);
    // shape: positive pivots, strictly increasing pivot columns, entries
    // above each pivot already reduced into [0, pivot)
    std::map<std::uint32_t, BigInt> piv;
    for (const auto& r : h1) {
      REQUIRE(!r.is_zero());
      CHECK(r.lead_coeff() > 0);
      piv[r.lead_pos()] = r.lead_coeff();
    }
    for (const auto& r : h1)
      for (const auto& [c, val] : r.entries) {
        if (c == r.lead_pos()) continue;
        auto it = piv.find(c);
        if (it != piv.end()) {
          CHECK(val >= 0);
          CHECK(val < it->second);
        }
      }
  }
}

TEST_CASE("rational echelon is scaling independent", "[lattice]") {
  std::mt19937 gen(78);
  std::uniform_int_distribution<int> num(1, 5);
  for (int trial = 0; trial < 30; ++trial) {
    auto rows = random_span(gen, 5, 7);
    QSpanEchelon E1;
    for (const auto& v : rows) E1.add(v);
    E1.finalize_canonical();

    // feed the same rows scaled by random positive rationals
    QSpanEchelon E2;
    for (const auto& v : rows) {
      SparseVec<RatRing> w;
      BigRat s(num(gen), num(gen));
      for (const auto& [i, c] : v.entries) w.entries.emplace_back(i, s * BigRat(c));
      E2.add_rat(w);
    }
    E2.finalize_canonical();
    CHECK(E1.rows() == E2.rows());
    CHECK(E1.rank() == E2.rank());

    // canonical rows: primitive, positive lead, zero at other pivot columns
    std::vector<std::uint32_t> pivots;
    for (const auto& r : E1.rows()) pivots.push_back(r.lead_pos());
    for (const auto& r : E1.rows()) {
      CHECK(r.lead_coeff() > 0);
      BigInt g = 0;
      for (const auto& [i, c] : r.entries) g = abs(gcd(g, c));
      CHECK(g == 1);
      for (const auto& [i, c] : r.entries)
        if (i != r.lead_pos())
          CHECK(std::find(pivots.begin(), pivots.end(), i) == pivots.end());
    }

    // the integer lattice rank agrees with the rational rank
    ZLattice L;
    for (const auto& v : rows) L.add(v);
    CHECK(L.rank() == E1.rank());
  }
}

TEST_CASE("prime field echelon reduces to monic rref", "[lattice]") {
  ModRing F7(7);
  std::mt19937 gen(79);
  for (int trial = 0; trial < 20; ++trial) {
    ModEchelon E(F7);
    auto rows = random_span(gen, 5, 7);
    for (const auto& v : rows) {
      SparseVec<ModRing> w;
      for (const auto& [i, c] : v.entries) {
        auto m = F7.from_bigint(c);
        if (m != 0) w.entries.emplace_back(i, m);
      }
      E.add(w);
    }
    E.finalize_canonical();
    std::vector<std::uint32_t> pivots;
    for (const auto& r : E.rows()) pivots.push_back(r.lead_pos());
    for (const auto& r : E.rows()) {
      CHECK(r.lead_coeff() == 1);
      for (const auto& [i, c] : r.entries)
        if (i != r.lead_pos())
          CHECK(std::find(pivots.begin(), pivots.end(), i) == pivots.end());
    }
  }
}

TEST_CASE("rank facts", "[lattice]") {
  auto v = ivec({{0, 1}, {2, -3}});
  auto v2 = v;
  scale_in_place(Z, v2, BigInt(2));
  CHECK(rank_of(Z, {v, v2}) == 1);
  CHECK(rank_of(Z, {}) == 0);

  // the 120 degree-5 permutation brackets span a 24-dimensional space
  auto b5 = component_basis(multilinear(5));
  auto t5q = component_span(Q, "T5", multilinear(5), b5);
  REQUIRE(t5q.size() == 120);
  CHECK(rank_of(Q, t5q) == 24);
  auto t5z = component_span(Z, "T5", multilinear(5), b5);
  CHECK(rank_of(Z, t5z) == 24);
}

TEST_CASE("smith normal form invariants", "[lattice]") {
  auto s = smith_normal_form({{BigInt(2), BigInt(0)}, {BigInt(0), BigInt(3)}});
  REQUIRE(s.size() == 2);
  CHECK(s[0] == 1);
  CHECK(s[1] == 6);

  auto s2 = smith_normal_form({{BigInt(4), BigInt(2)}, {BigInt(2), BigInt(4)}});
  REQUIRE(s2.size() == 2);
  CHECK(s2[0] == 2);
  CHECK(s2[1] == 6);

  CHECK(smith_normal_form({{BigInt(0), BigInt(0)}}).empty());

  // the invariant factor product is the gcd of maximal minors, which for a
  // non-square matrix is generally smaller than the Hermite pivot product:
  // span{(2,1)} has Smith form {1} but Hermite pivot 2
  auto s3 = smith_normal_form({{BigInt(2), BigInt(1)}});
  REQUIRE(s3.size() == 1);
  CHECK(s3[0] == 1);
  {
    ZLattice L;
    L.add(ivec({{0, 2}, {1, 1}}));
    CHECK(L.pivot_product() == 2);
  }

  std::mt19937 gen(80);
  std::uniform_int_distribution<int> coeff(-6, 6);
  int square_checked = 0;
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<std::vector<BigInt>> m(4, std::vector<BigInt>(5));
    for (auto& row : m)
      for (auto& e : row) e = coeff(gen);
    auto inv = smith_normal_form(m);
    for (std::size_t i = 0; i + 1 < inv.size(); ++i) {
      CHECK(inv[i] > 0);
      CHECK(inv[i + 1] % inv[i] == 0);
    }

    // on a square nonsingular matrix both the invariant factor product and
    // the Hermite pivot product equal |det|
    std::vector<std::vector<BigInt>> sq(4, std::vector<BigInt>(4));
    std::vector<SparseVec<IntRing>> rows;
    for (auto& row : sq) {
      SparseVec<IntRing> r;
      for (std::uint32_t j = 0; j < 4; ++j) {
        row[j] = coeff(gen);
        if (row[j] != 0) r.entries.emplace_back(j, row[j]);
      }
      rows.push_back(std::move(r));
    }
    ZLattice L;
    for (const auto& r : rows) L.add(r);
    if (L.rank() < 4) continue;
    ++square_checked;
    auto sinv = smith_normal_form(sq);
    BigInt prod = 1;
    for (const auto& d : sinv) prod *= d;
    CHECK(prod == L.pivot_product());
  }
  CHECK(square_checked >= 30);
}

TEST_CASE("pivot products measure sublattice index", "[lattice]") {
  // L = {2e0, 2e1}, t = e0 + e1: index of L inside L + Zt is 2
  std::vector<SparseVec<IntRing>> span{ivec({{0, 2}}), ivec({{1, 2}})};
  auto t = ivec({{0, 1}, {1, 1}});
  auto res = lattice_membership(span, t);
  CHECK(res.verdict == Verdict::TORSION);
  CHECK(res.torsion_index == 2);

  ZLattice L, Lt;
  for (const auto& v : span) L.add(v), Lt.add(v);
  Lt.add(t);
  REQUIRE(L.rank() == Lt.rank());
  CHECK(L.pivot_product() / Lt.pivot_product() == 2);

  // the same index appears as a ratio of Smith invariant products
  auto s_l = smith_normal_form({{BigInt(2), BigInt(0)}, {BigInt(0), BigInt(2)}});
  auto s_lt = smith_normal_form(
      {{BigInt(2), BigInt(0)}, {BigInt(0), BigInt(2)}, {BigInt(1), BigInt(1)}});
  BigInt pl = 1, plt = 1;
  for (const auto& d : s_l) pl *= d;
  for (const auto& d : s_lt) plt *= d;
  CHECK(pl / plt == 2);
}

TEST_CASE("echelon files reload bit exactly", "[lattice]") {
  std::mt19937 gen(81);
  auto rows = hnf_rows(random_span(gen, 6, 9));
  const std::string path = "test_lattice_z.mat";
  save_rows(path, Z, rows, 9);
  std::size_t ncols = 0;
  CHECK(load_rows(path, Z, ncols) == rows);
  CHECK(ncols == 9);
  CHECK_THROWS_WITH(load_rows(path, Q, ncols), Catch::Matchers::ContainsSubstring("ring"));

  QSpanEchelon E(true);
  for (const auto& r : rows) E.add(r);
  std::vector<SparseVec<RatRing>> qrows;
  for (const auto& r : rows) {
    SparseVec<RatRing> w;
    for (const auto& [i, c] : r.entries) w.entries.emplace_back(i, BigRat(c, BigInt(3)));
    qrows.push_back(std::move(w));
  }
  const std::string qpath = "test_lattice_q.mat";
  save_rows(qpath, Q, qrows, 9);
  CHECK(load_rows(qpath, Q, ncols) == qrows);

  ModRing F5(5);
  std::vector<SparseVec<ModRing>> mrows;
  for (const auto& r : rows) {
    SparseVec<ModRing> w;
    for (const auto& [i, c] : r.entries) {
      auto m = F5.from_bigint(c);
      if (m != 0) w.entries.emplace_back(i, m);
    }
    mrows.push_back(std::move(w));
  }
  const std::string mpath = "test_lattice_f5.mat";
  save_rows(mpath, F5, mrows, 9);
  CHECK(load_rows(mpath, F5, ncols) == mrows);

  {
    std::ofstream bad("test_lattice_bad.mat");
    bad << "something-else Z 1 1\n0 0 1\n";
  }
  CHECK_THROWS_WITH(load_rows("test_lattice_bad.mat", Z, ncols),
                    Catch::Matchers::ContainsSubstring("not an echelon file"));
  std::remove(path.c_str());
  std::remove(qpath.c_str());
  std::remove(mpath.c_str());
  std::remove("test_lattice_bad.mat");
}

TEST_CASE("verdicts ignore span order", "[lattice]") {
  std::mt19937 gen(82);
  for (int trial = 0; trial < 15; ++trial) {
    auto rows = random_span(gen, 6, 8);
    auto target = random_ivec(gen, 8);
    auto base = lattice_membership(rows, target, false);
    for (int s = 0; s < 4; ++s) {
      auto shuffled = rows;
      std::shuffle(shuffled.begin(), shuffled.end(), gen);
      auto r = lattice_membership(shuffled, target, false);
      CHECK(r.verdict == base.verdict);
      CHECK(r.torsion_index == base.torsion_index);
      CHECK(hnf_rows(shuffled) == hnf_rows(rows));
    }
  }
}
