#include "endo/endogroup.hpp"
#include "matrix.hpp"

#include <gtest/gtest.h>

using namespace endo;

namespace {

RestrictedRootSystem folded(std::vector<ComponentSpec> comps, Perm theta = {}) {
  return fold(build_based_root_datum({comps, theta}));
}

std::vector<std::vector<Rational>> rational_cartan(char t, int n) {
  std::vector<std::vector<Rational>> out;
  for (const auto& row : cartan_matrix(t, n)) {
    std::vector<Rational> r;
    for (int v : row) r.push_back(Rational(v));
    out.push_back(r);
  }
  return out;
}

}  // namespace

TEST(Endogroup, SigmaXForA1) {
  auto sys = folded({{'A', 1}});
  EXPECT_EQ(sigma_x(sys, {0}), (std::set<QVec>{{1}, {-1}}));
  EXPECT_TRUE(sigma_x(sys, {Rational(1, 2)}).empty());
}

TEST(Endogroup, SigmaXForBC1) {
  auto sys = folded({{'A', 2}}, {1, 0});
  EXPECT_EQ(sigma_x(sys, {Rational(1, 4)}), (std::set<QVec>{{2}, {-2}}));
  EXPECT_EQ(sigma_x(sys, {0}), (std::set<QVec>{{1}, {-1}}));
}

TEST(Endogroup, OracleAtIdentityKeepsIndivisibleRoots) {
  for (const auto& tc : fixtures::type_matrix()) {
    auto sys = fold(build_based_root_datum(tc.spec));
    auto got = oracle_sigma_from_s(sys, s_from_x(zeros(sys.dim())));
    EXPECT_EQ(got, sys.indivisible_set()) << tc.name;
  }
}

TEST(Endogroup, OracleIncludesDivisibleClassAtHalf) {
  auto sys = folded({{'A', 2}}, {1, 0});
  auto got = oracle_sigma_from_s(sys, s_from_x({Rational(1, 4)}));
  EXPECT_TRUE(got.count({2}));
  EXPECT_FALSE(got.count({1}));
}

TEST(Endogroup, OracleAgreesOnGrid) {
  for (const auto& tc : fixtures::type_matrix()) {
    auto sys = fold(build_based_root_datum(tc.spec));
    if (sys.dim() > 3) continue;
    detail::for_each_torsion_point(sys.dim(), 6, [&](const std::vector<std::int64_t>& a, std::int64_t n) {
      QVec x;
      for (auto v : a) x.push_back(Rational(v, n));
      ASSERT_EQ(sigma_x(sys, x), oracle_sigma_from_s(sys, s_from_x(x))) << tc.name;
    });
  }
}

TEST(Endogroup, TorusCoordinatesModuloCocharacters) {
  QVec x{Rational(1, 3), Rational(-5, 4)};
  EXPECT_EQ(x_from_s(s_from_x(zeros(2))), zeros(2));
  EXPECT_EQ(s_from_x(x), s_from_x(x + QVec{2, -1}));
  EXPECT_NE(s_from_x(x), s_from_x(x + QVec{Rational(1, 2), 0}));
}

TEST(Endogroup, TranslatesByRAgreeOnSigma) {
  auto sys = folded({{'A', 3}}, {2, 1, 0});
  QVec x{Rational(1, 8), Rational(1, 3)};
  QVec r{Rational(1, 2), 0};  // in R, outside X_*
  EXPECT_EQ(sigma_x(sys, x), sigma_x(sys, x + r));
  EXPECT_NE(s_from_x(x), s_from_x(x + r));
}

TEST(Endogroup, LatticeLemma) {
  auto a1 = lattice_lemma_check(folded({{'A', 1}}), 6);
  EXPECT_TRUE(a1.passed);
  EXPECT_EQ(a1.left, 1u);
  auto t3 = lattice_lemma_check(folded({{'A', 3}}, {2, 1, 0}), 4);
  EXPECT_TRUE(t3.passed) << t3.witness;
  EXPECT_EQ(t3.left, 2u);
  EXPECT_EQ(t3.right, 2u);
  auto t2 = lattice_lemma_check(folded({{'A', 2}}, {1, 0}), 4);
  EXPECT_TRUE(t2.passed) << t2.witness;
  EXPECT_EQ(t2.left, 2u);
  auto tri = lattice_lemma_check(folded({{'D', 4}}, {2, 1, 3, 0}), 6);
  EXPECT_TRUE(tri.passed) << tri.witness;
  EXPECT_EQ(tri.left, 3u);
}

TEST(Endogroup, ClassifyCartan) {
  for (auto [t, n] : std::vector<std::pair<char, int>>{{'A', 1}, {'A', 3}, {'B', 3}, {'C', 3}, {'D', 4}, {'G', 2}, {'F', 4}})
    EXPECT_EQ(classify_cartan(rational_cartan(t, n)), std::string(1, t) + std::to_string(n));
  EXPECT_EQ(classify_cartan(rational_cartan('C', 2)), "B2");
  // relabeled A3
  auto a = rational_cartan('A', 3);
  std::vector<std::vector<Rational>> b{{a[1][1], a[1][0], a[1][2]}, {a[0][1], a[0][0], a[0][2]}, {a[2][1], a[2][0], a[2][2]}};
  EXPECT_EQ(classify_cartan(b), "A3");
}

TEST(Endogroup, DataForA1) {
  auto m = trivial_model(folded({{'A', 1}}));
  auto classes = enumerate_torsion(m, 2);
  ASSERT_EQ(classes.size(), 2u);
  for (const auto& c : classes) {
    auto d = endoscopic_datum(m, c);
    if (c.elliptic) {
      EXPECT_EQ(d.type_label(), "A1");
      EXPECT_EQ(d.center_rank, 0u);
    } else {
      EXPECT_EQ(d.type_label(), "T");
      EXPECT_EQ(d.center_rank, 1u);
    }
  }
}

TEST(Endogroup, TwistedA2VerticesGiveA1) {
  auto m = trivial_model(folded({{'A', 2}}, {1, 0}));
  auto classes = enumerate_elliptic(m);
  ASSERT_EQ(classes.size(), 2u);
  for (const auto& c : classes) {
    auto d = endoscopic_datum(m, c);
    EXPECT_EQ(d.type_label(), "A1");
    EXPECT_TRUE(d.elliptic);
    // the datum's roots are those of the oracle at s(x)
    auto sig = oracle_sigma_from_s(m.sys, s_from_x(c.rep.x.x));
    EXPECT_EQ(sig.size(), 2u);
  }
}

TEST(Endogroup, DatumWeylOrderMatchesLocalGroup) {
  for (const auto& tc : fixtures::type_matrix()) {
    auto m = trivial_model(fold(build_based_root_datum(tc.spec)));
    for (const auto& c : enumerate_torsion(m, 2)) {
      auto d = endoscopic_datum(m, c);
      EXPECT_EQ(d.weyl_order, local_weyl_group(m.sys, c.rep.x).size()) << tc.name;
      EXPECT_EQ(d.center_rank, c.i_x - m.i_G) << tc.name;
    }
  }
}

TEST(Endogroup, TwistedA3InvolutionsAreA1xA1AndB2) {
  auto m = trivial_model(folded({{'A', 3}}, {2, 1, 0}));
  std::multiset<std::string> types;
  for (const auto& c : enumerate_torsion(m, 2)) types.insert(endoscopic_datum(m, c).type_label());
  EXPECT_EQ(types, (std::multiset<std::string>{"A1xA1", "B2"}));
}
