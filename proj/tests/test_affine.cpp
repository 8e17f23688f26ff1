#include "endo/affine.hpp"
#include "matrix.hpp"

#include <gtest/gtest.h>

using namespace endo;

namespace {

RestrictedRootSystem folded(std::vector<ComponentSpec> comps, Perm theta = {}) {
  return fold(build_based_root_datum({comps, theta}));
}

AffineWeylElement translation(const QVec& t) {
  auto v = AffineWeylElement::identity(t.size());
  v.translation = t;
  return v;
}

}  // namespace

TEST(Affine, ReduceA1NegativePoint) {
  auto sys = folded({{'A', 1}});
  auto red = alcove_reduce(sys, {Rational(-3, 4)});
  EXPECT_EQ(red.point.x, (QVec{Rational(3, 4)}));
  EXPECT_EQ(red.v(QVec{Rational(-3, 4)}), red.point.x);
  EXPECT_EQ(red.word.size(), 1u);
}

TEST(Affine, ReduceFixesAlcovePoints) {
  auto sys = folded({{'B', 3}});
  QVec x = sys.interior_point();
  auto red = alcove_reduce(sys, x);
  EXPECT_TRUE(red.v.is_identity());
  EXPECT_EQ(red.point.x, x);
}

TEST(Affine, ReduceTranslateReturnsRepresentative) {
  for (const auto& tc : fixtures::type_matrix()) {
    auto sys = fold(build_based_root_datum(tc.spec));
    QVec x = sys.interior_point();
    auto basis = translation_lattice(sys).basis();
    QVec shifted = x;
    for (std::size_t k = 0; k < basis.size(); ++k) shifted = shifted + Rational(static_cast<int>(k) - 1) * basis[k];
    auto red = alcove_reduce(sys, shifted);
    EXPECT_TRUE(in_waff(sys, red.v)) << tc.name;
    // interior points have a unique representative up to Omega
    bool same = red.point.x == x;
    for (const auto& w : compute_omega_group(sys)) same = same || w.map(red.point.x) == x;
    EXPECT_TRUE(same) << tc.name;
  }
}

TEST(Affine, LocalStabilizers) {
  auto a1 = folded({{'A', 1}});
  auto interior = alcove_point(a1, a1.interior_point());
  EXPECT_TRUE(interior.interior());
  EXPECT_EQ(local_weyl_group(a1, interior).size(), 1u);
  EXPECT_EQ(alcoves_containing(a1, interior).size(), 1u);

  auto vertex = alcove_point(a1, {0});
  EXPECT_EQ(vertex.S(), (std::vector<std::size_t>{1}));
  EXPECT_EQ(alcoves_containing(a1, vertex).size(), 2u);

  auto bc1 = folded({{'A', 2}}, {1, 0});
  auto wall = alcove_point(bc1, {0});
  EXPECT_EQ(local_weyl_group(bc1, wall).size(), 2u);
  auto st = local_stabilizer(bc1, wall);
  EXPECT_EQ(st.S.size(), 1u);
  EXPECT_EQ(st.generators.size(), 1u);
}

TEST(Affine, VertexStabilizerIsComplementOfNode) {
  auto sys = folded({{'C', 3}});
  for (std::size_t i = 0; i < sys.affine.size(); ++i) {
    auto p = alcove_point(sys, sys.affine[i].vertex);
    std::vector<std::size_t> expect;
    for (std::size_t j = 0; j < sys.affine.size(); ++j)
      if (j != i) expect.push_back(j);
    EXPECT_EQ(p.S(), expect);
  }
}

TEST(Affine, GenericWallPointLiesInTwoAlcoves) {
  auto sys = folded({{'A', 2}});
  QVec kac{Rational(1, 2), Rational(1, 2), 0};
  auto p = alcove_point_from_kac(sys, kac);
  EXPECT_EQ(alcoves_containing(sys, p).size(), 2u);
  EXPECT_FALSE(span_violation(sys, p).has_value());
}

TEST(Affine, OmegaOrdersMatchFundamentalGroups) {
  // |pi_1| of the adjoint group: A_n -> n+1, B,C -> 2, D4 -> 4, G2 -> 1
  EXPECT_EQ(compute_omega_group(folded({{'A', 1}})).size(), 2u);
  EXPECT_EQ(compute_omega_group(folded({{'A', 2}})).size(), 3u);
  EXPECT_EQ(compute_omega_group(folded({{'A', 3}})).size(), 4u);
  EXPECT_EQ(compute_omega_group(folded({{'A', 4}})).size(), 5u);
  EXPECT_EQ(compute_omega_group(folded({{'B', 3}})).size(), 2u);
  EXPECT_EQ(compute_omega_group(folded({{'C', 3}})).size(), 2u);
  EXPECT_EQ(compute_omega_group(folded({{'D', 4}})).size(), 4u);
  EXPECT_EQ(compute_omega_group(folded({{'G', 2}})).size(), 1u);
  EXPECT_EQ(compute_omega_group(folded({{'A', 1}, {'A', 1}})).size(), 4u);
}

TEST(Affine, TwistedOmegaHasAtMostTwoElements) {
  EXPECT_EQ(compute_omega_group(folded({{'A', 2}}, {1, 0})).size(), 1u);
  EXPECT_EQ(compute_omega_group(folded({{'A', 3}}, {2, 1, 0})).size(), 2u);
  EXPECT_EQ(compute_omega_group(folded({{'A', 4}}, {3, 2, 1, 0})).size(), 1u);
  EXPECT_EQ(compute_omega_group(folded({{'D', 4}}, {0, 1, 3, 2})).size(), 2u);
  EXPECT_EQ(compute_omega_group(folded({{'D', 4}}, {2, 1, 3, 0})).size(), 1u);
}

TEST(Affine, OmegaOrderEqualsTranslationIndex) {
  for (const auto& tc : fixtures::type_matrix()) {
    auto sys = fold(build_based_root_datum(tc.spec));
    EXPECT_EQ(Integer(compute_omega_group(sys).size()), translation_index(sys)) << tc.name;
  }
}

TEST(Affine, OmegaStabilizesTheAlcove) {
  for (const auto& tc : fixtures::type_matrix()) {
    auto sys = fold(build_based_root_datum(tc.spec));
    QVec c = sys.interior_point();
    for (const auto& w : compute_omega_group(sys)) {
      EXPECT_TRUE(in_closed_alcove(sys, w.map(c))) << tc.name;
      EXPECT_EQ(node_permutation(sys, w.map), w.node_perm) << tc.name;
    }
  }
}

TEST(Affine, DecomposeExamples) {
  auto sys = folded({{'A', 1}});
  auto omega = compute_omega_group(sys);
  auto d = decompose(sys, omega, omega[1].map);
  EXPECT_TRUE(d.v_sc.is_identity());
  EXPECT_EQ(d.omega, 1u);

  auto s = node_reflection(sys, 0);
  d = decompose(sys, omega, s);
  EXPECT_EQ(d.v_sc, s);
  EXPECT_EQ(d.omega, 0u);

  d = decompose(sys, omega, translation({1}));
  EXPECT_NE(d.omega, 0u);
  EXPECT_EQ(d.v_sc * omega[d.omega].map, translation({1}));

  d = decompose(sys, omega, translation({2}));
  EXPECT_EQ(d.omega, 0u);
}

TEST(Affine, DecomposeRejectsForeignMaps) {
  auto sys = folded({{'A', 3}}, {2, 1, 0});
  auto omega = compute_omega_group(sys);
  try {
    decompose(sys, omega, translation({Rational(1, 4), 0}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotInWaff);
  }
}

TEST(Affine, ReflectionsFixTheirWall) {
  for (const auto& tc : fixtures::type_matrix()) {
    auto sys = fold(build_based_root_datum(tc.spec));
    for (std::size_t i = 0; i < sys.affine.size(); ++i) {
      auto s = node_reflection(sys, i);
      EXPECT_TRUE((s * s).is_identity()) << tc.name;
      for (std::size_t j = 0; j < sys.affine.size(); ++j)
        if (j != i && sys.affine[j].component == sys.affine[i].component)
          EXPECT_EQ(s(sys.affine[j].vertex), sys.affine[j].vertex) << tc.name;
    }
  }
}
