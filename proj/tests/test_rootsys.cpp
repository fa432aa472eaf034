#include "subadm/rootsys.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace subadm;

namespace {

struct Known {
  const char* name;
  int h, hv, dim;
  std::size_t weyl;
  int positive;
};

// standard tables
const Known kKnown[] = {
    {"B2", 4, 3, 10, 8, 4},        {"B3", 6, 5, 21, 48, 9},      {"B4", 8, 7, 36, 384, 16},
    {"C2", 4, 3, 10, 8, 4},        {"C3", 6, 4, 21, 48, 9},      {"C4", 8, 5, 36, 384, 16},
    {"G2", 6, 4, 14, 12, 6},       {"F4", 12, 9, 52, 1152, 24},
};

}  // namespace

class RootTable : public ::testing::TestWithParam<Known> {};

TEST_P(RootTable, Constants) {
  const auto& k = GetParam();
  RootSystem rs(LieType::parse(k.name));
  EXPECT_EQ(rs.h(), k.h);
  EXPECT_EQ(rs.h_dual(), k.hv);
  EXPECT_EQ(rs.dim(), k.dim);
  EXPECT_EQ(rs.weyl_order(), k.weyl);
  EXPECT_EQ(static_cast<int>(rs.positive_roots().size()), k.positive);
  // |roots| = h * rank
  EXPECT_EQ(static_cast<int>(rs.roots().size()), rs.h() * rs.rank());
}

TEST_P(RootTable, Normalization) {
  RootSystem rs(LieType::parse(GetParam().name));
  EXPECT_EQ(rs.norm2(rs.theta()), 2);
  EXPECT_EQ(rs.norm2(rs.theta_s()) * Rat(rs.r_v()), 2);
  // h^v = 1 + sum of the coefficients of theta^v in the simple coroots
  QVec tv = rs.coroot(rs.theta());
  Rat s(1);
  for (const auto& w : rs.fundamental_weights()) s += rs.pairing(w, tv);
  EXPECT_EQ(s, rs.h_dual());
  // h = 1 + height of theta
  Rat ht(1);
  for (const auto& c : rs.simple_coords(rs.theta())) ht += c;
  EXPECT_EQ(ht, rs.h());
}

TEST_P(RootTable, WeightsAndRho) {
  RootSystem rs(LieType::parse(GetParam().name));
  const int l = rs.rank();
  for (int i = 0; i < l; ++i)
    for (int j = 0; j < l; ++j) {
      EXPECT_EQ(rs.pairing(rs.fundamental_weights()[i], rs.simple_coroots()[j]), i == j ? 1 : 0);
      EXPECT_EQ(rs.pairing(rs.fundamental_coweights()[i], rs.simple_roots()[j]), i == j ? 1 : 0);
    }
  QVec half = zeros(rs.ambient_dim()), fsum = zeros(rs.ambient_dim());
  for (const auto& a : rs.positive_roots()) half = half + Rat(1, 2) * a;
  for (const auto& w : rs.fundamental_weights()) fsum = fsum + w;
  EXPECT_EQ(half, rs.rho());
  EXPECT_EQ(fsum, rs.rho());
  QVec hv = zeros(rs.ambient_dim());
  for (const auto& a : rs.positive_roots()) hv = hv + Rat(1, 2) * rs.coroot(a);
  EXPECT_EQ(hv, rs.rho_v());
}

TEST_P(RootTable, WeylGroup) {
  RootSystem rs(LieType::parse(GetParam().name));
  EXPECT_EQ(rs.identity_index(), 0u);
  EXPECT_EQ(rs.apply(0, rs.rho()), rs.rho());
  // rho is regular: its orbit has |W| elements
  EXPECT_EQ(rs.weyl_orbit(rs.rho()).size(), rs.weyl_order());
  for (std::size_t w = 0; w < rs.weyl_order(); w += std::max<std::size_t>(1, rs.weyl_order() / 40)) {
    EXPECT_EQ(Rat(rs.sign(w)), det(rs.weyl()[w].mat));
    EXPECT_EQ(rs.compose(w, rs.inverse(w)), rs.identity_index());
    for (const auto& a : rs.simple_roots())
      for (const auto& b : rs.positive_roots()) EXPECT_EQ(rs.pairing(rs.apply(w, a), rs.apply(w, b)), rs.pairing(a, b));
  }
  // every root is a Weyl image of a simple root and reflections permute roots
  std::set<QVec, QVecLess> roots(rs.roots().begin(), rs.roots().end());
  for (const auto& a : rs.simple_roots())
    for (const auto& b : rs.roots()) EXPECT_TRUE(roots.count(rs.reflect(a, b)));
}

INSTANTIATE_TEST_SUITE_P(Types, RootTable, ::testing::ValuesIn(kKnown),
                         [](const auto& info) { return std::string(info.param.name); });

TEST(RootSystem, LongAndShort) {
  RootSystem c2(LieType::parse("C2"));
  int longs = 0;
  for (const auto& a : c2.positive_roots()) longs += c2.is_long(a);
  EXPECT_EQ(longs, 2);
  RootSystem g2(LieType::parse("G2"));
  EXPECT_EQ(g2.r_v(), 3);
  EXPECT_FALSE(g2.is_long(g2.theta_s()));
}

TEST(RootSystem, LatticeIndices) {
  RootSystem rs(LieType::parse("C2"));
  // P^v / Q^v has order |center of the dual group| = 2 for C2
  EXPECT_EQ(lattice_index(rs.basis(Lattice::Pv), rs.basis(Lattice::Qv)), 2);
  EXPECT_EQ(lattice_index(rs.basis(Lattice::Q), rs.basis(Lattice::rQ)), 4);
}

TEST(RootSystem, RejectsUnsupported) {
  EXPECT_THROW(LieType::parse("A3"), Error);
  EXPECT_THROW(LieType::parse("E8"), Error);
  EXPECT_THROW(LieType::parse("C7"), Error);
  EXPECT_THROW(LieType::parse("B1"), Error);
  EXPECT_THROW(LieType::parse("G3"), Error);
  try {
    LieType::parse("D4");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::UnsupportedType);
  }
}

TEST(RootSystem, ParseForms) {
  EXPECT_EQ(LieType::parse("C", 3).rank, 3);
  EXPECT_EQ(LieType::parse("G").rank, 2);
  EXPECT_EQ(LieType::parse("f").rank, 4);
}
