#include "subadm/sampling.hpp"

#include <gtest/gtest.h>

using namespace subadm;

namespace {

struct Lv {
  const char* type;
  int p, u;
  std::size_t mu;
};

void PrintTo(const Lv& l, std::ostream* os) { *os << l.type << " p=" << l.p << " u=" << l.u; }

std::vector<EvalPoint> modular_points(const RootSystem& rs) {
  return {{cd(0, 1.1), to_complex(seeded_z(rs, 7).z), cd(0)}, {cd(0.3, 1.2), to_complex(seeded_z(rs, 8).z), cd(0)}};
}

std::string lv_name(const ::testing::TestParamInfo<Lv>& info) {
  return std::string(info.param.type) + "_p" + std::to_string(info.param.p) + "_u" + std::to_string(info.param.u);
}

}  // namespace

class SLevels : public ::testing::TestWithParam<Lv> {};

TEST_P(SLevels, TripleCounts) {
  const auto& L = GetParam();
  RootSystem rs(LieType::parse(L.type));
  auto lv = classify_level(rs, L.p, L.u);
  auto ts = build_triple_sets(rs, lv);
  const std::size_t cosets = CoweightCosets(rs, L.u, Lattice::Q).size();
  EXPECT_EQ(ts.triples.size(), ts.points.size() * cosets * rs.weyl_order());
  // regular triples cover every weight once per Weyl element
  EXPECT_EQ(ts.regular_count(), enumerate_all(rs, lv).size() * rs.weyl_order());
  // regular chamber points are exactly rho + the quasidominant shifts
  std::size_t reg = std::count(ts.point_regular.begin(), ts.point_regular.end(), true);
  EXPECT_EQ(reg, enumerate_quasidominant(rs, lv).size());
}

TEST_P(SLevels, SingularSumsVanish) {
  const auto& L = GetParam();
  RootSystem rs(LieType::parse(L.type));
  auto lv = classify_level(rs, L.p, L.u);
  auto ts = build_triple_sets(rs, lv);
  for (std::size_t j = 0; j < ts.points.size(); ++j) {
    if (ts.point_regular[j]) continue;
    for (const auto& v : ts.points) EXPECT_LT(std::abs(singular_sum(rs, lv, v, ts.points[j])), 1e-10);
    // also for weights off the chamber
    for (const auto& w : rs.fundamental_weights())
      EXPECT_LT(std::abs(singular_sum(rs, lv, Rat(3) * w - rs.rho(), ts.points[j])), 1e-10);
  }
}

TEST_P(SLevels, MatrixStructure) {
  const auto& L = GetParam();
  RootSystem rs(LieType::parse(L.type));
  auto lv = classify_level(rs, L.p, L.u);
  auto s = build_smatrix(rs, lv);
  EXPECT_EQ(s.constant.fibre, L.mu);
  for (std::size_t i = 0; i < s.order(); ++i)
    for (std::size_t j = 0; j < s.order(); ++j) EXPECT_LT(std::abs(s(i, j) - s(j, i)), 1e-13);
  // weights that agree modulo C delta give equal rows; the rank counts the classes
  EXPECT_EQ(numeric_rank(s), distinct_mod_delta(s.weights));
  // |Y| = (up)^l det Gram(Q)
  Rat y = det(rs.gram());
  for (int i = 0; i < rs.rank(); ++i) y *= Rat(L.u * L.p);
  EXPECT_EQ(s.constant.y_size, y);
  EXPECT_THROW(s_entry(s, rs, s.order(), 0), Error);
}

TEST_P(SLevels, TransformationHolds) {
  const auto& L = GetParam();
  RootSystem rs(LieType::parse(L.type));
  auto lv = classify_level(rs, L.p, L.u);
  ModularOptions o;
  o.s_squared = true;
  auto rep = verify_modular_transform(rs, lv, modular_points(rs), o);
  EXPECT_LT(rep.max_residual, 1e-6);
  EXPECT_LT(rep.s_squared_residual, 1e-6);
}

INSTANTIATE_TEST_SUITE_P(Levels, SLevels,
                         ::testing::Values(Lv{"C2", 5, 2, 2}, Lv{"C2", 5, 4, 2}, Lv{"G2", 7, 3, 1}, Lv{"B3", 7, 2, 2}),
                         lv_name);

TEST(SMatrix, SingularForRTwoInvertibleForG2) {
  RootSystem c2(LieType::parse("C2")), g2(LieType::parse("G2"));
  auto sc = build_smatrix(c2, classify_level(c2, 5, 2));
  auto sg = build_smatrix(g2, classify_level(g2, 7, 3));
  EXPECT_EQ(distinct_mod_delta(sc.weights), 4u);
  EXPECT_EQ(sc.order(), 8u);
  EXPECT_GT(condition_number_1(sc), 1e12);
  EXPECT_NEAR(condition_number_1(sg), 3.0, 1e-9);
}

TEST(SMatrix, AlternativeConstant) {
  // agrees with the verified constant for C2 at p=5, u=2 but not for G2
  RootSystem c2(LieType::parse("C2")), g2(LieType::parse("G2"));
  auto lc = classify_level(c2, 5, 2);
  auto lg = classify_level(g2, 7, 3);
  auto wc = enumerate_all(c2, lc);
  auto wg = enumerate_all(g2, lg);
  EXPECT_NEAR(smatrix_constant(c2, lc, wc, Normalization::kAlternate).value,
              smatrix_constant(c2, lc, wc, Normalization::kVerified).value, 1e-15);
  ModularOptions o;
  o.normalization = Normalization::kAlternate;
  auto rep = verify_modular_transform(g2, lg, modular_points(g2), o);
  EXPECT_GT(rep.max_residual, 0.1);
}

TEST(SMatrix, ResidualShrinksWithTolerance) {
  RootSystem rs(LieType::parse("G2"));
  auto lv = classify_level(rs, 7, 3);
  ModularOptions loose, tight;
  loose.tol = 1e-2;
  tight.tol = 1e-13;
  auto pts = modular_points(rs);
  double a = verify_modular_transform(rs, lv, pts, loose).max_residual;
  double b = verify_modular_transform(rs, lv, pts, tight).max_residual;
  EXPECT_LE(b, a + 1e-14);
  EXPECT_LT(b, 1e-10);
}

TEST(SMatrix, DegeneratePointRejected) {
  RootSystem rs(LieType::parse("C2"));
  auto lv = classify_level(rs, 5, 2);
  std::vector<EvalPoint> pts{{cd(0, 1.1), {cd(0.25), cd(0.25)}, cd(0)}};
  try {
    verify_modular_transform(rs, lv, pts);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DegeneratePoint);
  }
}

TEST(SMatrix, ThreadCountDoesNotChangeEntries) {
  RootSystem rs(LieType::parse("C2"));
  auto lv = classify_level(rs, 5, 4);
  auto a = build_smatrix(rs, lv, Normalization::kVerified, 1);
  auto b = build_smatrix(rs, lv, Normalization::kVerified, 3);
  EXPECT_EQ(a.entries, b.entries);
}
