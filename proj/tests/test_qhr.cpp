#include "subadm/qhr.hpp"
#include "subadm/sampling.hpp"

#include <gtest/gtest.h>

using namespace subadm;

namespace {

struct Lv {
  const char* type;
  int p, u;
};

void PrintTo(const Lv& l, std::ostream* os) { *os << l.type << " p=" << l.p << " u=" << l.u; }

std::string lv_name(const ::testing::TestParamInfo<Lv>& info) {
  return std::string(info.param.type) + "_p" + std::to_string(info.param.p) + "_u" + std::to_string(info.param.u);
}

}  // namespace

class QhrLevels : public ::testing::TestWithParam<Lv> {};

TEST_P(QhrLevels, RoutesAgreeAndVanishingMatches) {
  const auto& L = GetParam();
  RootSystem rs(LieType::parse(L.type));
  auto lv = classify_level(rs, L.p, L.u);
  for (auto nd : {nilpotent_minimal(rs), nilpotent_principal(rs)}) {
    auto vc = vanishing_criterion(rs, lv, nd);
    EXPECT_TRUE(vc.consistent) << nd.name;
    double biggest = 0;
    for (const auto& w : enumerate_quasidominant(rs, lv))
      for (int s = 0; s < 2; ++s) {
        CVec z = centralizer_point(rs, nd, seeded_z(rs, 7 + s).z);
        auto v = qhr_evaluate(rs, lv, w, nd, cd(0.15 * s, 1.2 - 0.15 * s), z);
        EXPECT_LT(v.rel_diff, 1e-6) << nd.name << " weight " << w.index;
        biggest = std::max(biggest, std::abs(v.direct));
      }
    if (vc.vanishes)
      EXPECT_LT(biggest, 1e-8) << nd.name;
    else
      EXPECT_GT(biggest, 1e-3) << nd.name;
  }
}

INSTANTIATE_TEST_SUITE_P(Levels, QhrLevels,
                         ::testing::Values(Lv{"C2", 5, 2}, Lv{"C2", 5, 6}, Lv{"G2", 7, 3}, Lv{"B3", 7, 2}), lv_name);

TEST(Qhr, CriteriaAgreeOnCustomGradings) {
  RootSystem rs(LieType::parse("C3"));
  const Rat h(1, 2);
  std::vector<std::vector<Rat>> labels{{0, 0, 1}, {1, 0, 0}, {h, 0, 0}, {0, h, 0}, {1, 1, 1}, {1, 0, 1}, {0, 1, 0}};
  for (int u : {2, 4, 6})
    for (int p : {7, 11}) {
      auto lv = classify_level(rs, p, u);
      if (lv.kind != LevelKind::kSubprincipal) continue;
      for (const auto& l : labels) {
        NilpotentData nd;
        try {
          nd = nilpotent_from_labels(rs, l);
        } catch (const Error&) {
          continue;
        }
        EXPECT_TRUE(vanishing_criterion(rs, lv, nd).consistent) << "u=" << u;
      }
    }
}

TEST(Qhr, TrivialReductionIsOne) {
  // principal reduction at C2, k = 5/6 - 3 gives the trivial W-algebra
  RootSystem rs(LieType::parse("C2"));
  auto lv = classify_level(rs, 5, 6);
  auto nd = nilpotent_principal(rs);
  auto w = enumerate_quasidominant(rs, lv).front();
  for (cd tau : {cd(0, 1.0), cd(0.3, 0.8)}) {
    auto v = qhr_evaluate(rs, lv, w, nd, tau, centralizer_point(rs, nd, seeded_z(rs, 1).z));
    EXPECT_NEAR(std::abs(v.direct - 1.0), 0, 1e-9);
    EXPECT_NEAR(std::abs(v.factored - 1.0), 0, 1e-9);
  }
}

TEST(Qhr, AgreementAcrossImaginaryParts) {
  // a wrong q-power in the factored route would show up as a y-dependent ratio
  RootSystem rs(LieType::parse("C2"));
  auto lv = classify_level(rs, 5, 2);
  auto nd = nilpotent_minimal(rs);
  CVec z = centralizer_point(rs, nd, seeded_z(rs, 3).z);
  for (const auto& w : enumerate_quasidominant(rs, lv))
    for (double y : {0.7, 1.5, 2.5}) EXPECT_LT(qhr_evaluate(rs, lv, w, nd, cd(0.1, y), z).rel_diff, 1e-6) << y;
  const Rat d = qhr_exponent(rs, lv, nd, ExponentForm::kAlternate) - qhr_exponent(rs, lv, nd);
  EXPECT_NE(d, 0);
  EXPECT_GT(std::abs(1.0 - std::exp(-kTwoPi * 1.5 * to_double(d))), 1e-2);
}

TEST(Qhr, CentralizerPoint) {
  RootSystem rs(LieType::parse("B3"));
  auto nd = nilpotent_minimal(rs);
  CVec z = centralizer_point(rs, nd, seeded_z(rs, 5).z);
  EXPECT_NEAR(std::abs(rs.pairing(to_double(nd.x), z)), 0, 1e-14);
  auto pr = nilpotent_principal(rs);
  for (auto c : centralizer_point(rs, pr, seeded_z(rs, 5).z)) EXPECT_EQ(c, cd(0));
}

TEST(Qhr, Gradings) {
  RootSystem rs(LieType::parse("C2"));
  auto mn = nilpotent_minimal(rs);
  EXPECT_EQ(rs.pairing(rs.theta(), mn.x), 1);
  auto pr = nilpotent_principal(rs);
  EXPECT_EQ(pr.dim_g0, rs.rank());
  EXPECT_EQ(pr.dim_ghalf, 0);
  for (const auto& a : rs.simple_roots()) EXPECT_EQ(rs.pairing(a, pr.x), 1);
  EXPECT_THROW(make_nilpotent(rs, zeros(2)), Error);
  EXPECT_THROW(nilpotent_from_labels(rs, {Rat(2), Rat(0)}), Error);
  EXPECT_THROW(nilpotent_from_labels(rs, {Rat(1)}), Error);
  EXPECT_THROW(make_nilpotent(rs, Rat(-1) * rs.rho_v()), Error);
}
