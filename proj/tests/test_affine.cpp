#include "subadm/affine.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace subadm;

namespace {

QVec random_weight(const RootSystem& rs, std::mt19937_64& g, int span = 4) {
  QVec c;
  for (int i = 0; i < rs.rank(); ++i) c.emplace_back(static_cast<long long>(g() % (2 * span + 1)) - span);
  return combine(c, rs.fundamental_weights());
}

QVec random_coweight(const RootSystem& rs, std::mt19937_64& g, int span = 3) {
  QVec c;
  for (int i = 0; i < rs.rank(); ++i) c.emplace_back(static_cast<long long>(g() % (2 * span + 1)) - span);
  return combine(c, rs.fundamental_coweights());
}

}  // namespace

class AffineTypes : public ::testing::TestWithParam<const char*> {};

TEST_P(AffineTypes, ActionIsIsometry) {
  RootSystem rs(LieType::parse(GetParam()));
  std::mt19937_64 g(11);
  for (int s = 0; s < 30; ++s) {
    AffineWeight a{Rat(static_cast<long long>(g() % 7), 3), random_weight(rs, g), Rat(static_cast<long long>(g() % 5))};
    AffineWeight b{Rat(static_cast<long long>(g() % 5) + 1, 2), random_weight(rs, g), Rat(-1, 4)};
    ExtendedWeylElement y{random_coweight(rs, g), static_cast<std::size_t>(g() % rs.weyl_order())};
    EXPECT_EQ(pairing(rs, act(rs, y, a), act(rs, y, b)), pairing(rs, a, b));
    // levels are preserved
    EXPECT_EQ(act(rs, y, a).level, a.level);
  }
}

TEST_P(AffineTypes, GroupLaws) {
  RootSystem rs(LieType::parse(GetParam()));
  std::mt19937_64 g(5);
  ExtendedWeylElement e{zeros(rs.ambient_dim()), rs.identity_index()};
  for (int s = 0; s < 20; ++s) {
    ExtendedWeylElement a{random_coweight(rs, g), static_cast<std::size_t>(g() % rs.weyl_order())};
    ExtendedWeylElement b{random_coweight(rs, g), static_cast<std::size_t>(g() % rs.weyl_order())};
    AffineWeight x{Rat(2, 3), random_weight(rs, g), Rat(1, 5)};
    EXPECT_EQ(act(rs, compose(rs, a, b), x), act(rs, a, act(rs, b, x)));
    EXPECT_EQ(compose(rs, a, inverse(rs, a)), e);
    EXPECT_EQ(sign(rs, compose(rs, a, b)), sign(rs, a) * sign(rs, b));
    // coroot action is compatible with the weight action
    AffineCoroot c{rs.simple_coroots()[s % rs.rank()], Rat(s % 3)};
    EXPECT_EQ(pairing(rs, act(rs, a, x), act(rs, a, c)), pairing(rs, x, c));
  }
}

TEST_P(AffineTypes, RhoSharpIsOneOnSimpleCoroots) {
  RootSystem rs(LieType::parse(GetParam()));
  for (int u : {rs.r_v(), 2 * rs.r_v(), 3 * rs.r_v()}) {
    auto td = twisted_root_data(rs, u);
    ASSERT_EQ(static_cast<int>(td.simple.size()), rs.rank() + 1);
    for (const auto& c : td.simple) EXPECT_EQ(pairing(rs, td.rho_sharp, c), 1);
    EXPECT_EQ(td.level_sharp, Rat(rs.h(), td.uprime));
  }
  EXPECT_THROW(twisted_root_data(rs, rs.r_v() + 1), Error);
}

TEST_P(AffineTypes, MultiplicitiesFillTheCartan) {
  RootSystem rs(LieType::parse(GetParam()));
  const int r = rs.r_v();
  // one period of imaginary multiplicities adds up to the rank of the
  // simply-laced algebra being folded
  int total = 0;
  for (int n = 1; n <= r; ++n) total += imaginary_multiplicity(rs, n, MultSwitch::kKac);
  EXPECT_EQ(total, rs.N());
  EXPECT_EQ(imaginary_multiplicity(rs, r, MultSwitch::kKac), rs.rank());
  for (auto sw : {MultSwitch::kAlternate, MultSwitch::kKac}) {
    auto [e1, e2] = eta_exponents(rs, sw);
    for (int n = 1; n <= 2 * r; ++n) EXPECT_EQ(e1 + (n % r == 0 ? e2 : 0), imaginary_multiplicity(rs, n, sw));
  }
  // the two assignments are swapped
  EXPECT_EQ(imaginary_multiplicity(rs, 1, MultSwitch::kAlternate), imaginary_multiplicity(rs, r, MultSwitch::kKac));
}

TEST_P(AffineTypes, AffineReflection) {
  RootSystem rs(LieType::parse(GetParam()));
  std::mt19937_64 g(2);
  for (int s = 0; s < 10; ++s) {
    QVec x = random_weight(rs, g);
    EXPECT_EQ(affine_reflect(rs, 4, affine_reflect(rs, 4, x)), x);
    // the image is on the other side of the wall
    Rat before = rs.pairing(x, rs.coroot(rs.theta_s())) - 4;
    Rat after = rs.pairing(affine_reflect(rs, 4, x), rs.coroot(rs.theta_s())) - 4;
    EXPECT_EQ(before, -after);
  }
}

INSTANTIATE_TEST_SUITE_P(Types, AffineTypes, ::testing::Values("B2", "C2", "G2", "B3", "C3", "F4"));

TEST(EvalPoints, SquareOfS) {
  RootSystem rs(LieType::parse("C2"));
  EvalPoint p{cd(0.2, 1.1), {cd(0.3, 0.1), cd(-0.7, 0.05)}, cd(0.4, 0)};
  EvalPoint q = s_transform(rs, s_transform(rs, p));
  EXPECT_NEAR(std::abs(q.tau - p.tau), 0, 1e-14);
  for (int i = 0; i < 2; ++i) EXPECT_NEAR(std::abs(q.z[i] + p.z[i]), 0, 1e-14);
  EXPECT_NEAR(std::abs(q.t - p.t), 0, 1e-14);
  auto r = from_u_coords(to_u_coords(p, 3), 3);
  EXPECT_NEAR(std::abs(r.tau - p.tau) + std::abs(r.t - p.t), 0, 1e-15);
}

TEST(EvalPoints, ExponentialIsCharacter) {
  RootSystem rs(LieType::parse("G2"));
  std::mt19937_64 g(1);
  EvalPoint p{cd(0.1, 0.9), {cd(0.3, 0.1), cd(-0.2, 0.05), cd(-0.1, -0.15)}, cd(0.2, 0)};
  AffineWeight a{Rat(1, 3), random_weight(rs, g), Rat(2)}, b{Rat(2), random_weight(rs, g), Rat(-1, 2)};
  cd lhs = eval_exponential(rs, a + b, p), rhs = eval_exponential(rs, a, p) * eval_exponential(rs, b, p);
  EXPECT_NEAR(std::abs(lhs - rhs) / std::abs(rhs), 0, 1e-13);
}

TEST(EvalPoints, Validation) {
  RootSystem rs(LieType::parse("C2"));
  EXPECT_THROW(check_point(rs, {cd(0.1, -1.0), {cd(0), cd(0)}, cd(0)}), Error);
  EXPECT_THROW(check_point(rs, {cd(0.1, 1.0), {cd(0)}, cd(0)}), Error);
  EXPECT_EQ(parse_mult_switch("swapped"), MultSwitch::kKac);
  EXPECT_THROW(parse_mult_switch("both"), Error);
}
