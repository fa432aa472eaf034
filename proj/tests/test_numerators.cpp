#include "subadm/sampling.hpp"

#include <gtest/gtest.h>

#include <boost/multiprecision/cpp_int.hpp>

#include <random>

using namespace subadm;
using boost::multiprecision::cpp_int;

namespace {

std::vector<EvalPoint> points(const RootSystem& rs) {
  return {{cd(0.05, 1.0), to_complex(seeded_z(rs, 7).z), cd(0.05, 0)},
          {cd(-0.1, 1.3), to_complex(seeded_z(rs, 8).z), cd(0.1, 0)},
          {cd(0.25, 1.0), to_complex(seeded_z(rs, 9).z), cd(0.0, 0)}};
}

struct Lv {
  const char* type;
  int p, u;
};

void PrintTo(const Lv& l, std::ostream* os) { *os << l.type << " p=" << l.p << " u=" << l.u; }

}  // namespace

class NumeratorLevels : public ::testing::TestWithParam<Lv> {};

TEST_P(NumeratorLevels, TwoRoutesAgree) {
  const auto& L = GetParam();
  RootSystem rs(LieType::parse(L.type));
  auto lv = classify_level(rs, L.p, L.u);
  auto ws = enumerate_all(rs, lv);
  for (const auto& p : points(rs)) {
    std::vector<cd> a, b;
    double scale = 0;
    for (const auto& w : ws) {
      a.push_back(numerator_eval_weylsum(rs, lv, w, p));
      b.push_back(numerator_eval_theta(rs, lv, w, p));
      scale = std::max(scale, std::abs(b.back()));
    }
    // a weight sitting near a zero of its numerator is compared against the level's scale
    for (std::size_t i = 0; i < ws.size(); ++i)
      EXPECT_LT(std::abs(a[i] - b[i]) / std::max(std::abs(b[i]), 1e-8 * scale), 1e-8) << "weight " << i;
  }
}

TEST_P(NumeratorLevels, LinearInT) {
  const auto& L = GetParam();
  RootSystem rs(LieType::parse(L.type));
  auto lv = classify_level(rs, L.p, L.u);
  auto w = enumerate_all(rs, lv).back();
  EvalPoint p = points(rs)[0], q = p;
  q.t += 0.29;
  cd ratio = numerator_eval_theta(rs, lv, w, q) / numerator_eval_theta(rs, lv, w, p);
  // the level of Lambda + rho is p/u
  EXPECT_NEAR(std::abs(ratio - std::exp(cd(0, kTwoPi * 0.29 * L.p / L.u))), 0, 1e-10);
}

TEST_P(NumeratorLevels, AntisymmetricUnderFiniteWeylGroup) {
  const auto& L = GetParam();
  RootSystem rs(LieType::parse(L.type));
  auto lv = classify_level(rs, L.p, L.u);
  EvalPoint p = points(rs)[1];
  for (const auto& w : enumerate_quasidominant(rs, lv)) {
    cd base = numerator_eval_theta(rs, lv, w, p);
    for (std::size_t wb = 0; wb < rs.weyl_order(); wb += 3) {
      EvalPoint q{p.tau, weyl_apply(rs, wb, p.z), p.t};
      cd v = numerator_eval_theta(rs, lv, w, q);
      EXPECT_LT(std::abs(v - double(rs.sign(wb)) * base) / std::abs(base), 1e-10);
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Levels, NumeratorLevels,
                         ::testing::Values(Lv{"C2", 5, 2}, Lv{"G2", 7, 3}, Lv{"C2", 7, 4}, Lv{"B3", 7, 2}),
                         [](const auto& info) {
                           return std::string(info.param.type) + "_p" + std::to_string(info.param.p) + "_u" +
                                  std::to_string(info.param.u);
                         });

TEST(Denominator, OnlyKacMultiplicitiesReproduceTheProduct) {
  for (const char* t : {"C2", "G2", "B3"}) {
    RootSystem rs(LieType::parse(t));
    for (int u : {rs.r_v(), 2 * rs.r_v()}) {
      double kac = 0, alt = 0;
      for (const auto& p : points(rs)) {
        cd a = weyl_vector_numerator(rs, u, p);
        kac = std::max(kac, std::abs(denominator_product_sharp(rs, u, p, MultSwitch::kKac) - a) / std::abs(a));
        alt = std::max(alt, std::abs(denominator_product_sharp(rs, u, p, MultSwitch::kAlternate) - a) / std::abs(a));
      }
      EXPECT_LT(kac, 1e-8) << t << " u=" << u;
      EXPECT_GT(alt, 1e-7) << t << " u=" << u;
    }
  }
}

TEST(Denominator, ZeroAtTheOrigin) {
  RootSystem rs(LieType::parse("C2"));
  EvalPoint p{cd(0, 1), {cd(0), cd(0)}, cd(0)};
  try {
    denominator_R_g(rs, p);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ZeroDenominator);
  }
  EXPECT_THROW(weyl_vector_numerator(rs, 3, points(rs)[0]), Error);
}

TEST(Denominator, UntwistedProductMatchesSeries) {
  // R_g = e^{rho_hat} q^{m0} prod (...) against a direct alternating sum
  // over the affine Weyl group: sum_{w, gamma in Q^v} eps(w) e^{w t_gamma (h^v L0 + rho)}
  RootSystem rs(LieType::parse("C2"));
  EvalPoint p = points(rs)[0];
  const Rat hv(rs.h_dual());
  const Rat m0 = rs.norm2(rs.rho()) / (Rat(2) * hv);
  cd sum = 0;
  for (long long a = -6; a <= 6; ++a)
    for (long long b = -6; b <= 6; ++b) {
      QVec g = Rat(a) * rs.simple_coroots()[0] + Rat(b) * rs.simple_coroots()[1];
      AffineWeight x = translate(rs, g, {hv, rs.rho(), Rat(0)});
      for (std::size_t w = 0; w < rs.weyl_order(); ++w)
        sum += double(rs.sign(w)) * eval_exponential(rs, weyl_act(rs, w, x), p);
    }
  sum *= std::exp(cd(0, kTwoPi) * p.tau * to_double(m0));
  cd prod = denominator_R_g(rs, p);
  EXPECT_LT(std::abs(sum - prod) / std::abs(prod), 1e-10);
}

TEST(Numerators, FiniteFactorNearWall) {
  RootSystem rs(LieType::parse("C2"));
  CVec z{cd(0.25), cd(0.25)};  // on the wall of alpha = e1 - e2
  EXPECT_THROW(finite_factor(rs, rs.simple_roots()[0], z), Error);
}

TEST(Numerators, StrangeFormula) {
  for (const char* t : {"B2", "B3", "B4", "C2", "C3", "C5", "G2", "F4"}) {
    RootSystem rs(LieType::parse(t));
    auto [lhs, rhs] = strange_formula_sides(rs);
    EXPECT_EQ(lhs, rhs) << t;
  }
}

TEST(Numerators, CentralCharge) {
  RootSystem c2(LieType::parse("C2")), g2(LieType::parse("G2"));
  EXPECT_EQ(central_charge(c2, Rat(-1, 2)), Rat(-2));
  EXPECT_EQ(central_charge(g2, Rat(-5, 3)), Rat(-10));
}

TEST(Numerators, WeylDimension) {
  RootSystem c2(LieType::parse("C2")), g2(LieType::parse("G2"));
  EXPECT_EQ(weyl_dimension(c2, c2.fundamental_weights()[0]), 4);
  EXPECT_EQ(weyl_dimension(c2, c2.fundamental_weights()[1]), 5);
  EXPECT_EQ(weyl_dimension(c2, c2.theta()), 10);
  EXPECT_EQ(weyl_dimension(g2, g2.theta_s()), 7);
  EXPECT_EQ(weyl_dimension(g2, g2.theta()), 14);
}

// ---- q-series ----------------------------------------------------------------

namespace {

QSeries random_series(std::mt19937_64& g, Rat lead, long long cap) {
  QSeries s(lead + Rat(6), cap);
  for (int i = 0; i < 8; ++i) {
    Rat e = lead + Rat(static_cast<long long>(g() % 24), 4);
    s.add(e, BigRat(static_cast<long long>(g() % 11) - 5, 1 + static_cast<long long>(g() % 3)));
  }
  return s;
}

// partition-style coefficients of prod (1-q^n)^{k} by naive polynomial products
std::vector<cpp_int> naive_phi_power(int k, int K) {
  std::vector<cpp_int> acc(K + 1, 0);
  acc[0] = 1;
  for (int n = 1; n <= K; ++n)
    for (int rep = 0; rep < std::abs(k); ++rep) {
      if (k > 0) {
        for (int e = K; e >= n; --e) acc[e] -= acc[e - n];
      } else {
        for (int e = n; e <= K; ++e) acc[e] += acc[e - n];
      }
    }
  return acc;
}

}  // namespace

TEST(QSeries, RingLaws) {
  std::mt19937_64 g(17);
  for (int trial = 0; trial < 10; ++trial) {
    auto a = random_series(g, Rat(1, 4), 24), b = random_series(g, Rat(-1, 2), 24), c = random_series(g, Rat(0), 24);
    auto l = (a * b) * c, r = a * (b * c);
    Rat q = std::min(l.qmax(), r.qmax());
    for (const auto& [e, v] : l.terms())
      if (e <= q) {
        EXPECT_EQ(v, r.coefficient(e));
      }
    auto d1 = a * (b + c), d2 = a * b + a * c;
    q = std::min(d1.qmax(), d2.qmax());
    for (const auto& [e, v] : d1.terms())
      if (e <= q) {
        EXPECT_EQ(v, d2.coefficient(e));
      }
    for (const auto& [e, v] : d2.terms())
      if (e <= q) {
        EXPECT_EQ(v, d1.coefficient(e));
      }
    auto s = a.shifted(Rat(5, 12));
    for (const auto& [e, v] : a.terms()) EXPECT_EQ(s.coefficient(e + Rat(5, 12)), v);
  }
}

TEST(QSeries, DenominatorCap) {
  QSeries s(Rat(10), 24);
  EXPECT_NO_THROW(s.add(Rat(5, 12), BigRat(1)));
  EXPECT_THROW(s.add(Rat(1, 5), BigRat(1)), Error);
}

TEST(QSeries, EulerProductPowers) {
  for (int k : {1, 3, -1, -10, -14}) {
    auto s = phi_power_qseries(k, 12);
    auto want = naive_phi_power(k, 12);
    for (int e = 0; e <= 12; ++e) EXPECT_EQ(s.coefficient(Rat(e)), BigRat(want[e])) << "k=" << k << " e=" << e;
  }
  // partitions
  auto p = phi_power_qseries(-1, 10);
  const int parts[] = {1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42};
  for (int e = 0; e <= 10; ++e) EXPECT_EQ(p.coefficient(Rat(e)), BigRat(parts[e]));
}

namespace {

// vacuum series by brute force: sum over a box of Q, dimensions from the
// product formula, eta power by naive products
std::map<Rat, cpp_int> vacuum_brute(const RootSystem& rs, int p, int u, int powers, Rat& lead) {
  std::map<Rat, cpp_int> num;
  const Rat scale(u, 2 * p);
  const int box = 4;
  IVec k(rs.rank(), -box);
  for (;;) {
    QVec g = zeros(rs.ambient_dim());
    for (std::size_t i = 0; i < k.size(); ++i) g = g + Rat(k[i]) * rs.simple_roots()[i];
    QVec v = rs.rho() + Rat(p) * g;
    Rat d(1);
    for (const auto& a : rs.positive_roots()) d *= rs.pairing(v, a) / rs.pairing(rs.rho(), a);
    if (d != 0) num[scale * rs.norm2(v)] += cpp_int(d.numerator());
    std::size_t i = 0;
    while (i < k.size() && ++k[i] > box) k[i++] = -box;
    if (i == k.size()) break;
  }
  auto eta = naive_phi_power(-rs.dim(), powers);
  const Rat e0 = num.begin()->first;
  std::map<Rat, cpp_int> out;
  for (const auto& [e, c] : num)
    for (int j = 0; j <= powers; ++j)
      if (e + Rat(j) <= e0 + Rat(powers)) out[e + Rat(j) - Rat(rs.dim(), 24)] += c * eta[j];
  lead = e0 - Rat(rs.dim(), 24);
  return out;
}

}  // namespace

TEST(QSeries, VacuumCharacters) {
  for (auto [t, p, u] : {std::tuple{"C2", 5, 2}, std::tuple{"G2", 7, 3}}) {
    RootSystem rs(LieType::parse(t));
    auto lv = classify_level(rs, p, u);
    auto s = character_qseries_specialized(rs, lv, zeros(rs.ambient_dim()), 10);
    // the leading exponent of the vacuum is -c/24
    EXPECT_EQ(*s.leading_exponent(), -central_charge(rs, lv.k) / Rat(24)) << t;
    EXPECT_EQ(s.coefficient(*s.leading_exponent()), BigRat(1));
    Rat lead;
    auto brute = vacuum_brute(rs, p, u, 10, lead);
    EXPECT_EQ(lead, *s.leading_exponent());
    for (const auto& [e, c] : brute) EXPECT_EQ(s.coefficient(e), BigRat(c)) << t << " q^" << to_string(e);
    for (const auto& [e, c] : s.terms()) {
      EXPECT_TRUE(is_integer(e - lead));
      EXPECT_EQ(denominator(c), 1);
      EXPECT_GE(c, 0);
    }
  }
}

TEST(QSeries, NonDominantRejected) {
  RootSystem rs(LieType::parse("C2"));
  auto lv = classify_level(rs, 5, 2);
  try {
    character_qseries_specialized(rs, lv, Rat(-1) * rs.fundamental_weights()[0], 5);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotDominant);
  }
}
