#pragma once

// Character numerators A_{Lambda+rho} (Weyl sum and theta expansion), the
// Weyl denominators R_g and R^#_(u), normalized characters, and exact
// q-series of specialized characters.

#include "theta.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <map>
#include <optional>

namespace subadm {

// ---- infinite products ---------------------------------------------------------

inline cd ipow(cd x, int e) {
  cd r = 1;
  cd b = e < 0 ? 1.0 / x : x;
  for (int k = std::abs(e); k > 0; k >>= 1) {
    if (k & 1) r *= b;
    b *= b;
  }
  return r;
}

// prod_{n >= 1} (1 - exp(2 pi i [tau (step*n + offset) + arg])), run until the
// factors are within tol of 1.
inline cd q_product(cd tau, double step, double offset, cd arg, double tol = 1e-17, int max_terms = 200000) {
  if (!(tau.imag() > 0)) throw Error(ErrorKind::NotConvergent, "Im tau must be positive");
  cd prod = 1;
  for (int n = 1;; ++n) {
    cd f = std::exp(cd(0, kTwoPi) * (tau * (step * n + offset) + arg));
    prod *= 1.0 - f;
    if (std::abs(f) < tol && step * n + offset > 0) break;
    if (n >= max_terms) throw Error(ErrorKind::NotConvergent, "infinite product did not settle; z too far from real axis");
  }
  return prod;
}

inline cd root_pairing(const RootSystem& rs, const QVec& a, const CVec& z) { return rs.pairing(to_double(a), z); }

// 1 - e^{-2 pi i (alpha|z)}, refusing exact zeros.
inline cd finite_factor(const RootSystem& rs, const QVec& a, const CVec& z) {
  cd f = 1.0 - std::exp(cd(0, -kTwoPi) * root_pairing(rs, a, z));
  if (std::abs(f) < 1e-13) throw Error(ErrorKind::ZeroDenominator, "z lies on the wall of " + to_string(a));
  return f;
}

// ---- numerators ----------------------------------------------------------------

struct NumeratorSpec {
  std::vector<ThetaIndex> lambdas;  // one per element of W, in Weyl-table order
  std::vector<int> signs;           // eps(ybar) eps(wbar)
  Rat m;
};

// lambda = (u'p/r) L0 + u' wbar(vbar) + p beta / r, evaluated at (tau, z/u', t/u'^2).
inline NumeratorSpec numerator_spec(const RootSystem& rs, const AdmissibleLevel& lv, const SubprincipalWeight& w) {
  require_subprincipal(lv);
  const int r = rs.r_v();
  NumeratorSpec s;
  s.m = w.m;
  const Rat n(lv.uprime * lv.p, r);
  for (std::size_t wb = 0; wb < rs.weyl_order(); ++wb) {
    ThetaIndex idx{n, lv.uprime, Rat(lv.uprime) * rs.apply(wb, w.vbar) + Rat(lv.p, r) * w.y.beta};
    s.lambdas.push_back(std::move(idx));
    s.signs.push_back(sign(rs, w.y) * rs.sign(wb));
  }
  return s;
}

inline cd numerator_eval_theta(const RootSystem& rs, const AdmissibleLevel& lv, const SubprincipalWeight& w,
                               const EvalPoint& p, double tol = 1e-12) {
  check_point(rs, p);
  NumeratorSpec spec = numerator_spec(rs, lv, w);
  const double up = lv.uprime;
  EvalPoint pt{p.tau, p.z, p.t / (up * up)};
  for (auto& zi : pt.z) zi /= up;
  LatticeSumPlan plan = theta_plan(rs);
  SumOptions opt;
  opt.tol = tol / static_cast<double>(rs.weyl_order());
  cd total = 0;
  for (std::size_t i = 0; i < spec.lambdas.size(); ++i)
    total += double(spec.signs[i]) * theta_eval_terms(rs, plan, spec.lambdas[i], pt, opt).value;
  return total;
}

inline CVec weyl_apply(const RootSystem& rs, std::size_t w, const CVec& z) {
  RVec re(z.size()), im(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) re[i] = z[i].real(), im[i] = z[i].imag();
  re = rs.apply(w, re);
  im = rs.apply(w, im);
  CVec out(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) out[i] = cd(re[i], im[i]);
  return out;
}

// q^{m} sum_{w in y W^# y^{-1}} eps(w) e^{w(Lambda+rho)}, w = y t_{u gamma} wbar y^{-1},
// each term built with exact affine arithmetic.
inline cd numerator_eval_weylsum(const RootSystem& rs, const AdmissibleLevel& lv, const SubprincipalWeight& w,
                                 const EvalPoint& p, double tol = 1e-12) {
  require_subprincipal(lv);
  check_point(rs, p);
  const std::size_t nw = rs.weyl_order();
  LatticeSumPlan plan = make_plan(rs, rs.basis(Lattice::Q));
  SumOptions opt;
  opt.tol = tol / static_cast<double>(nw);
  const AffineWeight base{Rat(lv.p, lv.u), w.vbar, Rat(0)};
  const std::size_t yinv = rs.inverse(w.y.wbar);
  const QVec tshift = Rat(lv.p, lv.u) * rs.apply(yinv, w.y.beta);
  const CVec zrot = weyl_apply(rs, yinv, p.z);
  const cd qm = cd(0, kTwoPi) * p.tau * to_double(w.m);

  auto term = [&](std::size_t wb, const IVec& g) {
    QVec gamma = zeros(rs.ambient_dim());
    for (std::size_t i = 0; i < g.size(); ++i)
      if (g[i] != 0) gamma = gamma + Rat(g[i] * lv.u) * rs.simple_roots()[i];
    AffineWeight x = act(rs, w.y, translate(rs, gamma, weyl_act(rs, wb, base)));
    return exponent(rs, x, p) + qm;
  };

  std::vector<SumWindow> wins;
  double ref = -std::numeric_limits<double>::infinity();
  for (std::size_t wb = 0; wb < nw; ++wb) {
    RVec shift = to_double(rs.apply(wb, w.vbar) + tshift);
    wins.push_back(sum_window(rs, plan, shift, lv.p, to_double(Rat(lv.p, lv.u)), p.tau, zrot, opt));
    ref = std::max(ref, term(wb, wins.back().nearest).real());
  }
  ScaledSum acc(ref);
  for (std::size_t wb = 0; wb < nw; ++wb) {
    const double s = rs.sign(wb);
    enumerate_ellipsoid(
        plan.ldl, wins[wb].centre, wins[wb].radius2, [&](const IVec& g) { acc.add(term(wb, g), s); }, opt.max_terms);
  }
  return acc.value();
}

// ---- denominators ----------------------------------------------------------------

// R_g = e^{rho_hat} q^{m_0} prod_{alpha > 0} (1 - e^{-alpha})^{mult alpha}, rho_hat = h^v L0 + rho.
inline cd denominator_R_g(const RootSystem& rs, const EvalPoint& p, double tol = 1e-17) {
  check_point(rs, p);
  const Rat m0 = rs.norm2(rs.rho()) / Rat(2 * rs.h_dual());
  cd val = std::exp(cd(0, kTwoPi) * (p.t * double(rs.h_dual()) + root_pairing(rs, rs.rho(), p.z) + p.tau * to_double(m0)));
  for (const auto& a : rs.positive_roots()) val *= finite_factor(rs, a, p.z);
  val *= ipow(q_product(p.tau, 1, 0, 0, tol), rs.rank());
  for (const auto& a : rs.roots()) val *= q_product(p.tau, 1, 0, -root_pairing(rs, a, p.z), tol);
  return val;
}

// R^#_(u): Weyl vector of level h/u, long roots at q^{un}, short roots at
// q^{u'n}, imaginary part phi(q^{u'})^{e1} phi(q^u)^{e2} per the switch.
inline cd denominator_product_sharp(const RootSystem& rs, int u, const EvalPoint& p, MultSwitch sw = MultSwitch::kKac,
                                    double tol = 1e-17) {
  check_point(rs, p);
  TwistedRootData td = twisted_root_data(rs, u, sw);
  auto [e1, e2] = eta_exponents(rs, sw);
  const Rat qpow = Rat(u) * rs.norm2(rs.rho()) / Rat(2 * rs.h());
  cd val = std::exp(cd(0, kTwoPi) * (p.t * to_double(td.rho_sharp.level) + root_pairing(rs, rs.rho(), p.z) +
                                     p.tau * to_double(qpow)));
  for (const auto& a : rs.positive_roots()) val *= finite_factor(rs, a, p.z);
  val *= ipow(q_product(p.tau, td.uprime, 0, 0, tol), e1);
  val *= ipow(q_product(p.tau, u, 0, 0, tol), e2);
  for (const auto& a : rs.roots()) {
    const double step = rs.is_long(a) ? u : td.uprime;
    val *= q_product(p.tau, step, 0, -root_pairing(rs, a, p.z), tol);
  }
  return val;
}

// The Weyl-vector numerator: p = h with vbar = rho, y = e; the level p/u is
// not required to be admissible.
inline cd weyl_vector_numerator(const RootSystem& rs, int u, const EvalPoint& p, double tol = 1e-12) {
  AdmissibleLevel lv;
  lv.p = rs.h();
  lv.u = u;
  lv.uprime = u / rs.r_v();
  lv.k = Rat(lv.p, u) - Rat(rs.h_dual());
  lv.kind = LevelKind::kSubprincipal;
  if (u % rs.r_v() != 0) throw Error(ErrorKind::NotDivisible, "u must be a multiple of r");
  ExtendedWeylElement e{zeros(rs.ambient_dim()), rs.identity_index()};
  SubprincipalWeight w = make_weight(rs, lv, e, rs.rho());
  return numerator_eval_theta(rs, lv, w, p, tol);
}

// ---- characters ----------------------------------------------------------------

inline cd normalized_character_eval(const RootSystem& rs, const AdmissibleLevel& lv, const SubprincipalWeight& w,
                                    const EvalPoint& p, double tol = 1e-12) {
  return numerator_eval_theta(rs, lv, w, p, tol) / denominator_R_g(rs, p);
}

// ch L(Lambda^{#0}, g^#) = A / R^# for y = e.
inline cd sharp_character_eval(const RootSystem& rs, const AdmissibleLevel& lv, const SubprincipalWeight& w,
                               const EvalPoint& p, MultSwitch sw = MultSwitch::kKac, double tol = 1e-12) {
  if (!is_zero(w.y.beta) || w.y.wbar != rs.identity_index())
    throw Error(ErrorKind::InvalidArgument, "sharp character needs y = e");
  return numerator_eval_theta(rs, lv, w, p, tol) / denominator_product_sharp(rs, lv.u, p, sw);
}

// C_k = k dim g / (k + h^v)
inline Rat central_charge(const RootSystem& rs, const Rat& k) { return k * Rat(rs.dim()) / (k + Rat(rs.h_dual())); }

// |rho|^2 / (2 h^v) and dim g / 24, both exact.
inline std::pair<Rat, Rat> strange_formula_sides(const RootSystem& rs) {
  return {rs.norm2(rs.rho()) / Rat(2 * rs.h_dual()), Rat(rs.dim(), 24)};
}

// ---- exact q-series --------------------------------------------------------------

using BigRat = boost::multiprecision::cpp_rational;

// Sparse truncated series sum c_e q^e with rational exponents e <= qmax.
class QSeries {
 public:
  QSeries() = default;
  explicit QSeries(Rat qmax, long long denom_cap = 0) : qmax_(qmax), cap_(denom_cap) {}

  const Rat& qmax() const { return qmax_; }
  long long denom_cap() const { return cap_; }
  const std::map<Rat, BigRat>& terms() const { return terms_; }

  void add(const Rat& e, const BigRat& c) {
    if (cap_ > 0 && cap_ % e.denominator() != 0)
      throw Error(ErrorKind::InvalidArgument, "exponent " + to_string(e) + " outside (1/" + std::to_string(cap_) + ")Z");
    if (e > qmax_ || c == 0) return;
    auto it = terms_.emplace(e, BigRat(0)).first;
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }

  BigRat coefficient(const Rat& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? BigRat(0) : it->second;
  }

  std::optional<Rat> leading_exponent() const {
    if (terms_.empty()) return std::nullopt;
    return terms_.begin()->first;
  }

  // q^s * f
  QSeries shifted(const Rat& s) const {
    QSeries out(qmax_ + s, cap_);
    for (const auto& [e, c] : terms_) out.add(e + s, c);
    return out;
  }

  friend QSeries operator+(const QSeries& a, const QSeries& b) {
    QSeries out(std::min(a.qmax_, b.qmax_), common_cap(a, b));
    for (const auto& [e, c] : a.terms_) out.add(e, c);
    for (const auto& [e, c] : b.terms_) out.add(e, c);
    return out;
  }

  // Truncated where both factors are still exact: min(qa + lead_b, qb + lead_a).
  friend QSeries operator*(const QSeries& a, const QSeries& b) {
    if (a.terms_.empty() || b.terms_.empty()) return QSeries(std::min(a.qmax_, b.qmax_), common_cap(a, b));
    Rat qmax = std::min(a.qmax_ + b.terms_.begin()->first, b.qmax_ + a.terms_.begin()->first);
    QSeries out(qmax, common_cap(a, b));
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        if (ea + eb > qmax) break;
        out.add(ea + eb, ca * cb);
      }
    return out;
  }

 private:
  static long long common_cap(const QSeries& a, const QSeries& b) {
    if (a.cap_ == 0 || b.cap_ == 0) return 0;
    return std::lcm(a.cap_, b.cap_);
  }
  Rat qmax_{0};
  long long cap_ = 0;
  std::map<Rat, BigRat> terms_;
};

// prod_{n>=1} (1-q^n)^k through q^K, k of either sign.
inline QSeries phi_power_qseries(int k, int K) {
  std::vector<BigRat> base(K + 1, BigRat(0));
  if (k >= 0) {
    // pentagonal numbers
    for (long long j = -K; j <= K; ++j) {
      long long e = j * (3 * j - 1) / 2;
      if (e >= 0 && e <= K) base[e] += (j % 2 == 0) ? 1 : -1;
    }
  } else {
    base[0] = 1;
    for (int n = 1; n <= K; ++n)
      for (int m = n; m <= K; ++m) base[m] += base[m - n];
  }
  std::vector<BigRat> acc(K + 1, BigRat(0));
  acc[0] = 1;
  for (int i = 0; i < std::abs(k); ++i) {
    std::vector<BigRat> next(K + 1, BigRat(0));
    for (int a = 0; a <= K; ++a)
      if (acc[a] != 0)
        for (int b = 0; a + b <= K; ++b) next[a + b] += acc[a] * base[b];
    acc = std::move(next);
  }
  QSeries out{Rat(K)};
  for (int e = 0; e <= K; ++e) out.add(Rat(e), acc[e]);
  return out;
}

// d(beta) = prod_{alpha > 0} (beta + rho | alpha) / (rho | alpha)
inline Rat weyl_dimension(const RootSystem& rs, const QVec& beta) {
  Rat d(1);
  for (const auto& a : rs.positive_roots()) d *= rs.pairing(beta + rs.rho(), a) / rs.pairing(rs.rho(), a);
  return d;
}

inline bool is_dominant_integral(const RootSystem& rs, const QVec& lam) {
  for (const auto& av : rs.simple_coroots()) {
    Rat c = rs.pairing(lam, av);
    if (!is_integer(c) || c < 0) return false;
  }
  return true;
}

// sum_{gamma in Q} d(lam + p gamma) q^{(u/2p)|lam + rho + p gamma|^2} / eta(tau)^{dim g},
// through `powers` integer steps above the leading exponent.
inline QSeries character_qseries_specialized(const RootSystem& rs, const AdmissibleLevel& lv, const QVec& lam,
                                             int powers) {
  require_subprincipal(lv);
  if (!is_dominant_integral(rs, lam)) throw Error(ErrorKind::NotDominant, "finite part " + to_string(lam) + " is not dominant integral");
  if (powers < 0) throw Error(ErrorKind::InvalidArgument, "number of q-powers must be nonnegative");
  const Rat scale(lv.u, 2 * lv.p);
  const QVec shift = lam + rs.rho();
  // every needed term has |shift + p gamma|^2 <= |shift|^2 + (powers + 1) / scale
  const Rat bound = rs.norm2(shift) + Rat(powers + 1) / scale;
  LatticeSumPlan plan = make_plan(rs, rs.basis(Lattice::Q));
  RVec centre = to_double(coordinates(rs.basis(Lattice::Q), Rat(-1, lv.p) * shift));
  std::map<Rat, BigRat> raw;
  enumerate_ellipsoid(plan.ldl, centre, to_double(bound) / (lv.p * lv.p) * (1 + 1e-9) + 1e-9, [&](const IVec& g) {
    QVec gamma = zeros(rs.ambient_dim());
    for (std::size_t i = 0; i < g.size(); ++i) gamma = gamma + Rat(g[i]) * rs.simple_roots()[i];
    QVec beta = lam + Rat(lv.p) * gamma;
    QVec v = beta + rs.rho();
    if (rs.norm2(v) > bound) return;
    Rat d = weyl_dimension(rs, beta);
    if (d == 0) return;
    BigRat c(d.numerator());
    c /= d.denominator();
    raw[scale * rs.norm2(v)] += c;
  });
  for (auto it = raw.begin(); it != raw.end();) it = (it->second == 0) ? raw.erase(it) : std::next(it);
  if (raw.empty()) throw Error(ErrorKind::InvalidArgument, "character series vanishes identically");
  const Rat e0 = raw.begin()->first;
  const long long cap = std::lcm(2LL * lv.u * lv.p * rs.r_v(), 24LL);
  QSeries num(e0 + Rat(powers), cap);
  for (const auto& [e, c] : raw) num.add(e, c);
  return (num * phi_power_qseries(-rs.dim(), powers)).shifted(Rat(-rs.dim(), 24));
}

}  // namespace subadm
