#pragma once

// Characters of quantum Hamiltonian reductions H_f(Lambda) at subprincipal
// levels: the direct quotient A / R^w and the factored product form, plus
// the vanishing criteria.

#include "numerators.hpp"

#include <set>

namespace subadm {

// x = half the Dynkin characteristic of f; gradings by alpha(x) = (alpha|x).
struct NilpotentData {
  std::string name;
  QVec x;
  std::vector<QVec> positive;  // alpha > 0 with alpha(x) > 0
  std::vector<QVec> g0;        // alpha > 0 with alpha(x) = 0
  std::vector<QVec> ghalf;     // alpha > 0 with alpha(x) = 1/2
  int dim_g0 = 0;
  int dim_ghalf = 0;
  QVec rho0;                   // half-sum of g0
};

inline NilpotentData make_nilpotent(const RootSystem& rs, const QVec& x, const std::string& name = "custom") {
  if (static_cast<int>(x.size()) != rs.ambient_dim()) throw Error(ErrorKind::DimensionMismatch, "x has wrong dimension");
  if (is_zero(x)) throw Error(ErrorKind::InvalidArgument, "x = 0 does not come from a nonzero nilpotent");
  NilpotentData nd;
  nd.name = name;
  nd.x = x;
  nd.rho0 = zeros(rs.ambient_dim());
  for (const auto& a : rs.roots()) {
    Rat ax = rs.pairing(a, x);
    if (!is_integer(Rat(2) * ax)) throw Error(ErrorKind::InvalidArgument, "alpha(x) not in (1/2)Z for alpha = " + to_string(a));
  }
  for (const auto& a : rs.positive_roots()) {
    Rat ax = rs.pairing(a, x);
    if (ax < 0) throw Error(ErrorKind::InvalidArgument, "x must be dominant");
    if (ax > 0) nd.positive.push_back(a);
    if (ax == 0) {
      nd.g0.push_back(a);
      nd.rho0 = nd.rho0 + Rat(1, 2) * a;
    }
    if (ax == Rat(1, 2)) nd.ghalf.push_back(a);
  }
  nd.dim_g0 = rs.rank() + 2 * static_cast<int>(nd.g0.size());
  nd.dim_ghalf = 2 * static_cast<int>(nd.ghalf.size());
  return nd;
}

inline NilpotentData nilpotent_principal(const RootSystem& rs) { return make_nilpotent(rs, rs.rho_v(), "principal"); }

inline NilpotentData nilpotent_minimal(const RootSystem& rs) {
  NilpotentData nd = make_nilpotent(rs, Rat(1, 2) * rs.coroot(rs.theta()), "minimal");
  if (rs.pairing(rs.theta(), nd.x) != 1) throw Error(ErrorKind::InvalidArgument, "minimal grading needs theta(x) = 1");
  for (const auto& a : rs.roots())
    if (rs.pairing(a, nd.x) > 1) throw Error(ErrorKind::InvalidArgument, "minimal grading has |alpha(x)| <= 1");
  return nd;
}

// Labels alpha_i(x) in {0, 1/2, 1}.
inline NilpotentData nilpotent_from_labels(const RootSystem& rs, const std::vector<Rat>& labels) {
  if (static_cast<int>(labels.size()) != rs.rank()) throw Error(ErrorKind::DimensionMismatch, "need one label per simple root");
  for (const auto& l : labels)
    if (!(l == 0 || l == 1 || l == Rat(1, 2))) throw Error(ErrorKind::InvalidArgument, "labels must be 0, 1/2 or 1");
  return make_nilpotent(rs, combine(labels, rs.fundamental_coweights()), "custom");
}

// ---- twisted Cartan data ---------------------------------------------------------

struct TwistedMarks {
  std::vector<Rat> marks;    // delta = sum a_i alpha_i
  std::vector<Rat> comarks;  // K = sum a_i^v alpha_i^v
  Rat coxeter, dual_coxeter;
};

// Simple roots {-theta_s (+delta), alpha_i}, coroots {-theta_s^v (+uK), alpha_i^v}.
inline TwistedMarks twisted_marks(const RootSystem& rs) {
  std::vector<QVec> roots{-rs.theta_s()}, coroots{-rs.coroot(rs.theta_s())};
  for (const auto& a : rs.simple_roots()) roots.push_back(a);
  for (const auto& a : rs.simple_coroots()) coroots.push_back(a);
  const std::size_t n = roots.size();
  QMat A(n, zeros(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) A[i][j] = rs.pairing(roots[j], coroots[i]);
  auto null_vector = [&](const QMat& m) {
    QMat sub(n - 1, zeros(n - 1));
    QVec rhs(n - 1);
    for (std::size_t i = 1; i < n; ++i) {
      rhs[i - 1] = -m[i][0];
      for (std::size_t j = 1; j < n; ++j) sub[i - 1][j - 1] = m[i][j];
    }
    QVec rest = solve(sub, rhs);
    std::vector<Rat> v{Rat(1)};
    v.insert(v.end(), rest.begin(), rest.end());
    return v;
  };
  TwistedMarks t;
  t.marks = null_vector(A);
  t.comarks = null_vector(transpose(A));
  t.coxeter = std::accumulate(t.marks.begin(), t.marks.end(), Rat(0));
  t.dual_coxeter = std::accumulate(t.comarks.begin(), t.comarks.end(), Rat(0));
  return t;
}

// ---- vanishing -----------------------------------------------------------------------

struct VanishingCriterion {
  bool vanishes = false;     // some alpha > 0 has alpha(x) = n u (long) or n u' (short)
  bool theta_s_bound = false;  // u' <= theta_s(x)
  Rat theta_s_of_x;
  bool consistent = false;
  std::string reason;
};

inline VanishingCriterion vanishing_criterion(const RootSystem& rs, const AdmissibleLevel& lv, const NilpotentData& nd) {
  require_subprincipal(lv);
  VanishingCriterion v;
  for (const auto& a : rs.positive_roots()) {
    Rat ax = rs.pairing(a, nd.x);
    const int s = rs.is_long(a) ? lv.u : lv.uprime;
    if (ax > 0 && is_integer(ax / Rat(s))) {
      v.vanishes = true;
      v.reason = "alpha = " + to_string(a) + " has alpha(x) = " + to_string(ax) + ", a multiple of " + std::to_string(s);
      break;
    }
  }
  v.theta_s_of_x = rs.pairing(rs.theta_s(), nd.x);
  v.theta_s_bound = Rat(lv.uprime) <= v.theta_s_of_x;
  v.consistent = v.vanishes == v.theta_s_bound;
  if (!v.vanishes) v.reason = "no positive root meets a multiple of its step";
  return v;
}

// ---- characters ----------------------------------------------------------------------

enum class ExponentForm { kVerified, kAlternate };

// Verified: |u rho - h x|^2 / (2hu) - (u' e1 + u e2 - l + dim g0 - dim g_{1/2}/2) / 24 with the
// switch's eta exponents. Alternate: u' in place of u in the first term.
inline Rat qhr_exponent(const RootSystem& rs, const AdmissibleLevel& lv, const NilpotentData& nd,
                        ExponentForm form = ExponentForm::kVerified, MultSwitch sw = MultSwitch::kKac) {
  auto [e1, e2] = eta_exponents(rs, sw);
  const int h = rs.h(), l = rs.rank();
  const int s = form == ExponentForm::kVerified ? lv.u : lv.uprime;
  QVec d = Rat(s) * rs.rho() - Rat(h) * nd.x;
  Rat first = rs.norm2(d) / Rat(2 * h * s);
  Rat second = Rat(lv.uprime * e1 + lv.u * e2 - l + nd.dim_g0) - Rat(nd.dim_ghalf, 2);
  return first - second / Rat(24);
}

struct QhrOptions {
  double tol = 1e-12;
  double floor = 1e-6;    // absolute floor in the relative difference
  double perturb = 1e-5;  // step for the removable singularity of D
  MultSwitch mult = MultSwitch::kKac;
};

struct QhrValue {
  cd direct, factored, D;
  double rel_diff = 0;
  bool D_perturbed = false;
};

inline CVec shifted_z(const CVec& z, cd tau, const QVec& x) {
  CVec out(z);
  RVec xd = to_double(x);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] -= tau * xd[i];
  return out;
}

// Denominator of the universal W-algebra.
inline cd qhr_denominator(const RootSystem& rs, const NilpotentData& nd, cd tau, const CVec& z, double tol = 1e-17) {
  cd val = std::exp(cd(0, kTwoPi) * (tau * (2.0 * nd.dim_g0 - nd.dim_ghalf) / 48.0 + root_pairing(rs, nd.rho0, z)));
  val *= ipow(q_product(tau, 1, 0, 0, tol), rs.rank());
  for (const auto& a : nd.g0) {
    cd az = root_pairing(rs, a, z);
    val *= finite_factor(rs, a, z);
    val *= q_product(tau, 1, 0, -az, tol) * q_product(tau, 1, 0, az, tol);
  }
  for (const auto& a : nd.ghalf) val *= q_product(tau, 1, -0.5, root_pairing(rs, a, z), tol);
  if (std::abs(val) == 0) throw Error(ErrorKind::ZeroDenominator, "W-algebra denominator vanishes");
  return val;
}

// A_{Lambda+rho}(tau, z - tau x, tau (x|x)/2) / R^w(tau, z); z is expected in the
// centralizer of f, which is the caller's responsibility.
inline cd qhr_char_direct(const RootSystem& rs, const AdmissibleLevel& lv, const SubprincipalWeight& w,
                          const NilpotentData& nd, cd tau, const CVec& z, const QhrOptions& opt = {}) {
  EvalPoint sp{tau, shifted_z(z, tau, nd.x), tau * (to_double(rs.norm2(nd.x)) / 2.0)};
  return numerator_eval_theta(rs, lv, w, sp, opt.tol) / qhr_denominator(rs, nd, tau, z);
}

// ch L(Lambda^{#0}, g^#) at the shifted point; entire in z, so a zero of the
// denominator there is removed by averaging symmetric perturbations.
inline cd qhr_factor_D(const RootSystem& rs, const AdmissibleLevel& lv, const SubprincipalWeight& w,
                       const NilpotentData& nd, cd tau, const CVec& z, const QhrOptions& opt, bool* perturbed = nullptr) {
  auto at = [&](const CVec& zz) {
    EvalPoint sp{tau, shifted_z(zz, tau, nd.x), tau * (to_double(rs.norm2(nd.x)) / 2.0)};
    cd R = denominator_product_sharp(rs, lv.u, sp, opt.mult);
    if (!(std::abs(R) > 1e-290)) throw Error(ErrorKind::ZeroDenominator, "R^# vanishes");
    cd v = numerator_eval_theta(rs, lv, w, sp, opt.tol) / R;
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw Error(ErrorKind::ZeroDenominator, "R^# vanishes");
    return v;
  };
  if (perturbed) *perturbed = false;
  bool singular = false;
  for (const auto& a : nd.positive) {
    // factor 1 - q^{s n - alpha(x)} e^{-alpha(z)} with s n = alpha(x)
    Rat ax = rs.pairing(a, nd.x);
    const int s = rs.is_long(a) ? lv.u : lv.uprime;
    cd az = root_pairing(rs, a, z);
    if (is_integer(ax / Rat(s)) && std::abs(az - std::round(az.real())) < 1e-9) singular = true;
  }
  if (!singular) {
    try {
      return at(z);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::ZeroDenominator) throw;
    }
  }
  if (perturbed) *perturbed = true;
  // generic direction: irrational-ish weights on the fundamental coweights
  RVec dir(rs.ambient_dim(), 0.0);
  const auto& fcw = rs.fundamental_coweights();
  for (std::size_t i = 0; i < fcw.size(); ++i) {
    RVec f = to_double(fcw[i]);
    const double c = std::sqrt(2.0 + double(i)) - 1.0;
    for (int k = 0; k < rs.ambient_dim(); ++k) dir[k] += c * f[k];
  }
  CVec zp(z), zm(z);
  for (int k = 0; k < rs.ambient_dim(); ++k) {
    zp[k] += opt.perturb * dir[k];
    zm[k] -= opt.perturb * dir[k];
  }
  return 0.5 * (at(zp) + at(zm));
}

inline cd qhr_char_factored(const RootSystem& rs, const AdmissibleLevel& lv, const SubprincipalWeight& w,
                            const NilpotentData& nd, cd tau, const CVec& z, const QhrOptions& opt = {},
                            cd* D_out = nullptr, bool* perturbed = nullptr) {
  require_subprincipal(lv);
  const double tol = 1e-17;
  auto [e1, e2] = eta_exponents(rs, opt.mult);
  const Rat a = qhr_exponent(rs, lv, nd, ExponentForm::kVerified, opt.mult);

  // A: finite part over alpha(x) > 0, divided by the g_0 and g_{1/2} towers
  cd A = 1;
  for (const auto& al : nd.positive)
    A *= 1.0 - std::exp(cd(0, kTwoPi) * (tau * to_double(rs.pairing(al, nd.x)) - root_pairing(rs, al, z)));
  for (const auto& al : nd.ghalf) A /= q_product(tau, 1, -0.5, root_pairing(rs, al, z), tol);
  for (const auto& al : rs.roots())
    if (rs.pairing(al, nd.x) == 0) A /= q_product(tau, 1, 0, root_pairing(rs, al, z), tol);

  // B, C: positive roots at steps u (long) and u' (short), shifted by -+alpha(x)
  cd B = 1, C = 1;
  for (const auto& al : rs.positive_roots()) {
    const double s = rs.is_long(al) ? lv.u : lv.uprime;
    const double ax = to_double(rs.pairing(al, nd.x));
    cd az = root_pairing(rs, al, z);
    B *= q_product(tau, s, -ax, az, tol);
    C *= q_product(tau, s, ax, -az, tol);
  }
  cd eta = ipow(dedekind_eta(double(lv.uprime) * tau), e1) * ipow(dedekind_eta(double(lv.u) * tau), e2) /
           ipow(dedekind_eta(tau), rs.rank());
  cd pre = std::exp(cd(0, kTwoPi) * (tau * to_double(a) + root_pairing(rs, rs.rho() - nd.rho0, z)));
  cd D = qhr_factor_D(rs, lv, w, nd, tau, z, opt, perturbed);
  if (D_out) *D_out = D;
  return pre * eta * A * B * C * D;
}

inline QhrValue qhr_evaluate(const RootSystem& rs, const AdmissibleLevel& lv, const SubprincipalWeight& w,
                             const NilpotentData& nd, cd tau, const CVec& z, const QhrOptions& opt = {}) {
  QhrValue v;
  v.direct = qhr_char_direct(rs, lv, w, nd, tau, z, opt);
  v.factored = qhr_char_factored(rs, lv, w, nd, tau, z, opt, &v.D, &v.D_perturbed);
  v.rel_diff = std::abs(v.direct - v.factored) / std::max({std::abs(v.direct), std::abs(v.factored), opt.floor});
  return v;
}

// Seed projected orthogonally to x; zero when g_0 is the Cartan alone. This is
// exactly the centralizer of f for the principal and minimal gradings.
inline CVec centralizer_point(const RootSystem& rs, const NilpotentData& nd, const QVec& seed) {
  QVec z = seed - (rs.pairing(seed, nd.x) / rs.norm2(nd.x)) * nd.x;
  if (nd.g0.empty()) z = zeros(rs.ambient_dim());
  CVec out;
  for (double c : to_double(z)) out.emplace_back(c, 0.0);
  return out;
}

}  // namespace subadm
