#pragma once

// Affine bookkeeping over a finite root system: weights a*L0 + mu + b*delta,
// translations, extended affine Weyl elements, evaluation points, and the
// coroot data of the subalgebra attached to a subprincipal denominator u.

#include "rootsys.hpp"

namespace subadm {

struct AffineWeight {
  Rat level{0};  // coefficient of Lambda_0
  QVec fin;      // finite part
  Rat delta{0};  // coefficient of delta

  bool operator==(const AffineWeight& o) const { return level == o.level && fin == o.fin && delta == o.delta; }
};

inline AffineWeight operator+(const AffineWeight& a, const AffineWeight& b) {
  return {a.level + b.level, a.fin + b.fin, a.delta + b.delta};
}
inline AffineWeight operator-(const AffineWeight& a, const AffineWeight& b) {
  return {a.level - b.level, a.fin - b.fin, a.delta - b.delta};
}

// (L0|L0) = (delta|delta) = 0, (L0|delta) = 1
inline Rat pairing(const RootSystem& rs, const AffineWeight& a, const AffineWeight& b) {
  return rs.pairing(a.fin, b.fin) + a.level * b.delta + a.delta * b.level;
}

// t_gamma(lambda) = lambda + a*gamma - ((lambda|gamma) + a|gamma|^2/2) delta
inline AffineWeight translate(const RootSystem& rs, const QVec& gamma, const AffineWeight& w) {
  AffineWeight r = w;
  r.fin = w.fin + w.level * gamma;
  r.delta = w.delta - (rs.pairing(w.fin, gamma) + w.level * rs.norm2(gamma) / 2);
  return r;
}

inline AffineWeight weyl_act(const RootSystem& rs, std::size_t w, const AffineWeight& x) {
  return {x.level, rs.apply(w, x.fin), x.delta};
}

// Real coroot alpha^v + n K, K identified with delta.
struct AffineCoroot {
  QVec fin;
  Rat k{0};
};

// t_beta * wbar
struct ExtendedWeylElement {
  QVec beta;
  std::size_t wbar = 0;

  bool operator==(const ExtendedWeylElement& o) const { return beta == o.beta && wbar == o.wbar; }
};

inline ExtendedWeylElement compose(const RootSystem& rs, const ExtendedWeylElement& a, const ExtendedWeylElement& b) {
  return {a.beta + rs.apply(a.wbar, b.beta), rs.compose(a.wbar, b.wbar)};
}

inline ExtendedWeylElement inverse(const RootSystem& rs, const ExtendedWeylElement& a) {
  std::size_t wi = rs.inverse(a.wbar);
  return {-rs.apply(wi, a.beta), wi};
}

inline int sign(const RootSystem& rs, const ExtendedWeylElement& a) { return rs.sign(a.wbar); }

inline AffineWeight act(const RootSystem& rs, const ExtendedWeylElement& y, const AffineWeight& x) {
  return translate(rs, y.beta, weyl_act(rs, y.wbar, x));
}

// On coroots: t_beta(a^v + nK) = a^v + (n - (beta|a^v)) K
inline AffineCoroot act(const RootSystem& rs, const ExtendedWeylElement& y, const AffineCoroot& c) {
  QVec f = rs.apply(y.wbar, c.fin);
  return {f, c.k - rs.pairing(y.beta, f)};
}

inline bool is_positive(const RootSystem& rs, const AffineCoroot& c) {
  if (c.k > 0) return true;
  if (c.k < 0) return false;
  return rs.is_positive_root(c.fin);
}

// (tau, z, t) standing for 2 pi i (-tau d + z + t K)
struct EvalPoint {
  cd tau;
  CVec z;
  cd t;
};

// (tau, z, t) = (u' tau, z, t/u')_u
inline EvalPoint to_u_coords(const EvalPoint& p, int uprime) {
  return {p.tau * double(uprime), p.z, p.t / double(uprime)};
}
inline EvalPoint from_u_coords(const EvalPoint& p, int uprime) {
  return {p.tau / double(uprime), p.z, p.t * double(uprime)};
}

inline EvalPoint s_transform(const RootSystem& rs, const EvalPoint& p) {
  CVec z(p.z.size());
  for (std::size_t i = 0; i < z.size(); ++i) z[i] = p.z[i] / p.tau;
  return {-1.0 / p.tau, z, p.t - rs.pairing(p.z, p.z) / (2.0 * p.tau)};
}

inline void check_point(const RootSystem& rs, const EvalPoint& p) {
  if (!(p.tau.imag() > 0)) throw Error(ErrorKind::NotConvergent, "Im tau must be positive");
  if (static_cast<int>(p.z.size()) != rs.ambient_dim()) throw Error(ErrorKind::DimensionMismatch, "z has wrong dimension");
}

// exponent 2 pi i (-tau b + (mu|z) + t a), returned before exponentiation
inline cd exponent(const RootSystem& rs, const AffineWeight& w, const EvalPoint& p) {
  cd s = -p.tau * to_double(w.delta) + rs.pairing(to_double(w.fin), p.z) + p.t * to_double(w.level);
  return cd(0, kTwoPi) * s;
}

inline cd eval_exponential(const RootSystem& rs, const AffineWeight& w, const EvalPoint& p) {
  return std::exp(exponent(rs, w, p));
}

// Imaginary root multiplicities of the twisted algebra. Two assignments are
// in circulation; they differ by which of l and (N-l)/(r-1) sits on the
// multiples of r. kKac puts l on the multiples and matches the product
// side of the denominator identity; it is the default.
enum class MultSwitch { kAlternate, kKac };

inline const char* to_string(MultSwitch s) { return s == MultSwitch::kAlternate ? "alternate" : "kac"; }

inline MultSwitch parse_mult_switch(const std::string& s) {
  if (s == "alternate") return MultSwitch::kAlternate;
  if (s == "kac" || s == "swapped") return MultSwitch::kKac;
  throw Error(ErrorKind::InvalidArgument, "mult switch must be 'alternate' or 'kac'");
}

inline int imaginary_multiplicity(const RootSystem& rs, int n, MultSwitch sw) {
  const int l = rs.rank(), r = rs.r_v();
  const int other = (rs.N() - l) / (r - 1);
  bool divisible = n % r == 0;
  if (sw == MultSwitch::kAlternate) return divisible ? other : l;
  return divisible ? l : other;
}

// Exponents (e1, e2) with prod_n (1-q^{u'n})^{e1} (1-q^{un})^{e2} reproducing
// the multiplicities above in the variable q^{u'}.
inline std::pair<int, int> eta_exponents(const RootSystem& rs, MultSwitch sw) {
  int e1 = imaginary_multiplicity(rs, 1, sw);
  int e2 = imaginary_multiplicity(rs, rs.r_v(), sw) - e1;
  return {e1, e2};
}

struct TwistedRootData {
  int u = 0, uprime = 0;
  std::vector<AffineCoroot> simple;  // uK - theta_s^v, alpha_1^v, ..., alpha_l^v
  AffineWeight rho_sharp;            // level h/u in the normalization (L0|K) = 1
  Rat level_sharp;                   // (rho_sharp | K#), K# = r K; equals h/u'
  MultSwitch mult = MultSwitch::kKac;

  int multiplicity(const RootSystem& rs, int n) const { return imaginary_multiplicity(rs, n, mult); }
};

inline TwistedRootData twisted_root_data(const RootSystem& rs, int u, MultSwitch sw = MultSwitch::kKac) {
  if (u <= 0 || u % rs.r_v() != 0)
    throw Error(ErrorKind::NotDivisible, "u = " + std::to_string(u) + " is not a positive multiple of " + std::to_string(rs.r_v()));
  TwistedRootData d;
  d.u = u;
  d.uprime = u / rs.r_v();
  d.mult = sw;
  d.simple.push_back({-rs.coroot(rs.theta_s()), Rat(u)});
  for (const auto& a : rs.simple_coroots()) d.simple.push_back({a, Rat(0)});
  d.rho_sharp = {Rat(rs.h(), u), rs.rho(), Rat(0)};
  d.level_sharp = d.rho_sharp.level * rs.r_v();
  return d;
}

// Evaluate a level-1 style pairing (lambda | alpha^v + nK) = (fin|alpha^v) + n*level
inline Rat pairing(const RootSystem& rs, const AffineWeight& w, const AffineCoroot& c) {
  return rs.pairing(w.fin, c.fin) + c.k * w.level;
}

// Affine reflection in the wall (x|theta_s^v) = u on finite parts.
inline QVec affine_reflect(const RootSystem& rs, int u, const QVec& x) {
  const QVec& ts = rs.theta_s();
  return x - (rs.pairing(x, rs.coroot(ts)) - Rat(u)) * ts;
}

}  // namespace subadm
