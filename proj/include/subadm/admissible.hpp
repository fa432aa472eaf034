#pragma once

// Subprincipal admissible levels k = p/u - h^v (r | u, gcd(p,u) = 1, p >= h),
// the alcove-reduction bijection P^v/uQ -> Phi_(u), and weight enumeration.

#include "affine.hpp"

#include <numeric>

namespace subadm {

enum class LevelKind { kSubprincipal, kPrincipal, kInvalid };

inline const char* to_string(LevelKind k) {
  switch (k) {
    case LevelKind::kSubprincipal: return "subprincipal";
    case LevelKind::kPrincipal: return "principal";
    case LevelKind::kInvalid: return "invalid";
  }
  return "";
}

struct AdmissibleLevel {
  int p = 0, u = 0, uprime = 0;
  Rat k;
  LevelKind kind = LevelKind::kInvalid;
};

inline AdmissibleLevel classify_level(const RootSystem& rs, int p, int u) {
  if (p < 1 || u < 1) throw Error(ErrorKind::InvalidArgument, "p and u must be positive");
  AdmissibleLevel lv;
  lv.p = p;
  lv.u = u;
  lv.k = Rat(p, u) - Rat(rs.h_dual());
  const int r = rs.r_v();
  if (std::gcd(p, u) == 1) {
    if (u % r == 0 && p >= rs.h())
      lv.kind = LevelKind::kSubprincipal;
    else if (std::gcd(u, r) == 1 && p >= rs.h_dual())
      lv.kind = LevelKind::kPrincipal;
  }
  lv.uprime = (lv.kind == LevelKind::kSubprincipal) ? u / r : 0;
  return lv;
}

// ---- cosets ------------------------------------------------------------------

// P^v modulo s*L for L = Q or Q^v, in fundamental coweight coordinates.
class CoweightCosets {
 public:
  CoweightCosets(const RootSystem& rs, int s, Lattice sub) : rs_(&rs) {
    IMat m;
    for (const auto& b : rs.basis(sub)) m.push_back(to_ints(rs.coweight_coords(Rat(s) * b)));
    space_ = CosetSpace(m);
    for (const auto& c : space_.representatives()) reps_.push_back(to_vector(c));
  }

  std::size_t size() const { return reps_.size(); }
  const std::vector<QVec>& representatives() const { return reps_; }

  // index of the coset containing beta (beta in P^v)
  std::size_t index_of(const QVec& beta) const {
    IVec r = space_.reduce(to_ints(rs_->coweight_coords(beta)));
    std::size_t idx = 0;
    const auto& h = space_.hnf();
    for (std::size_t i = 0; i < r.size(); ++i) idx = idx * h[i][i] + r[i];
    return idx;
  }

  QVec canonical(const QVec& beta) const { return to_vector(space_.reduce(to_ints(rs_->coweight_coords(beta)))); }

 private:
  QVec to_vector(const IVec& c) const {
    QVec q;
    for (auto x : c) q.emplace_back(x);
    return combine(q, rs_->fundamental_coweights());
  }
  const RootSystem* rs_;
  CosetSpace space_{IMat{}};
  std::vector<QVec> reps_;
};

// ---- alcove reduction ----------------------------------------------------------

struct AlcoveOptions {
  bool principal = false;
  int max_steps = 100000;
};

// Walls of the alcove {(x|alpha_i) > 0, (x|theta^v_*) < u}, index 0 affine.
inline std::vector<Rat> alcove_walls(const RootSystem& rs, int u, const QVec& x, bool principal) {
  std::vector<Rat> w;
  const QVec& top = principal ? rs.theta() : rs.theta_s();
  w.push_back(Rat(u) - rs.pairing(x, rs.coroot(top)));
  for (const auto& a : rs.simple_roots()) w.push_back(rs.pairing(x, a));
  return w;
}

// The S coroots whose images must be positive.
inline std::vector<AffineCoroot> wall_coroots(const RootSystem& rs, int u, bool principal) {
  std::vector<AffineCoroot> s;
  const QVec& top = principal ? rs.theta() : rs.theta_s();
  s.push_back({-rs.coroot(top), Rat(u)});
  for (const auto& a : rs.simple_coroots()) s.push_back({a, Rat(0)});
  return s;
}

inline bool wall_positive(const RootSystem& rs, int u, const ExtendedWeylElement& y, bool principal = false) {
  for (const auto& c : wall_coroots(rs, u, principal))
    if (!is_positive(rs, act(rs, y, c))) return false;
  return true;
}

namespace detail {

inline ExtendedWeylElement reduce_to_alcove(const RootSystem& rs, int u, const QVec& beta, const QVec& start,
                                            const AlcoveOptions& opt) {
  const QVec& top = opt.principal ? rs.theta() : rs.theta_s();
  const QVec topv = rs.coroot(top);
  QVec x = start - beta;
  QMat lin = identity(rs.ambient_dim());
  QVec shift = zeros(rs.ambient_dim());  // current map x -> lin x + shift
  const std::size_t nsimple = rs.simple_roots().size();
  std::vector<QMat> refl;
  for (std::size_t i = 0; i < nsimple; ++i) {
    QMat m = identity(rs.ambient_dim());
    const QVec& a = rs.simple_roots()[i];
    QVec av = rs.coroot(a);
    for (int r = 0; r < rs.ambient_dim(); ++r)
      for (int c = 0; c < rs.ambient_dim(); ++c) m[r][c] -= rs.form_scale() * a[r] * av[c];
    refl.push_back(std::move(m));
  }
  QMat rtop = identity(rs.ambient_dim());
  for (int r = 0; r < rs.ambient_dim(); ++r)
    for (int c = 0; c < rs.ambient_dim(); ++c) rtop[r][c] -= rs.form_scale() * top[r] * topv[c];

  for (int step = 0;; ++step) {
    if (step > opt.max_steps)
      throw Error(ErrorKind::NonTermination, "alcove reduction did not terminate for beta = " + to_string(beta));
    auto walls = alcove_walls(rs, u, x, opt.principal);
    std::size_t worst = 0;
    for (std::size_t i = 1; i < walls.size(); ++i)
      if (walls[i] < walls[worst]) worst = i;
    if (walls[worst] > 0) break;
    if (walls[worst] == 0)
      throw Error(ErrorKind::NonTermination, "reduction point lies on a wall for beta = " + to_string(beta));
    if (worst == 0) {
      // x -> r_top(x) + u*top
      x = rtop * x + Rat(u) * top;
      shift = rtop * shift + Rat(u) * top;
      lin = rtop * lin;
    } else {
      x = refl[worst - 1] * x;
      shift = refl[worst - 1] * shift;
      lin = refl[worst - 1] * lin;
    }
  }
  // w(x) = lin x + shift; y = t_beta w^{-1} = t_{beta - lin^{-1} shift} lin^{-1}
  std::size_t wi = rs.inverse(rs.index_of(lin));
  return {beta - rs.apply(wi, shift), wi};
}

}  // namespace detail

inline ExtendedWeylElement phi(const RootSystem& rs, int u, const QVec& beta, const AlcoveOptions& opt = {}) {
  if (u <= 0 || u % rs.r_v() != 0) throw Error(ErrorKind::NotDivisible, "phi needs r | u");
  if (!is_integral(rs.coweight_coords(beta))) throw Error(ErrorKind::InvalidArgument, "beta is not in P^v");
  AlcoveOptions o = opt;
  o.principal = false;
  QVec start = Rat(1, rs.h()) * rs.rho_v();
  ExtendedWeylElement y = detail::reduce_to_alcove(rs, u, beta, start, o);
  if (!wall_positive(rs, u, y)) throw Error(ErrorKind::NonTermination, "phi postcondition failed");
  return y;
}

// Principal analogue: walls uK - theta^v, cosets P^v/uQ^v. The start point is
// pulled closer to the origin so that no P^v translate sits on a wall.
inline ExtendedWeylElement phi_principal(const RootSystem& rs, int u, const QVec& beta, const AlcoveOptions& opt = {}) {
  if (u <= 0 || std::gcd(u, rs.r_v()) != 1) throw Error(ErrorKind::InvalidArgument, "phi_principal needs gcd(u, r) = 1");
  if (!is_integral(rs.coweight_coords(beta))) throw Error(ErrorKind::InvalidArgument, "beta is not in P^v");
  AlcoveOptions o = opt;
  o.principal = true;
  QVec start = Rat(1, 2 * rs.h() * rs.r_v()) * rs.rho_v();
  ExtendedWeylElement y = detail::reduce_to_alcove(rs, u, beta, start, o);
  if (!wall_positive(rs, u, y, true)) throw Error(ErrorKind::NonTermination, "phi_principal postcondition failed");
  return y;
}

// ---- weights -------------------------------------------------------------------

struct SubprincipalWeight {
  std::size_t index = 0;
  std::size_t coset = 0;        // index into the P^v/uQ representatives
  std::size_t chamber = 0;      // index into the quasidominant list
  ExtendedWeylElement y;        // t_beta ybar in Phi_(u)
  QVec vbar;                    // Lambda + rho = y((p/u) L0 + vbar)
  AffineWeight lambda;          // Lambda
  AffineWeight shifted;         // Lambda + rho
  Rat m;                        // |Lambda+rho|^2 / (2(k+h^v))
};

inline AffineWeight affine_rho(const RootSystem& rs) { return {Rat(rs.h_dual()), rs.rho(), Rat(0)}; }

// Coefficients of theta_s^v in the simple coroots.
inline std::vector<long long> theta_s_comarks(const RootSystem& rs) {
  std::vector<long long> m;
  QVec tv = rs.coroot(rs.theta_s());
  for (const auto& w : rs.fundamental_weights()) m.push_back(rs.pairing(w, tv).numerator());
  return m;
}

// vbar = sum a_i L_i with a_i >= 1 and (vbar|theta_s^v) <= p - 1, in
// lexicographic order of (a_1, ..., a_l).
inline std::vector<QVec> quasidominant_vbars(const RootSystem& rs, int p) {
  const auto marks = theta_s_comarks(rs);
  const int l = rs.rank();
  std::vector<QVec> out;
  IVec a(l, 1);
  std::function<void(int, long long)> rec = [&](int i, long long used) {
    if (i == l) {
      QVec c;
      for (auto x : a) c.emplace_back(x);
      out.push_back(combine(c, rs.fundamental_weights()));
      return;
    }
    long long rest = 0;
    for (int j = i + 1; j < l; ++j) rest += marks[j];
    for (long long v = 1; used + v * marks[i] + rest <= p - 1; ++v) {
      a[i] = v;
      rec(i + 1, used + v * marks[i]);
    }
  };
  rec(0, 0);
  return out;
}

inline SubprincipalWeight make_weight(const RootSystem& rs, const AdmissibleLevel& lv, const ExtendedWeylElement& y,
                                      const QVec& vbar) {
  SubprincipalWeight w;
  w.y = y;
  w.vbar = vbar;
  w.shifted = act(rs, y, AffineWeight{Rat(lv.p, lv.u), vbar, Rat(0)});
  w.lambda = w.shifted - affine_rho(rs);
  w.m = pairing(rs, w.shifted, w.shifted) * Rat(lv.u) / Rat(2 * lv.p);
  return w;
}

inline void require_subprincipal(const AdmissibleLevel& lv) {
  if (lv.kind != LevelKind::kSubprincipal)
    throw Error(ErrorKind::InvalidArgument, "level p=" + std::to_string(lv.p) + ", u=" + std::to_string(lv.u) + " is not subprincipal");
}

inline std::vector<SubprincipalWeight> enumerate_quasidominant(const RootSystem& rs, const AdmissibleLevel& lv) {
  require_subprincipal(lv);
  std::vector<SubprincipalWeight> out;
  ExtendedWeylElement e{zeros(rs.ambient_dim()), rs.identity_index()};
  auto vs = quasidominant_vbars(rs, lv.p);
  for (std::size_t i = 0; i < vs.size(); ++i) {
    auto w = make_weight(rs, lv, e, vs[i]);
    w.index = i;
    w.chamber = i;
    out.push_back(std::move(w));
  }
  return out;
}

// Phi_(u) in coset order.
inline std::vector<ExtendedWeylElement> phi_image(const RootSystem& rs, int u) {
  CoweightCosets cos(rs, u, Lattice::Q);
  std::vector<ExtendedWeylElement> ys;
  for (const auto& b : cos.representatives()) ys.push_back(phi(rs, u, b));
  return ys;
}

// All of P^k_+: for each coset of P^v/uQ (outer) and each quasidominant
// chamber weight (inner).
inline std::vector<SubprincipalWeight> enumerate_all(const RootSystem& rs, const AdmissibleLevel& lv) {
  require_subprincipal(lv);
  auto ys = phi_image(rs, lv.u);
  auto vs = quasidominant_vbars(rs, lv.p);
  std::vector<SubprincipalWeight> out;
  for (std::size_t c = 0; c < ys.size(); ++c)
    for (std::size_t i = 0; i < vs.size(); ++i) {
      auto w = make_weight(rs, lv, ys[c], vs[i]);
      w.index = out.size();
      w.coset = c;
      w.chamber = i;
      out.push_back(std::move(w));
    }
  return out;
}

// Decomposition Lambda + rho = Lambda^{#0} + rho_u^#, for y = e.
inline AffineWeight sharp_part(const RootSystem& rs, const AdmissibleLevel& lv, const SubprincipalWeight& w) {
  auto td = twisted_root_data(rs, lv.u);
  return w.shifted - td.rho_sharp;
}

}  // namespace subadm
