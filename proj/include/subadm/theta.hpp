#pragma once

// Jacobi theta forms over rescalings of the root lattice, their S-transform,
// and the Dedekind eta function.

#include "affine.hpp"
#include "admissible.hpp"

#include <cmath>

namespace subadm {

// ---- truncated lattice sums --------------------------------------------------

struct LatticeSumPlan {
  std::vector<RVec> basis;  // ambient, double
  std::vector<RVec> gram;   // (b_i|b_j)
  LDL ldl;
};

inline LatticeSumPlan make_plan(const RootSystem& rs, const std::vector<QVec>& basis) {
  LatticeSumPlan plan;
  for (const auto& b : basis) plan.basis.push_back(to_double(b));
  const std::size_t n = basis.size();
  plan.gram.assign(n, RVec(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) plan.gram[i][j] = to_double(rs.pairing(basis[i], basis[j]));
  plan.ldl = ldl_upper(plan.gram);
  return plan;
}

struct LatticeSum {
  cd value;
  std::size_t terms = 0;
};

struct SumOptions {
  double tol = 1e-12;
  double ceiling = 4e4;           // cap on the energy window, in units of 1/(2 pi)
  std::size_t max_terms = 20'000'000;
};

// Truncation window for sum_{gamma in L} exp(2 pi i [(x|z) + tau |x|^2 / (2m)]),
// x = shift + step*gamma: the Gaussian centre in lattice coordinates and a
// squared radius keeping every term within tol*exp(-slack) of the dominant
// one. The slack absorbs the polynomial growth of shell counts.
struct SumWindow {
  RVec centre;
  double radius2 = 0;
  IVec nearest;
};

inline SumWindow sum_window(const RootSystem& rs, const LatticeSumPlan& plan, const RVec& shift, double step, double m,
                            cd tau, const CVec& z, const SumOptions& opt) {
  if (!(tau.imag() > 0)) throw Error(ErrorKind::NotConvergent, "Im tau must be positive");
  if (!(opt.tol > 0)) throw Error(ErrorKind::InvalidArgument, "tol must be positive");
  const std::size_t n = plan.basis.size();
  const int dim = rs.ambient_dim();
  const double it = tau.imag();

  // x* = -m Im(z) / Im(tau); solve G c = ((x* - shift)/step | b_j)
  RVec d(dim);
  for (int i = 0; i < dim; ++i) d[i] = (-m * z[i].imag() / it - shift[i]) / step;
  RVec y(n), c(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = rs.pairing(d, plan.basis[i]);
    for (std::size_t k = 0; k < i; ++k) s -= plan.ldl.u[k][i] * y[k];
    y[i] = s;
  }
  for (std::size_t i = n; i-- > 0;) {
    double s = y[i] / plan.ldl.d[i];
    for (std::size_t k = i + 1; k < n; ++k) s -= plan.ldl.u[i][k] * c[k];
    c[i] = s;
  }
  SumWindow w;
  w.centre = c;
  w.nearest.resize(n);
  double q0 = 0;
  RVec g0(n);
  for (std::size_t i = 0; i < n; ++i) {
    g0[i] = std::round(c[i]);
    w.nearest[i] = static_cast<long long>(g0[i]);
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) q0 += (g0[i] - c[i]) * plan.gram[i][j] * (g0[j] - c[j]);
  const double kappa = kTwoPi * it * step * step / (2.0 * m);
  const double window = -std::log(opt.tol) + 10.0 + 2.0 * static_cast<double>(n);
  if (window > opt.ceiling) throw Error(ErrorKind::CutoffOverflow, "energy window above ceiling");
  w.radius2 = q0 + window / kappa;
  return w;
}

// Adds exp(e - ref) terms and rescales once at the end.
class ScaledSum {
 public:
  explicit ScaledSum(double ref) : ref_(ref) {}
  void add(cd e, double sign = 1.0) { acc_ += sign * std::exp(e - ref_); }
  cd value() const {
    cd v = acc_ * std::exp(ref_);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw Error(ErrorKind::CutoffOverflow, "lattice sum overflowed double range");
    return v;
  }

 private:
  double ref_;
  cd acc_ = 0;
};

// sum_{gamma in L} exp(2 pi i [(x|z) + tau |x|^2 / (2m) + tshift]), x = shift + step*gamma.
inline LatticeSum shifted_lattice_sum(const RootSystem& rs, const LatticeSumPlan& plan, const RVec& shift, double step,
                                      double m, cd tau, const CVec& z, cd tshift, const SumOptions& opt = {}) {
  SumWindow win = sum_window(rs, plan, shift, step, m, tau, z, opt);
  const std::size_t n = plan.basis.size();
  const int dim = rs.ambient_dim();
  auto expo = [&](const IVec& g) {
    RVec x(shift);
    for (std::size_t i = 0; i < n; ++i)
      if (g[i] != 0)
        for (int k = 0; k < dim; ++k) x[k] += step * static_cast<double>(g[i]) * plan.basis[i][k];
    cd e = rs.pairing(x, z) + tau * (rs.pairing(x, x) / (2.0 * m)) + tshift;
    return cd(0, kTwoPi) * e;
  };
  ScaledSum acc(expo(win.nearest).real());
  LatticeSum out;
  out.terms = enumerate_ellipsoid(
      plan.ldl, win.centre, win.radius2, [&](const IVec& g) { acc.add(expo(g)); }, opt.max_terms);
  out.value = acc.value();
  return out;
}

// ---- theta forms ---------------------------------------------------------------

// lambda = (n/u') L0 + lam with r*lam in P^v.
struct ThetaIndex {
  Rat n;
  int uprime = 1;
  QVec lam;
};

inline void validate(const RootSystem& rs, const ThetaIndex& idx) {
  if (!(idx.n > 0)) throw Error(ErrorKind::InvalidArgument, "theta index needs n > 0");
  if (!is_integral(rs.coweight_coords(Rat(rs.r_v()) * idx.lam)))
    throw Error(ErrorKind::InvalidArgument, "theta index finite part not in (1/r) P^v");
}

inline LatticeSumPlan theta_plan(const RootSystem& rs) { return make_plan(rs, rs.basis(Lattice::rQ)); }

// e^{2 pi i n t} sum_{gamma in rQ} e^{2 pi i (lam + n gamma|z)} q^{|lam + n gamma|^2 / 2n}
inline LatticeSum theta_eval_terms(const RootSystem& rs, const LatticeSumPlan& plan, const ThetaIndex& idx,
                                   const EvalPoint& pu, const SumOptions& opt = {}) {
  check_point(rs, pu);
  const double n = to_double(idx.n);
  return shifted_lattice_sum(rs, plan, to_double(idx.lam), n, n, pu.tau, pu.z, n * pu.t, opt);
}

inline cd theta_eval(const RootSystem& rs, const ThetaIndex& idx, const EvalPoint& pu, double tol = 1e-12) {
  validate(rs, idx);
  SumOptions opt;
  opt.tol = tol;
  return theta_eval_terms(rs, theta_plan(rs), idx, pu, opt).value;
}

enum class Normalization {
  kVerified,   // |M*/nM|^{-1/2}, checked by Poisson summation
  kAlternate,  // (n/r)^{-l/2} |P^v/rQ|^{-1/2}; larger by r^l
};

inline const char* to_string(Normalization n) { return n == Normalization::kVerified ? "verified" : "alternate"; }

struct TransformRow {
  std::vector<ThetaIndex> mu;
  std::vector<cd> coeff;
  double normalization = 0;
  long long index_pv_rq = 0;   // |P^v / rQ|
  std::size_t coset_count = 0; // |(1/r)P^v / n r Q|
  int ell = 0;                 // prefactor (-i tau)^{ell/2}
};

inline cd sqrt_prefactor(cd tau, int ell) { return std::pow(cd(0, -1) * tau, 0.5 * ell); }

// Coefficients of Theta_lambda(-1/tau, z/tau, t - (z|z)/2tau) in the basis
// Theta_mu(tau, z, t), mu over (1/r)P^v modulo n r Q.
inline TransformRow theta_transform_row(const RootSystem& rs, const ThetaIndex& idx,
                                        Normalization norm = Normalization::kVerified) {
  validate(rs, idx);
  const int r = rs.r_v();
  Rat s = idx.n * Rat(r * r);
  if (!is_integer(s) || s.numerator() % r != 0)
    throw Error(ErrorKind::InvalidArgument, "theta index n * r must be an integer");
  CoweightCosets cos(rs, static_cast<int>(s.numerator()), Lattice::Q);
  TransformRow row;
  row.ell = rs.rank();
  row.coset_count = cos.size();
  row.index_pv_rq = lattice_index(rs.basis(Lattice::Pv), rs.basis(Lattice::rQ));
  if (norm == Normalization::kVerified)
    row.normalization = 1.0 / std::sqrt(static_cast<double>(row.coset_count));
  else
    row.normalization = std::pow(to_double(idx.n) / r, -0.5 * rs.rank()) / std::sqrt(double(row.index_pv_rq));
  for (const auto& rep : cos.representatives()) {
    ThetaIndex m{idx.n, idx.uprime, Rat(1, r) * rep};
    row.coeff.push_back(row.normalization * phase(-rs.pairing(idx.lam, m.lam) / idx.n));
    row.mu.push_back(std::move(m));
  }
  return row;
}

// ---- eta -------------------------------------------------------------------

// eta(tau) = q^{1/24} prod_{n <= terms} (1 - q^n). terms = 0 picks a count
// from |q|; otherwise the tail |q|^terms must be negligible.
inline cd dedekind_eta(cd tau, int terms = 0) {
  if (!(tau.imag() > 0)) throw Error(ErrorKind::NotConvergent, "Im tau must be positive");
  const double aq = std::exp(-kTwoPi * tau.imag());
  if (terms == 0) terms = static_cast<int>(std::ceil(40.0 / (kTwoPi * tau.imag() / std::log(10.0)))) + 2;
  if (std::pow(aq, terms) > 1e-15) throw Error(ErrorKind::NotConvergent, "eta product truncated too early");
  cd q = std::exp(cd(0, kTwoPi) * tau);
  cd prod = 1, qn = 1;
  for (int n = 1; n <= terms; ++n) {
    qn *= q;
    prod *= 1.0 - qn;
  }
  return std::exp(cd(0, kTwoPi) * tau / 24.0) * prod;
}

}  // namespace subadm
