#pragma once

// The modular S-matrix of subprincipal admissible numerators, the triple
// combinatorics behind it, and numeric certification of the transformation.

#include "numerators.hpp"
#include "parallel.hpp"

#include <set>

namespace subadm {

// ---- triples ---------------------------------------------------------------------

struct Triple {
  std::size_t chamber = 0;  // index into TripleSet::points
  std::size_t coset = 0;    // index into the P^v/uQ representatives
  std::size_t wbar = 0;
  bool regular = false;
};

// (vbar, beta, wbar) with vbar in the closed chamber (vbar|alpha_i^v) >= 0,
// (vbar|theta_s^v) <= p. Stored unscaled; the r-scaled form is r*vbar.
struct TripleSet {
  AdmissibleLevel level;
  int r = 0;
  std::vector<QVec> points;
  std::vector<bool> point_regular;  // (vbar|alpha^v) not in pZ for every root
  std::vector<QVec> cosets;
  std::vector<Triple> triples;

  std::size_t regular_count() const {
    return static_cast<std::size_t>(std::count_if(triples.begin(), triples.end(), [](const Triple& t) { return t.regular; }));
  }
};

inline bool chamber_point_regular(const RootSystem& rs, int p, const QVec& v) {
  for (const auto& a : rs.positive_roots()) {
    Rat c = rs.pairing(v, rs.coroot(a));
    if (is_integer(c) && c.numerator() % p == 0) return false;
  }
  return true;
}

// Dominant integral vbar with (vbar|theta_s^v) <= p, lexicographic in the
// fundamental-weight coefficients.
inline std::vector<QVec> closed_chamber_points(const RootSystem& rs, int p) {
  const auto marks = theta_s_comarks(rs);
  const int l = rs.rank();
  std::vector<QVec> out;
  IVec a(l, 0);
  std::function<void(int, long long)> rec = [&](int i, long long used) {
    if (i == l) {
      out.push_back(combine(from_ints(a), rs.fundamental_weights()));
      return;
    }
    for (long long v = 0; used + v * marks[i] <= p; ++v) {
      a[i] = v;
      rec(i + 1, used + v * marks[i]);
    }
  };
  rec(0, 0);
  return out;
}

inline TripleSet build_triple_sets(const RootSystem& rs, const AdmissibleLevel& lv) {
  require_subprincipal(lv);
  TripleSet ts;
  ts.level = lv;
  ts.r = rs.r_v();
  ts.points = closed_chamber_points(rs, lv.p);
  for (const auto& v : ts.points) ts.point_regular.push_back(chamber_point_regular(rs, lv.p, v));
  ts.cosets = CoweightCosets(rs, lv.u, Lattice::Q).representatives();
  for (std::size_t i = 0; i < ts.points.size(); ++i)
    for (std::size_t c = 0; c < ts.cosets.size(); ++c)
      for (std::size_t w = 0; w < rs.weyl_order(); ++w) ts.triples.push_back({i, c, w, bool(ts.point_regular[i])});
  return ts;
}

// sum_{w in W} eps(w) exp(-2 pi i (u/p)(vbar|w vbar')), phases exact.
inline cd singular_sum(const RootSystem& rs, const AdmissibleLevel& lv, const QVec& vbar, const QVec& vbar_prime) {
  cd s = 0;
  const Rat c(lv.u, lv.p);
  for (std::size_t w = 0; w < rs.weyl_order(); ++w)
    s += double(rs.sign(w)) * phase(-c * rs.pairing(vbar, rs.apply(w, vbar_prime)));
  return s;
}

// The weight pairs (Lambda', wbar') hit each class
// wbar' vbar' + (p/u) beta' mod pQ the same number of times; returns that
// number, or throws if the fibres are uneven.
inline std::size_t fibre_multiplicity(const RootSystem& rs, const AdmissibleLevel& lv,
                                      const std::vector<SubprincipalWeight>& weights) {
  std::map<QVec, std::size_t, QVecLess> count;
  const auto pq = [&] {
    std::vector<QVec> b;
    for (const auto& a : rs.simple_roots()) b.push_back(Rat(lv.p) * a);
    return b;
  }();
  for (const auto& w : weights)
    for (std::size_t wb = 0; wb < rs.weyl_order(); ++wb) {
      QVec y = rs.apply(wb, w.vbar) + Rat(lv.p, lv.u) * w.y.beta;
      QVec c = coordinates(pq, y);
      for (auto& x : c) x = frac(x);
      ++count[c];
    }
  std::size_t mu = count.begin()->second;
  for (const auto& [k, v] : count)
    if (v != mu) throw Error(ErrorKind::InvalidArgument, "uneven fibres in the weight/Weyl pairing");
  return mu;
}

// ---- S-matrix --------------------------------------------------------------------

struct SMatrixConstant {
  double value = 0;
  Normalization mode = Normalization::kVerified;
  std::size_t fibre = 0;  // mu
  Rat y_size;             // (up)^l det Gram(Q)
  long long index_pv_rq = 0;
};

// Verified: |Y|^{-1/2} / mu. Alternate: (up)^{-l/2} |P^v/rQ|^{-1/2}.
inline SMatrixConstant smatrix_constant(const RootSystem& rs, const AdmissibleLevel& lv,
                                        const std::vector<SubprincipalWeight>& weights, Normalization mode) {
  SMatrixConstant c;
  c.mode = mode;
  c.index_pv_rq = lattice_index(rs.basis(Lattice::Pv), rs.basis(Lattice::rQ));
  c.fibre = fibre_multiplicity(rs, lv, weights);
  Rat up(lv.u * lv.p);
  c.y_size = det(rs.gram());
  for (int i = 0; i < rs.rank(); ++i) c.y_size *= up;
  if (mode == Normalization::kVerified)
    c.value = 1.0 / (std::sqrt(to_double(c.y_size)) * double(c.fibre));
  else
    c.value = std::pow(double(lv.u * lv.p), -0.5 * rs.rank()) / std::sqrt(double(c.index_pv_rq));
  return c;
}

// eps(ybar ybar') sum_w eps(w) e^{-2 pi i (u/p)(v|w v')} e^{-2 pi i ((p/u)(b|b') + (v|b') + (v'|b))},
// without the constant.
inline cd s_entry_phase_sum(const RootSystem& rs, const AdmissibleLevel& lv, const SubprincipalWeight& a,
                            const SubprincipalWeight& b) {
  const Rat c(lv.u, lv.p);
  const Rat beta_part = Rat(lv.p, lv.u) * rs.pairing(a.y.beta, b.y.beta) + rs.pairing(a.vbar, b.y.beta) +
                        rs.pairing(b.vbar, a.y.beta);
  cd s = 0;
  for (std::size_t w = 0; w < rs.weyl_order(); ++w)
    s += double(rs.sign(w)) * phase(-(c * rs.pairing(a.vbar, rs.apply(w, b.vbar)) + beta_part));
  return double(sign(rs, a.y) * sign(rs, b.y)) * s;
}

struct SMatrix {
  AdmissibleLevel level;
  std::vector<SubprincipalWeight> weights;
  SMatrixConstant constant;
  std::vector<cd> entries;  // row-major, tau-independent b(Lambda, Lambda')
  int ell = 0;

  std::size_t order() const { return weights.size(); }
  cd operator()(std::size_t i, std::size_t j) const { return entries[i * order() + j]; }
};

inline cd s_entry(const RootSystem& rs, const AdmissibleLevel& lv, const SubprincipalWeight& a,
                  const SubprincipalWeight& b, const SMatrixConstant& c) {
  return c.value * s_entry_phase_sum(rs, lv, a, b);
}

inline cd s_entry(const SMatrix& s, const RootSystem& /*rs*/, std::size_t i, std::size_t j) {
  if (i >= s.order() || j >= s.order()) throw Error(ErrorKind::IndexMismatch, "weight index out of range");
  return s(i, j);
}

inline SMatrix build_smatrix(const RootSystem& rs, const AdmissibleLevel& lv,
                             Normalization mode = Normalization::kVerified, int threads = 1) {
  SMatrix s;
  s.level = lv;
  s.ell = rs.rank();
  s.weights = enumerate_all(rs, lv);
  s.constant = smatrix_constant(rs, lv, s.weights, mode);
  const std::size_t n = s.weights.size();
  s.entries.assign(n * n, 0);
  parallel_for(n * n, threads, [&](std::size_t k) {
    s.entries[k] = s_entry(rs, lv, s.weights[k / n], s.weights[k % n], s.constant);
  });
  return s;
}

// ||B||_1 ||B^{-1}||_1, inverse by Gauss-Jordan with partial pivoting.
inline double condition_number_1(const SMatrix& s) {
  const std::size_t n = s.order();
  std::vector<std::vector<cd>> a(n, std::vector<cd>(2 * n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = s(i, j);
    a[i][n + i] = 1;
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
    if (std::abs(a[piv][c]) < 1e-300) return std::numeric_limits<double>::infinity();
    std::swap(a[piv], a[c]);
    cd d = a[c][c];
    for (auto& x : a[c]) x /= d;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c] == cd(0)) continue;
      cd f = a[r][c];
      for (std::size_t k = 0; k < 2 * n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  auto norm1 = [&](auto get) {
    double best = 0;
    for (std::size_t j = 0; j < n; ++j) {
      double col = 0;
      for (std::size_t i = 0; i < n; ++i) col += std::abs(get(i, j));
      best = std::max(best, col);
    }
    return best;
  };
  return norm1([&](std::size_t i, std::size_t j) { return s(i, j); }) *
         norm1([&](std::size_t i, std::size_t j) { return a[i][n + j]; });
}

// Numerical rank by Gaussian elimination with partial pivoting.
inline std::size_t numeric_rank(const SMatrix& s, double rel_tol = 1e-9) {
  const std::size_t n = s.order();
  std::vector<std::vector<cd>> a(n, std::vector<cd>(n));
  double scale = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = s(i, j), scale = std::max(scale, std::abs(a[i][j]));
  std::size_t rank = 0;
  for (std::size_t c = 0; c < n && rank < n; ++c) {
    std::size_t piv = rank;
    for (std::size_t r = rank + 1; r < n; ++r)
      if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
    if (std::abs(a[piv][c]) <= rel_tol * scale) continue;
    std::swap(a[piv], a[rank]);
    for (std::size_t r = rank + 1; r < n; ++r) {
      cd f = a[r][c] / a[rank][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[rank][k];
    }
    ++rank;
  }
  return rank;
}

// Weights that coincide modulo C delta (same level and finite part) share a
// normalized numerator; this counts the distinct classes.
inline std::size_t distinct_mod_delta(const std::vector<SubprincipalWeight>& ws) {
  std::set<QVec, QVecLess> seen;
  for (const auto& w : ws) seen.insert(w.shifted.fin);
  return seen.size();
}

// ---- verification ----------------------------------------------------------------

// Smallest distance of (alpha|Re z) to an integer over positive roots.
inline double wall_distance(const RootSystem& rs, const CVec& z) {
  double best = 1.0;
  for (const auto& a : rs.positive_roots()) {
    double x = root_pairing(rs, a, z).real();
    best = std::min(best, std::abs(x - std::round(x)));
  }
  return best;
}

struct ModularReport {
  double max_residual = 0;
  std::vector<double> residual_per_point;
  std::vector<double> residual_per_weight;  // max over points
  double s_squared_residual = -1;            // < 0 when not requested
  double condition_number = 0;
  SMatrixConstant constant;
};

struct ModularOptions {
  double tol = 1e-12;
  double wall_floor = 1e-3;
  double relative_floor = 1e-8;  // times max |A| over the level
  bool s_squared = false;
  int threads = 1;
  Normalization normalization = Normalization::kVerified;
};

inline std::vector<cd> numerators_at(const RootSystem& rs, const AdmissibleLevel& lv,
                                     const std::vector<SubprincipalWeight>& ws, const EvalPoint& p, double tol,
                                     int threads) {
  std::vector<cd> out(ws.size());
  parallel_for(ws.size(), threads, [&](std::size_t i) { out[i] = numerator_eval_theta(rs, lv, ws[i], p, tol); });
  return out;
}

inline std::vector<cd> apply_smatrix(const SMatrix& s, const std::vector<cd>& v, cd tau) {
  const std::size_t n = s.order();
  const cd pre = sqrt_prefactor(tau, s.ell);
  std::vector<cd> out(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out[i] += s(i, j) * v[j];
    out[i] *= pre;
  }
  return out;
}

inline double max_relative_residual(const std::vector<cd>& lhs, const std::vector<cd>& rhs, double floor_frac,
                                    std::vector<double>* per = nullptr) {
  double scale = 0;
  for (const auto& x : lhs) scale = std::max(scale, std::abs(x));
  const double floor = floor_frac * scale;
  double worst = 0;
  for (std::size_t i = 0; i < lhs.size(); ++i) {
    double r = std::abs(lhs[i] - rhs[i]) / std::max(std::abs(lhs[i]), floor);
    if (per) (*per)[i] = std::max((*per)[i], r);
    worst = std::max(worst, r);
  }
  return worst;
}

// A(S.p) against (-i tau)^{l/2} sum b A(p) for every weight and point.
inline ModularReport verify_modular_transform(const RootSystem& rs, const AdmissibleLevel& lv,
                                        const std::vector<EvalPoint>& points, const ModularOptions& opt = {}) {
  SMatrix s = build_smatrix(rs, lv, opt.normalization, opt.threads);
  ModularReport rep;
  rep.constant = s.constant;
  rep.condition_number = condition_number_1(s);
  rep.residual_per_weight.assign(s.order(), 0);
  for (const auto& p : points) {
    check_point(rs, p);
    if (wall_distance(rs, p.z) < opt.wall_floor)
      throw Error(ErrorKind::DegeneratePoint, "z is within " + std::to_string(opt.wall_floor) + " of a Weyl wall");
    auto base = numerators_at(rs, lv, s.weights, p, opt.tol, opt.threads);
    auto lhs = numerators_at(rs, lv, s.weights, s_transform(rs, p), opt.tol, opt.threads);
    auto rhs = apply_smatrix(s, base, p.tau);
    double r = max_relative_residual(lhs, rhs, opt.relative_floor, &rep.residual_per_weight);
    rep.residual_per_point.push_back(r);
    rep.max_residual = std::max(rep.max_residual, r);
    if (opt.s_squared) {
      // S^2 sends (tau, z, t) to (tau, -z, t)
      EvalPoint sp = s_transform(rs, p);
      auto once = apply_smatrix(s, base, p.tau);   // A at S.p
      auto twice = apply_smatrix(s, once, sp.tau);  // A at S^2.p
      EvalPoint back{p.tau, p.z, p.t};
      for (auto& zi : back.z) zi = -zi;
      auto direct = numerators_at(rs, lv, s.weights, back, opt.tol, opt.threads);
      rep.s_squared_residual = std::max(rep.s_squared_residual, max_relative_residual(direct, twice, opt.relative_floor));
    }
  }
  return rep;
}

}  // namespace subadm
