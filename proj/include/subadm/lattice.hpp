#pragma once

// Integer lattices: Hermite normal form, coset representatives, indices,
// and Fincke-Pohst enumeration of lattice points in an ellipsoid.

#include "exact.hpp"

#include <cmath>
#include <functional>

namespace subadm {

using IVec = std::vector<long long>;
using IMat = std::vector<IVec>;

// Row-style HNF: returns an upper triangular basis (positive diagonal) of the
// row lattice of m. m must have full rank.
inline IMat hermite_normal_form(IMat m) {
  const std::size_t n = m.size();
  for (std::size_t col = 0; col < n; ++col) {
    for (;;) {
      // pick the smallest nonzero |entry| at or below the diagonal
      std::size_t piv = n;
      for (std::size_t r = col; r < n; ++r)
        if (m[r][col] != 0 && (piv == n || std::llabs(m[r][col]) < std::llabs(m[piv][col]))) piv = r;
      if (piv == n) throw Error(ErrorKind::InvalidArgument, "lattice basis is rank deficient");
      std::swap(m[piv], m[col]);
      bool done = true;
      for (std::size_t r = col + 1; r < n; ++r) {
        if (m[r][col] == 0) continue;
        long long q = floor_div(m[r][col], m[col][col]);
        for (std::size_t c = 0; c < n; ++c) m[r][c] -= q * m[col][c];
        if (m[r][col] != 0) done = false;
      }
      if (done) break;
    }
    if (m[col][col] < 0)
      for (auto& x : m[col]) x = -x;
    for (std::size_t r = 0; r < col; ++r) {
      long long q = floor_div(m[r][col], m[col][col]);
      for (std::size_t c = 0; c < n; ++c) m[r][c] -= q * m[col][c];
    }
  }
  return m;
}

// Z^n modulo the row lattice of a sublattice basis. Representatives are the
// points of the box prod [0, d_i) where d_i is the HNF diagonal.
class CosetSpace {
 public:
  explicit CosetSpace(const IMat& sub) : h_(hermite_normal_form(sub)) {}

  std::size_t size() const {
    std::size_t s = 1;
    for (std::size_t i = 0; i < h_.size(); ++i) s *= static_cast<std::size_t>(h_[i][i]);
    return s;
  }

  IVec reduce(IVec x) const {
    for (std::size_t i = 0; i < h_.size(); ++i) {
      long long q = floor_div(x[i], h_[i][i]);
      if (q != 0)
        for (std::size_t c = i; c < x.size(); ++c) x[c] -= q * h_[i][c];
    }
    return x;
  }

  bool contains(const IVec& x) const {
    IVec r = reduce(x);
    return std::all_of(r.begin(), r.end(), [](long long v) { return v == 0; });
  }

  // all representatives, lexicographic in the box
  std::vector<IVec> representatives() const {
    std::vector<IVec> out;
    const std::size_t n = h_.size();
    IVec cur(n, 0);
    for (;;) {
      out.push_back(cur);
      std::size_t i = n;
      while (i > 0) {
        --i;
        if (++cur[i] < h_[i][i]) break;
        cur[i] = 0;
        if (i == 0) return out;
      }
      if (n == 0) return out;
    }
  }

  const IMat& hnf() const { return h_; }

 private:
  IMat h_;
};

inline IVec to_ints(const QVec& v) {
  IVec r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!is_integer(v[i])) throw Error(ErrorKind::NotASublattice, "non-integral coordinate " + to_string(v[i]));
    r[i] = v[i].numerator();
  }
  return r;
}

// Coordinates of x in a basis (rows), via the plain Gram system. Throws if
// x is not in the span.
inline QVec coordinates(const std::vector<QVec>& basis, const QVec& x) {
  const std::size_t n = basis.size();
  QMat g(n, zeros(n));
  QVec rhs(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) g[i][j] = dot(basis[i], basis[j]);
    rhs[i] = dot(x, basis[i]);
  }
  QVec c = solve(g, rhs);
  if (combine(c, basis) != x) throw Error(ErrorKind::NotASublattice, "vector not in span of basis");
  return c;
}

// [L1 : L2] for bases given as ambient vectors; L2 must lie in L1.
inline long long lattice_index(const std::vector<QVec>& l1, const std::vector<QVec>& l2) {
  if (l1.size() != l2.size()) throw Error(ErrorKind::DimensionMismatch, "lattices of different rank");
  QMat change;
  for (const auto& v : l2) {
    QVec c = coordinates(l1, v);
    if (!is_integral(c)) throw Error(ErrorKind::NotASublattice, "basis change is not integral");
    change.push_back(c);
  }
  Rat d = det(change);
  return std::llabs(d.numerator());
}

// ---- ellipsoid enumeration -------------------------------------------------

// G = U^T D U with U unit upper triangular.
struct LDL {
  RVec d;
  std::vector<RVec> u;
};

inline LDL ldl_upper(const std::vector<RVec>& g) {
  const std::size_t n = g.size();
  LDL f{RVec(n, 0.0), std::vector<RVec>(n, RVec(n, 0.0))};
  for (std::size_t i = 0; i < n; ++i) {
    double s = g[i][i];
    for (std::size_t k = 0; k < i; ++k) s -= f.d[k] * f.u[k][i] * f.u[k][i];
    if (!(s > 0)) throw Error(ErrorKind::InvalidArgument, "Gram matrix not positive definite");
    f.d[i] = s;
    f.u[i][i] = 1.0;
    for (std::size_t j = i + 1; j < n; ++j) {
      double t = g[i][j];
      for (std::size_t k = 0; k < i; ++k) t -= f.d[k] * f.u[k][i] * f.u[k][j];
      f.u[i][j] = t / s;
    }
  }
  return f;
}

// Visit every k in Z^n with (k-c)^T G (k-c) <= radius2. Returns the number of
// points visited; throws CutoffOverflow past `cap`.
inline std::size_t enumerate_ellipsoid(const LDL& f, const RVec& c, double radius2,
                                       const std::function<void(const IVec&)>& visit,
                                       std::size_t cap = 50'000'000) {
  const std::size_t n = f.d.size();
  if (n == 0) {
    visit({});
    return 1;
  }
  IVec k(n, 0);
  RVec centre(n, 0.0), partial(n + 1, 0.0);
  std::size_t count = 0;
  const double eps = 1e-12 * (1.0 + radius2);

  std::function<void(std::size_t)> rec = [&](std::size_t lvl) {
    // lvl counts down from n-1 to 0
    double ctr = c[lvl];
    for (std::size_t j = lvl + 1; j < n; ++j) ctr -= f.u[lvl][j] * (static_cast<double>(k[j]) - c[j]);
    double rem = radius2 - partial[lvl + 1];
    if (rem < -eps) return;
    double w = std::sqrt(std::max(rem, 0.0) / f.d[lvl]);
    long long lo = static_cast<long long>(std::ceil(ctr - w - 1e-12));
    long long hi = static_cast<long long>(std::floor(ctr + w + 1e-12));
    for (long long v = lo; v <= hi; ++v) {
      double y = static_cast<double>(v) - ctr;
      double e = partial[lvl + 1] + f.d[lvl] * y * y;
      if (e > radius2 + eps) continue;
      k[lvl] = v;
      partial[lvl] = e;
      if (lvl == 0) {
        if (++count > cap) throw Error(ErrorKind::CutoffOverflow, "lattice enumeration exceeded term cap");
        visit(k);
      } else {
        rec(lvl - 1);
      }
    }
  };
  rec(n - 1);
  return count;
}

}  // namespace subadm
