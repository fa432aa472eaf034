#pragma once

// Exact rational scalars, vectors and small dense matrices.

#include <boost/rational.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace subadm {

using Rat = boost::rational<long long>;
using QVec = std::vector<Rat>;
using QMat = std::vector<QVec>;
using cd = std::complex<double>;
using CVec = std::vector<cd>;
using RVec = std::vector<double>;

enum class ErrorKind {
  UnsupportedType,
  DimensionMismatch,
  NotASublattice,
  NotDivisible,
  NonTermination,
  NotConvergent,
  CutoffOverflow,
  IndexMismatch,
  DegeneratePoint,
  ZeroDenominator,
  NotDominant,
  InvalidArgument,
};

inline const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::UnsupportedType: return "UnsupportedType";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NotASublattice: return "NotASublattice";
    case ErrorKind::NotDivisible: return "NotDivisible";
    case ErrorKind::NonTermination: return "NonTermination";
    case ErrorKind::NotConvergent: return "NotConvergent";
    case ErrorKind::CutoffOverflow: return "CutoffOverflow";
    case ErrorKind::IndexMismatch: return "IndexMismatch";
    case ErrorKind::DegeneratePoint: return "DegeneratePoint";
    case ErrorKind::ZeroDenominator: return "ZeroDenominator";
    case ErrorKind::NotDominant: return "NotDominant";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind k, const std::string& what)
      : std::runtime_error(std::string(to_string(k)) + ": " + what), kind_(k) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

// ---- scalars ---------------------------------------------------------------

}  // namespace subadm

// boost::rational's mixed-integer operator== recurses forever under the C++20
// rewritten-candidate rules when the integer type differs; pin exact matches.
// They live in boost so argument-dependent lookup finds them from any scope.
namespace boost {
inline bool operator==(const rational<long long>& a, int b) { return a.denominator() == 1 && a.numerator() == b; }
inline bool operator==(int b, const rational<long long>& a) { return a == b; }
inline bool operator!=(const rational<long long>& a, int b) { return !(a == b); }
inline bool operator!=(int b, const rational<long long>& a) { return !(a == b); }
}  // namespace boost

namespace subadm {

inline double to_double(const Rat& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

inline long long floor_div(long long a, long long b) {
  long long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline long long floor(const Rat& r) { return floor_div(r.numerator(), r.denominator()); }

// r mod 1, in [0,1)
inline Rat frac(const Rat& r) { return r - Rat(floor(r)); }

inline bool is_integer(const Rat& r) { return r.denominator() == 1; }

inline std::string to_string(const Rat& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

// accepts "a", "-a/b"
inline Rat parse_rat(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rat(std::stoll(s));
    long long d = std::stoll(s.substr(slash + 1));
    if (d == 0) throw Error(ErrorKind::InvalidArgument, "zero denominator in '" + s + "'");
    return Rat(std::stoll(s.substr(0, slash)), d);
  } catch (const std::logic_error&) {
    throw Error(ErrorKind::InvalidArgument, "not a rational number: '" + s + "'");
  }
}

// exp(2 pi i r) for exact r, reduced mod 1 first
inline cd phase(const Rat& r) {
  double x = kTwoPi * to_double(frac(r));
  return {std::cos(x), std::sin(x)};
}

// ---- vectors ---------------------------------------------------------------

inline void check_dims(std::size_t a, std::size_t b) {
  if (a != b)
    throw Error(ErrorKind::DimensionMismatch,
                "vector sizes " + std::to_string(a) + " and " + std::to_string(b));
}

inline QVec zeros(std::size_t n) { return QVec(n, Rat(0)); }

inline QVec operator+(const QVec& a, const QVec& b) {
  check_dims(a.size(), b.size());
  QVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline QVec operator-(const QVec& a, const QVec& b) {
  check_dims(a.size(), b.size());
  QVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline QVec operator-(const QVec& a) {
  QVec r(a);
  for (auto& x : r) x = -x;
  return r;
}

inline QVec operator*(const Rat& s, const QVec& a) {
  QVec r(a);
  for (auto& x : r) x *= s;
  return r;
}

inline Rat dot(const QVec& a, const QVec& b) {
  check_dims(a.size(), b.size());
  Rat s(0);
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline bool is_zero(const QVec& a) {
  return std::all_of(a.begin(), a.end(), [](const Rat& x) { return x == 0; });
}

inline bool is_integral(const QVec& a) {
  return std::all_of(a.begin(), a.end(), [](const Rat& x) { return is_integer(x); });
}

inline RVec to_double(const QVec& a) {
  RVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = to_double(a[i]);
  return r;
}

inline QVec from_ints(const std::vector<long long>& v) {
  QVec r;
  r.reserve(v.size());
  for (auto x : v) r.emplace_back(x);
  return r;
}

inline std::string to_string(const QVec& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + to_string(v[i]);
  return s + "]";
}

// linear combination sum c_i b_i
inline QVec combine(const QVec& c, const std::vector<QVec>& basis) {
  if (basis.empty()) return {};
  check_dims(c.size(), basis.size());
  QVec r = zeros(basis[0].size());
  for (std::size_t i = 0; i < c.size(); ++i)
    if (c[i] != 0) r = r + c[i] * basis[i];
  return r;
}

// ---- matrices --------------------------------------------------------------

inline QMat identity(std::size_t n) {
  QMat m(n, zeros(n));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

inline QVec operator*(const QMat& m, const QVec& v) {
  QVec r(m.size(), Rat(0));
  for (std::size_t i = 0; i < m.size(); ++i) r[i] = dot(m[i], v);
  return r;
}

inline QMat operator*(const QMat& a, const QMat& b) {
  std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  QMat r(n, zeros(m));
  for (std::size_t i = 0; i < n; ++i) {
    check_dims(a[i].size(), k);
    for (std::size_t j = 0; j < k; ++j)
      if (a[i][j] != 0)
        for (std::size_t c = 0; c < m; ++c) r[i][c] += a[i][j] * b[j][c];
  }
  return r;
}

inline QMat transpose(const QMat& a) {
  if (a.empty()) return {};
  QMat t(a[0].size(), zeros(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) t[j][i] = a[i][j];
  return t;
}

// Solve A x = b exactly (A square, nonsingular).
inline QVec solve(QMat a, QVec b) {
  const std::size_t n = a.size();
  check_dims(n, b.size());
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv][col] == 0) ++piv;
    if (piv == n) throw Error(ErrorKind::InvalidArgument, "singular system");
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      Rat f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  QVec x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
  return x;
}

inline Rat det(QMat a) {
  const std::size_t n = a.size();
  Rat d(1);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv][col] == 0) ++piv;
    if (piv == n) return Rat(0);
    if (piv != col) {
      std::swap(a[piv], a[col]);
      d = -d;
    }
    d *= a[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      if (a[r][col] == 0) continue;
      Rat f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
    }
  }
  return d;
}

inline QMat inverse(const QMat& a) {
  const std::size_t n = a.size();
  QMat cols;
  for (std::size_t j = 0; j < n; ++j) {
    QVec e = zeros(n);
    e[j] = 1;
    cols.push_back(solve(a, e));
  }
  return transpose(cols);
}

// Lexicographic order so exact vectors can key std::map.
struct QVecLess {
  bool operator()(const QVec& a, const QVec& b) const {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
  }
};

}  // namespace subadm
