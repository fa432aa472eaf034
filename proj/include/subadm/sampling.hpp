#pragma once

// Seeded evaluation points: z with small-denominator rational coordinates in
// the fundamental coweights, kept away from the Weyl walls.

#include "smatrix.hpp"

#include <random>

namespace subadm {

inline cd parse_complex(const std::string& s) {
  // forms: "1.1i", "0.3+1.2i", "-0.2-0.9i", "2", "i"
  std::string t;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) t += c;
  if (t.empty()) throw Error(ErrorKind::InvalidArgument, "empty complex number");
  auto num = [&](const std::string& x) -> double {
    if (x.empty() || x == "+") return 1.0;
    if (x == "-") return -1.0;
    std::size_t used = 0;
    double v = std::stod(x, &used);
    if (used != x.size()) throw std::invalid_argument(x);
    return v;
  };
  try {
    if (t.back() != 'i') return {num(t), 0.0};
    t.pop_back();
    // split at the last sign that is not part of an exponent
    std::size_t cut = std::string::npos;
    for (std::size_t i = t.size(); i-- > 1;)
      if ((t[i] == '+' || t[i] == '-') && t[i - 1] != 'e' && t[i - 1] != 'E') {
        cut = i;
        break;
      }
    if (cut == std::string::npos) return {0.0, num(t)};
    return {num(t.substr(0, cut)), num(t.substr(cut))};
  } catch (const std::logic_error&) {
    throw Error(ErrorKind::InvalidArgument, "not a complex number: '" + s + "'");
  }
}

struct SeededZ {
  QVec coords;  // in fundamental coweights
  QVec z;       // ambient
};

// Components a_i/D_i with D_i <= max_den, redrawn until every positive root
// pairs at distance >= floor from the integers.
inline SeededZ seeded_z(const RootSystem& rs, std::uint64_t seed, double floor = 0.02, int max_den = 97) {
  std::mt19937_64 gen(seed);
  for (int attempt = 0; attempt < 10000; ++attempt) {
    QVec c;
    for (int i = 0; i < rs.rank(); ++i) {
      long long d = 2 + static_cast<long long>(gen() % static_cast<std::uint64_t>(max_den - 1));
      long long n = 1 + static_cast<long long>(gen() % static_cast<std::uint64_t>(d - 1));
      c.emplace_back(n, d);
    }
    QVec z = combine(c, rs.fundamental_coweights());
    bool ok = true;
    for (const auto& a : rs.positive_roots()) {
      Rat x = frac(rs.pairing(a, z));
      if (to_double(x) < floor || to_double(x) > 1.0 - floor) ok = false;
    }
    if (ok) return {c, z};
  }
  throw Error(ErrorKind::DegeneratePoint, "could not draw a generic z");
}

inline CVec to_complex(const QVec& z) {
  CVec out;
  for (double x : to_double(z)) out.emplace_back(x, 0.0);
  return out;
}

}  // namespace subadm
