#pragma once

// Finite root systems of types B_l, C_l, F4, G2 in integer ambient
// coordinates with a rational form scale: (x|y) = c * sum x_i y_i.

#include "exact.hpp"
#include "lattice.hpp"

#include <deque>
#include <map>
#include <string>

namespace subadm {

enum class Family { B, C, F, G };

struct LieType {
  Family family = Family::C;
  int rank = 2;

  static constexpr int kMaxClassicalRank = 6;

  std::string name() const {
    const char* f = family == Family::B ? "B" : family == Family::C ? "C" : family == Family::F ? "F" : "G";
    return f + std::to_string(rank);
  }

  // "C2", "G2", "B3"... or family letter plus separate rank
  static LieType parse(const std::string& fam, int rank = 0) {
    if (fam.empty()) throw Error(ErrorKind::UnsupportedType, "empty type");
    LieType t;
    switch (std::toupper(static_cast<unsigned char>(fam[0]))) {
      case 'B': t.family = Family::B; break;
      case 'C': t.family = Family::C; break;
      case 'F': t.family = Family::F; break;
      case 'G': t.family = Family::G; break;
      default:
        throw Error(ErrorKind::UnsupportedType, "type '" + fam + "' is not one of B, C, F, G (simply-laced types are not supported)");
    }
    t.rank = rank;
    if (fam.size() > 1) {
      try {
        t.rank = std::stoi(fam.substr(1));
      } catch (const std::logic_error&) {
        throw Error(ErrorKind::UnsupportedType, "bad type string '" + fam + "'");
      }
    }
    if (t.family == Family::F && t.rank == 0) t.rank = 4;
    if (t.family == Family::G && t.rank == 0) t.rank = 2;
    t.validate();
    return t;
  }

  void validate() const {
    switch (family) {
      case Family::B:
      case Family::C:
        if (rank < 2 || rank > kMaxClassicalRank)
          throw Error(ErrorKind::UnsupportedType, name() + ": rank must be in [2, " + std::to_string(kMaxClassicalRank) + "]");
        break;
      case Family::F:
        if (rank != 4) throw Error(ErrorKind::UnsupportedType, "F has rank 4 only");
        break;
      case Family::G:
        if (rank != 2) throw Error(ErrorKind::UnsupportedType, "G has rank 2 only");
        break;
    }
  }
};

struct WeylElement {
  QMat mat;               // ambient matrix, orthogonal for the standard dot
  std::vector<RVec> matd; // same, in double
  std::vector<int> word;  // reduced word in simple reflections (0-based)
  int sign = 1;
};

enum class Lattice { Q, Qv, P, Pv, rQ };

class RootSystem {
 public:
  explicit RootSystem(LieType t) : type_(t) {
    t.validate();
    build_simple();
    build_roots();
    build_weights();
    build_weyl();
  }

  const LieType& type() const { return type_; }
  int rank() const { return type_.rank; }
  int ambient_dim() const { return m_; }
  const Rat& form_scale() const { return c_; }
  int r_v() const { return type_.family == Family::G ? 3 : 2; }
  int h() const { return h_; }
  int h_dual() const { return hv_; }
  int dim() const { return static_cast<int>(roots_.size()) + rank(); }
  int N() const {
    switch (type_.family) {
      case Family::B: return rank() + 1;
      case Family::C: return 2 * rank() - 1;
      case Family::F: return 6;
      case Family::G: return 4;
    }
    return 0;
  }
  std::string twisted_label() const {
    switch (type_.family) {
      case Family::B: return "D" + std::to_string(rank() + 1) + "^(2)";
      case Family::C: return "A" + std::to_string(2 * rank() - 1) + "^(2)";
      case Family::F: return "E6^(2)";
      case Family::G: return "D4^(3)";
    }
    return {};
  }

  Rat pairing(const QVec& x, const QVec& y) const {
    check_dims(x.size(), static_cast<std::size_t>(m_));
    return c_ * dot(x, y);
  }
  double pairing(const RVec& x, const RVec& y) const {
    double s = 0;
    for (int i = 0; i < m_; ++i) s += x[i] * y[i];
    return cd_ * s;
  }
  cd pairing(const RVec& x, const CVec& y) const {
    cd s = 0;
    for (int i = 0; i < m_; ++i) s += x[i] * y[i];
    return cd_ * s;
  }
  cd pairing(const CVec& x, const CVec& y) const {
    cd s = 0;
    for (int i = 0; i < m_; ++i) s += x[i] * y[i];
    return cd_ * s;
  }
  Rat norm2(const QVec& x) const { return pairing(x, x); }

  QVec coroot(const QVec& a) const { return (Rat(2) / norm2(a)) * a; }
  QVec reflect(const QVec& a, const QVec& x) const { return x - pairing(x, coroot(a)) * a; }
  bool is_long(const QVec& a) const { return norm2(a) == 2; }

  const std::vector<QVec>& simple_roots() const { return simple_; }
  const std::vector<QVec>& simple_coroots() const { return simple_co_; }
  const std::vector<QVec>& positive_roots() const { return pos_; }
  const std::vector<QVec>& roots() const { return roots_; }
  const QVec& theta() const { return theta_; }
  const QVec& theta_s() const { return theta_s_; }
  const QVec& rho() const { return rho_; }
  const QVec& rho_v() const { return rho_v_; }
  const std::vector<QVec>& fundamental_weights() const { return fw_; }
  const std::vector<QVec>& fundamental_coweights() const { return fcw_; }

  // coefficients in the simple roots
  QVec simple_coords(const QVec& x) const {
    QVec rhs(rank());
    for (int j = 0; j < rank(); ++j) rhs[j] = pairing(x, simple_[j]);
    return solve(gram_, rhs);
  }
  // coefficients in the fundamental coweights, x_i = (x|alpha_i)
  QVec coweight_coords(const QVec& x) const {
    QVec r(rank());
    for (int j = 0; j < rank(); ++j) r[j] = pairing(x, simple_[j]);
    return r;
  }
  // coefficients in the fundamental weights, x_i = (x|alpha_i^v)
  QVec weight_coords(const QVec& x) const {
    QVec r(rank());
    for (int j = 0; j < rank(); ++j) r[j] = pairing(x, simple_co_[j]);
    return r;
  }
  bool is_positive_root(const QVec& a) const {
    QVec c = simple_coords(a);
    return std::all_of(c.begin(), c.end(), [](const Rat& x) { return x >= 0; }) && !is_zero(a);
  }

  std::vector<QVec> basis(Lattice l) const {
    switch (l) {
      case Lattice::Q: return simple_;
      case Lattice::Qv: return simple_co_;
      case Lattice::P: return fw_;
      case Lattice::Pv: return fcw_;
      case Lattice::rQ: {
        std::vector<QVec> b;
        for (const auto& a : simple_) b.push_back(Rat(r_v()) * a);
        return b;
      }
    }
    return {};
  }

  // Gram matrix of the simple roots
  const QMat& gram() const { return gram_; }

  // ---- Weyl group --------------------------------------------------------
  const std::vector<WeylElement>& weyl() const { return weyl_; }
  std::size_t weyl_order() const { return weyl_.size(); }
  QVec apply(std::size_t w, const QVec& x) const { return weyl_[w].mat * x; }
  RVec apply(std::size_t w, const RVec& x) const {
    const auto& m = weyl_[w].matd;
    RVec r(m_, 0.0);
    for (int i = 0; i < m_; ++i)
      for (int j = 0; j < m_; ++j) r[i] += m[i][j] * x[j];
    return r;
  }
  int sign(std::size_t w) const { return weyl_[w].sign; }
  std::size_t identity_index() const { return 0; }
  std::size_t index_of(const QMat& m) const {
    auto it = by_rho_.find(m * rho_);
    if (it == by_rho_.end()) throw Error(ErrorKind::InvalidArgument, "matrix is not a Weyl group element");
    return it->second;
  }
  std::size_t compose(std::size_t a, std::size_t b) const { return index_of(weyl_[a].mat * weyl_[b].mat); }
  std::size_t inverse(std::size_t a) const { return inv_[a]; }

  std::vector<QVec> weyl_orbit(const QVec& v) const {
    std::map<QVec, int, QVecLess> seen;
    std::vector<QVec> out;
    for (std::size_t w = 0; w < weyl_.size(); ++w) {
      QVec x = apply(w, v);
      if (seen.emplace(x, 0).second) out.push_back(x);
    }
    return out;
  }

  // double-precision copies for numerics
  RVec to_real(const QVec& x) const { return to_double(x); }

 private:
  void build_simple() {
    const int l = rank();
    auto e = [&](int i) {
      QVec v = zeros(m_);
      v[i] = 1;
      return v;
    };
    switch (type_.family) {
      case Family::B:
        m_ = l;
        c_ = 1;
        for (int i = 0; i + 1 < l; ++i) simple_.push_back(e(i) - e(i + 1));
        simple_.push_back(e(l - 1));
        break;
      case Family::C:
        m_ = l;
        c_ = Rat(1, 2);
        for (int i = 0; i + 1 < l; ++i) simple_.push_back(e(i) - e(i + 1));
        simple_.push_back(Rat(2) * e(l - 1));
        break;
      case Family::F:
        m_ = 4;
        c_ = 1;
        simple_ = {e(1) - e(2), e(2) - e(3), e(3), QVec{Rat(1, 2), Rat(-1, 2), Rat(-1, 2), Rat(-1, 2)}};
        break;
      case Family::G:
        m_ = 3;
        c_ = Rat(1, 3);
        simple_ = {QVec{1, -1, 0}, QVec{-2, 1, 1}};
        break;
    }
    cd_ = to_double(c_);
    for (const auto& a : simple_) simple_co_.push_back(coroot(a));
    gram_.assign(l, zeros(l));
    for (int i = 0; i < l; ++i)
      for (int j = 0; j < l; ++j) gram_[i][j] = pairing(simple_[i], simple_[j]);
  }

  void build_roots() {
    std::map<QVec, int, QVecLess> seen;
    std::deque<QVec> queue(simple_.begin(), simple_.end());
    for (const auto& a : simple_) seen.emplace(a, 0);
    while (!queue.empty()) {
      QVec r = queue.front();
      queue.pop_front();
      for (const auto& a : simple_) {
        QVec s = reflect(a, r);
        if (seen.emplace(s, 0).second) queue.push_back(s);
      }
    }
    std::vector<std::pair<Rat, QVec>> pos;
    for (const auto& [r, _] : seen) {
      QVec c = simple_coords(r);
      bool positive = std::all_of(c.begin(), c.end(), [](const Rat& x) { return x >= 0; });
      if (positive) pos.emplace_back(std::accumulate(c.begin(), c.end(), Rat(0)), r);
    }
    std::stable_sort(pos.begin(), pos.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto& [ht, r] : pos) pos_.push_back(r);
    roots_ = pos_;
    for (const auto& r : pos_) roots_.push_back(-r);

    // highest root and highest short root: maximal height in each class
    Rat best(-1), best_s(-1);
    for (auto& [ht, r] : pos) {
      if (is_long(r) && ht > best) best = ht, theta_ = r;
      if (!is_long(r) && ht > best_s) best_s = ht, theta_s_ = r;
    }
    h_ = static_cast<int>(best.numerator()) + 1;
    QMat gco(rank(), zeros(rank()));
    QVec rhs(rank());
    for (int i = 0; i < rank(); ++i) {
      for (int j = 0; j < rank(); ++j) gco[i][j] = pairing(simple_co_[i], simple_co_[j]);
      rhs[i] = pairing(coroot(theta_), simple_co_[i]);
    }
    QVec cc = solve(gco, rhs);
    hv_ = static_cast<int>(std::accumulate(cc.begin(), cc.end(), Rat(0)).numerator()) + 1;
  }

  void build_weights() {
    const int l = rank();
    QMat ginv = subadm::inverse(gram_);
    QMat gco(l, zeros(l));
    for (int i = 0; i < l; ++i)
      for (int j = 0; j < l; ++j) gco[i][j] = pairing(simple_co_[i], simple_co_[j]);
    QMat gcoinv = subadm::inverse(gco);
    for (int i = 0; i < l; ++i) {
      fcw_.push_back(combine(ginv[i], simple_));
      fw_.push_back(combine(gcoinv[i], simple_co_));
    }
    rho_ = zeros(m_);
    rho_v_ = zeros(m_);
    for (int i = 0; i < l; ++i) {
      rho_ = rho_ + fw_[i];
      rho_v_ = rho_v_ + fcw_[i];
    }
  }

  QMat reflection_matrix(const QVec& a) const {
    QMat m = identity(m_);
    QVec av = coroot(a);
    for (int i = 0; i < m_; ++i)
      for (int j = 0; j < m_; ++j) m[i][j] -= c_ * a[i] * av[j];
    return m;
  }

  void build_weyl() {
    std::vector<QMat> gens;
    for (const auto& a : simple_) gens.push_back(reflection_matrix(a));
    WeylElement id;
    id.mat = identity(m_);
    weyl_.push_back(id);
    by_rho_.emplace(rho_, 0);
    for (std::size_t head = 0; head < weyl_.size(); ++head) {
      for (std::size_t g = 0; g < gens.size(); ++g) {
        QMat m = gens[g] * weyl_[head].mat;
        QVec key = m * rho_;
        if (by_rho_.count(key)) continue;
        WeylElement w;
        w.mat = std::move(m);
        w.word = weyl_[head].word;
        w.word.insert(w.word.begin(), static_cast<int>(g));
        w.sign = -weyl_[head].sign;
        by_rho_.emplace(key, weyl_.size());
        weyl_.push_back(std::move(w));
      }
    }
    for (auto& w : weyl_) {
      w.matd.assign(m_, RVec(m_, 0.0));
      for (int i = 0; i < m_; ++i)
        for (int j = 0; j < m_; ++j) w.matd[i][j] = to_double(w.mat[i][j]);
    }
    inv_.resize(weyl_.size());
    for (std::size_t a = 0; a < weyl_.size(); ++a) inv_[a] = index_of(transpose(weyl_[a].mat));
  }

  LieType type_;
  int m_ = 0;
  Rat c_;
  double cd_ = 1.0;
  std::vector<QVec> simple_, simple_co_, pos_, roots_, fw_, fcw_;
  QVec theta_, theta_s_, rho_, rho_v_;
  QMat gram_;
  int h_ = 0, hv_ = 0;
  std::vector<WeylElement> weyl_;
  std::map<QVec, std::size_t, QVecLess> by_rho_;
  std::vector<std::size_t> inv_;
};

}  // namespace subadm
