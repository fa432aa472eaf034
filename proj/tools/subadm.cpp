// subadm: command-line front end for the subprincipal admissible character library.

#include "subadm/subadm.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace subadm;
using json = nlohmann::ordered_json;

namespace {

constexpr int kSchemaVersion = 1;

struct RunConfig {
  std::string type = "C";
  int rank = 0;
  int p = 5, u = 2;
  std::string mult = "kac";
  std::string format = "json";
  std::string output;
  int threads = 1;
  std::uint64_t seed = 7;
  double tol = 1e-12;
  long long max_terms = 20'000'000;
};

json to_json(const RunConfig& c) {
  return {{"type", c.type},   {"rank", c.rank},       {"p", c.p},       {"u", c.u},
          {"mult", c.mult},   {"format", c.format},   {"output", c.output},
          {"threads", c.threads}, {"seed", c.seed},   {"tol", c.tol},   {"max_terms", c.max_terms}};
}

// thrown for bad flags after parsing; maps to exit code 1
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json jr(const Rat& r) { return to_string(r); }
json jv(const QVec& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(jr(x));
  return a;
}
json jm(const QMat& m) {
  json a = json::array();
  for (const auto& row : m) a.push_back(jv(row));
  return a;
}
json jc(cd z) { return json::array({z.real(), z.imag()}); }

std::string csv_complex(cd z) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.17g%+.17gj", z.real(), z.imag());
  return buf;
}

struct Context {
  RunConfig cfg;
  std::unique_ptr<RootSystem> rs;

  const RootSystem& roots() {
    if (!rs) {
      // a bare B or C means rank 2
      const bool bare = cfg.type.size() == 1 && cfg.rank == 0;
      rs = std::make_unique<RootSystem>(LieType::parse(cfg.type, bare ? 2 : cfg.rank));
      cfg.rank = rs->rank();
    }
    return *rs;
  }
  AdmissibleLevel level() {
    auto lv = classify_level(roots(), cfg.p, cfg.u);
    if (lv.kind != LevelKind::kSubprincipal)
      throw UsageError("-p " + std::to_string(cfg.p) + " -u " + std::to_string(cfg.u) + ": level is " +
                       to_string(lv.kind) + ", need gcd(p,u) = 1, r | u, p >= h = " + std::to_string(roots().h()));
    return lv;
  }
  MultSwitch mult() const {
    try {
      return parse_mult_switch(cfg.mult);
    } catch (const Error&) {
      throw UsageError("--mult must be 'kac' or 'alternate', got '" + cfg.mult + "'");
    }
  }
  json report(const std::string& command) const {
    json r;
    r["schema_version"] = kSchemaVersion;
    r["command"] = command;
    r["config"] = to_json(cfg);
    return r;
  }
  SumOptions sum_options() const {
    SumOptions o;
    o.tol = cfg.tol;
    o.max_terms = static_cast<std::size_t>(cfg.max_terms);
    return o;
  }
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

// z in fundamental coweight coordinates, "1/3,1/5"
QVec parse_z(const RootSystem& rs, const std::string& s, const std::string& flag) {
  auto parts = split(s, s.find(':') != std::string::npos ? ':' : ',');
  if (static_cast<int>(parts.size()) != rs.rank())
    throw UsageError(flag + ": expected " + std::to_string(rs.rank()) + " coordinates, got " + std::to_string(parts.size()));
  QVec c;
  for (const auto& x : parts) {
    try {
      c.push_back(parse_rat(x));
    } catch (const Error&) {
      throw UsageError(flag + ": '" + x + "' is not a rational number");
    }
  }
  return combine(c, rs.fundamental_coweights());
}

cd complex_flag(const std::string& s, const std::string& flag) {
  try {
    cd v = parse_complex(s);
    return v;
  } catch (const Error&) {
    throw UsageError(flag + ": '" + s + "' is not a complex number (forms: 1.1i, 0.3+1.2i)");
  }
}

cd tau_flag(const std::string& s, const std::string& flag) {
  cd v = complex_flag(s, flag);
  if (!(v.imag() > 0)) throw UsageError(flag + ": Im tau must be positive");
  return v;
}

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.output.empty()) {
    std::cout << text << '\n';
    return;
  }
  std::ofstream f(cfg.output);
  if (!f) throw UsageError("--output: cannot open '" + cfg.output + "'");
  f << text << '\n';
}

void emit(const RunConfig& cfg, const json& j) {
  if (cfg.format != "json") throw UsageError("--format csv is only available for smatrix");
  emit(cfg, j.dump(2));
}

json weight_json(const RootSystem& rs, const AdmissibleLevel& lv, const SubprincipalWeight& w) {
  return {{"index", w.index},
          {"coset", w.coset},
          {"chamber", w.chamber},
          {"beta", jv(w.y.beta)},
          {"wbar", jm(rs.weyl()[w.y.wbar].mat)},
          {"vbar", jv(w.vbar)},
          {"lambda", {{"level", jr(w.lambda.level)}, {"fin", jv(w.lambda.fin)}, {"delta", jr(w.lambda.delta)}}},
          {"level_k", jr(lv.k)},
          {"m_lambda", jr(w.m)}};
}

const SubprincipalWeight& pick(const std::vector<SubprincipalWeight>& ws, long long i) {
  if (i < 0 || static_cast<std::size_t>(i) >= ws.size())
    throw UsageError("--weight: index " + std::to_string(i) + " out of range [0, " + std::to_string(ws.size()) + ")");
  return ws[static_cast<std::size_t>(i)];
}

// Seeded sample points; Im tau alternates 1.0 / 1.3.
std::vector<EvalPoint> sample_points(const RootSystem& rs, std::uint64_t seed, int n, bool with_t) {
  std::vector<EvalPoint> pts;
  for (int i = 0; i < n; ++i) {
    cd tau(0.1 * ((i % 3) - 1) + 0.05, i % 2 == 0 ? 1.0 : 1.3);
    cd t = with_t ? cd(0.05 * (i + 1), 0.0) : cd(0.0);
    pts.push_back({tau, to_complex(seeded_z(rs, seed + static_cast<std::uint64_t>(i)).z), t});
  }
  return pts;
}

// ---- commands ----------------------------------------------------------------------

void cmd_roots(Context& c) {
  const auto& rs = c.roots();
  json r = c.report("roots");
  r["type"] = rs.type().name();
  r["r_v"] = rs.r_v();
  r["h"] = rs.h();
  r["h_dual"] = rs.h_dual();
  r["dim"] = rs.dim();
  r["form_scale"] = jr(rs.form_scale());
  json sr = json::array();
  for (const auto& a : rs.simple_roots()) sr.push_back(jv(a));
  r["simple_roots"] = sr;
  r["theta"] = jv(rs.theta());
  r["theta_s"] = jv(rs.theta_s());
  r["rho"] = jv(rs.rho());
  r["rho_v"] = jv(rs.rho_v());
  r["weyl_order"] = rs.weyl_order();
  r["positive_roots"] = rs.positive_roots().size();
  emit(c.cfg, r);
}

void cmd_levels(Context& c, int max_p, int max_u) {
  const auto& rs = c.roots();
  json r = c.report("levels");
  json rows = json::array();
  for (int u = 1; u <= max_u; ++u)
    for (int p = 1; p <= max_p; ++p) {
      auto lv = classify_level(rs, p, u);
      if (lv.kind != LevelKind::kSubprincipal) continue;
      // re-check the defining constraints independently of classify_level
      const bool ok = std::gcd(p, u) == 1 && u % rs.r_v() == 0 && p >= rs.h();
      rows.push_back({{"p", p}, {"u", u}, {"uprime", lv.uprime}, {"k", jr(lv.k)}, {"valid", ok}});
    }
  r["max_p"] = max_p;
  r["max_u"] = max_u;
  r["levels"] = rows;
  emit(c.cfg, r);
}

void cmd_phi(Context& c) {
  const auto& rs = c.roots();
  const int u = c.cfg.u;
  CoweightCosets cos(rs, u, Lattice::Q);
  json r = c.report("phi");
  json rows = json::array();
  for (std::size_t i = 0; i < cos.size(); ++i) {
    auto y = phi(rs, u, cos.representatives()[i]);
    rows.push_back({{"coset", i},
                    {"beta_coset", jv(cos.representatives()[i])},
                    {"y_beta", jv(y.beta)},
                    {"y_wbar", jm(rs.weyl()[y.wbar].mat)},
                    {"wall_positive", wall_positive(rs, u, y)}});
  }
  r["u"] = u;
  r["cosets"] = cos.size();
  r["image"] = rows;
  emit(c.cfg, r);
}

void cmd_weights(Context& c, const std::string& chamber) {
  const auto& rs = c.roots();
  auto lv = c.level();
  std::vector<SubprincipalWeight> ws;
  if (chamber == "e")
    ws = enumerate_quasidominant(rs, lv);
  else if (chamber == "all")
    ws = enumerate_all(rs, lv);
  else
    throw UsageError("--chamber must be 'e' or 'all', got '" + chamber + "'");
  json r = c.report("weights");
  r["chamber"] = chamber;
  r["count"] = ws.size();
  json a = json::array();
  for (const auto& w : ws) a.push_back(weight_json(rs, lv, w));
  r["weights"] = a;
  emit(c.cfg, r);
}

json series_json(const QSeries& s) {
  json a = json::array();
  for (const auto& [e, v] : s.terms()) {
    json val;
    if (denominator(v) == 1 && numerator(v) <= std::numeric_limits<long long>::max() &&
        numerator(v) >= std::numeric_limits<long long>::min())
      val = static_cast<long long>(numerator(v));
    else
      val = v.str();
    a.push_back(json::array({jr(e), val}));
  }
  return a;
}

void cmd_char(Context& c, long long index, int powers) {
  const auto& rs = c.roots();
  auto lv = c.level();
  auto ws = enumerate_quasidominant(rs, lv);
  const auto& w = pick(ws, index);
  QVec lam = w.vbar - rs.rho();
  auto s = character_qseries_specialized(rs, lv, lam, powers);
  json r = c.report("char");
  r["weight_index"] = index;
  r["finite_weight"] = jv(lam);
  r["leading_exponent"] = jr(*s.leading_exponent());
  r["powers"] = powers;
  r["coefficients"] = series_json(s);
  emit(c.cfg, r);
}

EvalPoint point_from_flags(Context& c, const std::string& tau, const std::string& z, const std::string& t) {
  const auto& rs = c.roots();
  EvalPoint p;
  p.tau = tau_flag(tau, "--tau");
  p.z = z.empty() ? to_complex(seeded_z(rs, c.cfg.seed).z) : to_complex(parse_z(rs, z, "--z"));
  p.t = complex_flag(t, "--t");
  return p;
}

void cmd_numerator(Context& c, long long index, const std::string& tau, const std::string& z, const std::string& t) {
  const auto& rs = c.roots();
  auto lv = c.level();
  auto ws = enumerate_all(rs, lv);
  const auto& w = pick(ws, index);
  EvalPoint p = point_from_flags(c, tau, z, t);
  cd a = numerator_eval_weylsum(rs, lv, w, p, c.cfg.tol);
  cd b = numerator_eval_theta(rs, lv, w, p, c.cfg.tol);
  json r = c.report("numerator-eval");
  r["weight_index"] = index;
  r["point"] = {{"tau", jc(p.tau)}, {"z", json::array()}, {"t", jc(p.t)}};
  for (auto zi : p.z) r["point"]["z"].push_back(jc(zi));
  r["route_weylsum"] = jc(a);
  r["route_theta"] = jc(b);
  r["abs_diff"] = std::abs(a - b);
  emit(c.cfg, r);
}

Normalization normalization_flag(const std::string& s) {
  if (s == "verified") return Normalization::kVerified;
  if (s == "alternate") return Normalization::kAlternate;
  throw UsageError("--normalization must be 'verified' or 'alternate', got '" + s + "'");
}

void cmd_smatrix(Context& c, const std::string& norm) {
  const auto& rs = c.roots();
  auto lv = c.level();
  SMatrix s = build_smatrix(rs, lv, normalization_flag(norm), c.cfg.threads);
  const std::size_t n = s.order();
  if (c.cfg.format == "csv") {
    std::ostringstream out;
    out << "index";
    for (std::size_t j = 0; j < n; ++j) out << ',' << j;
    out << '\n';
    for (std::size_t i = 0; i < n; ++i) {
      out << i;
      for (std::size_t j = 0; j < n; ++j) out << ',' << csv_complex(s(i, j));
      if (i + 1 < n) out << '\n';
    }
    emit(c.cfg, out.str());
    return;
  }
  json r = c.report("smatrix");
  r["order"] = n;
  r["prefactor"] = {{"ell", s.ell}, {"up", lv.u * lv.p}, {"index", s.constant.index_pv_rq}};
  r["normalization"] = to_string(s.constant.mode);
  r["constant"] = s.constant.value;
  r["fibre_multiplicity"] = s.constant.fibre;
  r["distinct_mod_delta"] = distinct_mod_delta(s.weights);
  r["rank"] = numeric_rank(s);
  json e = json::array();
  for (std::size_t i = 0; i < n; ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < n; ++j) row.push_back(jc(s(i, j)));
    e.push_back(row);
  }
  r["entries"] = e;
  emit(c.cfg, r);
}

NilpotentData nilpotent_flag(const RootSystem& rs, const std::string& s) {
  if (s == "min" || s == "minimal") return nilpotent_minimal(rs);
  if (s == "principal") return nilpotent_principal(rs);
  if (s.rfind("custom:", 0) == 0) {
    std::vector<Rat> labels;
    for (const auto& x : split(s.substr(7), ',')) {
      try {
        labels.push_back(parse_rat(x));
      } catch (const Error&) {
        throw UsageError("--nilpotent: bad label '" + x + "'");
      }
    }
    try {
      return nilpotent_from_labels(rs, labels);
    } catch (const Error& e) {
      throw UsageError(std::string("--nilpotent: ") + e.what());
    }
  }
  throw UsageError("--nilpotent must be min, principal or custom:<labels>, got '" + s + "'");
}

json qhr_json(const RootSystem& rs, const AdmissibleLevel& lv, const NilpotentData& nd, const QhrValue& v) {
  auto vc = vanishing_criterion(rs, lv, nd);
  json a = json::array();
  for (const auto& al : rs.positive_roots()) a.push_back(jr(rs.pairing(al, nd.x)));
  return {{"nilpotent", nd.name},
          {"x", jv(nd.x)},
          {"value_direct", jc(v.direct)},
          {"value_factored", jc(v.factored)},
          {"rel_diff", v.rel_diff},
          {"D", jc(v.D)},
          {"D_perturbed", v.D_perturbed},
          {"vanishing_predicted", vc.vanishes},
          {"criteria", {{"alpha_x", a}, {"theta_s_bound", vc.theta_s_bound}, {"theta_s_of_x", jr(vc.theta_s_of_x)},
                        {"consistent", vc.consistent}, {"reason", vc.reason}}},
          {"exponent", jr(qhr_exponent(rs, lv, nd))}};
}

void cmd_qhr(Context& c, const std::string& nil, long long index, std::string tau, std::string z, const std::string& point) {
  const auto& rs = c.roots();
  auto lv = c.level();
  auto nd = nilpotent_flag(rs, nil);
  if (!point.empty()) {
    // tau,z1:z2:...,t  (W-algebra characters carry no t, so t must be 0)
    auto parts = split(point, ',');
    if (parts.size() < 2 || parts.size() > 3) throw UsageError("--point: expected tau,z1:z2[,t]");
    tau = parts[0];
    z = parts[1];
    if (parts.size() == 3 && complex_flag(parts[2], "--point") != cd(0))
      throw UsageError("--point: t must be 0 for W-algebra characters");
  }
  auto ws = enumerate_quasidominant(rs, lv);
  const auto& w = pick(ws, index);
  QVec seed = z.empty() ? seeded_z(rs, c.cfg.seed).z : parse_z(rs, z, "--z");
  CVec zz = centralizer_point(rs, nd, seed);
  QhrOptions o;
  o.tol = c.cfg.tol;
  o.mult = c.mult();
  auto v = qhr_evaluate(rs, lv, w, nd, tau_flag(tau, "--tau"), zz, o);
  json r = c.report("qhr");
  r["weight_index"] = index;
  r["tau"] = jc(tau_flag(tau, "--tau"));
  r["z"] = json::array();
  for (auto zi : zz) r["z"].push_back(jc(zi));
  r.update(qhr_json(rs, lv, nd, v));
  emit(c.cfg, r);
}

// ---- verify suites -------------------------------------------------------------------

struct Verdict {
  json body;
  bool pass = false;
};

Verdict verify_theta(Context& c, double threshold, const std::vector<std::string>& taus, int indices) {
  const auto& rs = c.roots();
  auto lv = c.level();
  const int r = rs.r_v();
  std::mt19937_64 gen(c.cfg.seed);
  LatticeSumPlan plan = theta_plan(rs);
  SumOptions so = c.sum_options();
  double worst = 0;
  std::size_t terms = 0;
  json rows = json::array();
  for (int i = 0; i < indices; ++i) {
    QVec coef;
    for (int k = 0; k < rs.rank(); ++k) coef.emplace_back(static_cast<long long>(gen() % (4 * r + 1)) - 2 * r);
    ThetaIndex idx{Rat(lv.uprime * lv.p, r), lv.uprime, Rat(1, r) * combine(coef, rs.fundamental_coweights())};
    auto row = theta_transform_row(rs, idx);
    for (std::size_t ti = 0; ti < taus.size(); ++ti) {
      EvalPoint p{tau_flag(taus[ti], "--tau"), to_complex(seeded_z(rs, c.cfg.seed + 31 * i + ti).z), 0.0};
      auto lhs = theta_eval_terms(rs, plan, idx, s_transform(rs, p), so);
      std::vector<cd> parts(row.mu.size());
      std::vector<std::size_t> used(row.mu.size());
      parallel_for(row.mu.size(), c.cfg.threads, [&](std::size_t j) {
        auto s = theta_eval_terms(rs, plan, row.mu[j], p, so);
        parts[j] = row.coeff[j] * s.value;
        used[j] = s.terms;
      });
      cd rhs = 0;
      for (std::size_t j = 0; j < parts.size(); ++j) rhs += parts[j], terms += used[j];
      rhs *= sqrt_prefactor(p.tau, rs.rank());
      terms += lhs.terms;
      double res = std::abs(lhs.value - rhs) / std::abs(lhs.value);
      worst = std::max(worst, res);
      rows.push_back({{"lambda", jv(idx.lam)}, {"n", jr(idx.n)}, {"tau", jc(p.tau)}, {"residual", res}});
    }
  }
  Verdict v;
  v.body = {{"p", lv.p}, {"u", lv.u}, {"residual", worst}, {"terms_used", terms}, {"samples", rows}};
  v.pass = worst < threshold;
  return v;
}

Verdict verify_numerators(Context& c, double threshold, int npoints) {
  const auto& rs = c.roots();
  auto lv = c.level();
  auto ws = enumerate_all(rs, lv);
  auto pts = sample_points(rs, c.cfg.seed, npoints, true);
  std::vector<double> res(ws.size() * pts.size());
  parallel_for(res.size(), c.cfg.threads, [&](std::size_t k) {
    const auto& w = ws[k / pts.size()];
    const auto& p = pts[k % pts.size()];
    cd a = numerator_eval_weylsum(rs, lv, w, p, c.cfg.tol);
    cd b = numerator_eval_theta(rs, lv, w, p, c.cfg.tol);
    res[k] = std::abs(a - b) / std::abs(b);
  });
  double worst = *std::max_element(res.begin(), res.end());
  Verdict v;
  v.body = {{"weights", ws.size()}, {"points", pts.size()}, {"residual", worst}};
  v.pass = worst < threshold;
  return v;
}

Verdict verify_modular(Context& c, double threshold, const std::vector<std::string>& taus, const std::string& norm,
                       bool s_squared) {
  const auto& rs = c.roots();
  auto lv = c.level();
  std::vector<EvalPoint> pts;
  for (std::size_t i = 0; i < taus.size(); ++i)
    pts.push_back({tau_flag(taus[i], "--tau"), to_complex(seeded_z(rs, c.cfg.seed + i).z), 0.0});
  ModularOptions o;
  o.tol = c.cfg.tol;
  o.threads = c.cfg.threads;
  o.normalization = normalization_flag(norm);
  o.s_squared = s_squared;
  auto rep = verify_modular_transform(rs, lv, pts, o);
  json pp = json::array();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    json z = json::array();
    for (auto zi : pts[i].z) z.push_back(zi.real());
    pp.push_back({{"tau", jc(pts[i].tau)}, {"z", z}, {"residual", rep.residual_per_point[i]}});
  }
  Verdict v;
  v.body = {{"p", lv.p},
            {"u", lv.u},
            {"normalization", norm},
            {"residual", rep.max_residual},
            {"points", pp},
            {"residual_per_weight", rep.residual_per_weight},
            {"constant", rep.constant.value},
            {"fibre_multiplicity", rep.constant.fibre},
            {"condition_number", rep.condition_number}};
  if (s_squared) v.body["s_squared_residual"] = rep.s_squared_residual;
  v.pass = rep.max_residual < threshold && (!s_squared || rep.s_squared_residual < threshold);
  return v;
}

Verdict verify_denominator(Context& c, double threshold, int npoints) {
  const auto& rs = c.roots();
  const int u = c.cfg.u;
  if (u % rs.r_v() != 0) throw UsageError("-u: must be a multiple of r = " + std::to_string(rs.r_v()));
  auto pts = sample_points(rs, c.cfg.seed, npoints, true);
  json rows = json::object();
  std::vector<std::string> passing;
  for (auto sw : {MultSwitch::kAlternate, MultSwitch::kKac}) {
    double worst = 0;
    for (const auto& p : pts) {
      cd a = weyl_vector_numerator(rs, u, p, c.cfg.tol);
      cd d = denominator_product_sharp(rs, u, p, sw);
      worst = std::max(worst, std::abs(d - a) / std::abs(a));
    }
    rows[to_string(sw)] = worst;
    if (worst < threshold) passing.push_back(to_string(sw));
  }
  Verdict v;
  v.body = {{"u", u}, {"points", pts.size()}, {"residual", rows}, {"passing", passing},
            {"default_passes", std::find(passing.begin(), passing.end(), to_string(c.mult())) != passing.end()}};
  v.pass = passing.size() == 1;
  return v;
}

Verdict verify_congruences(Context& c, int samples) {
  const auto& rs = c.roots();
  auto lv = c.level();
  const int r = rs.r_v();
  std::mt19937_64 gen(c.cfg.seed);
  auto draw = [&](const std::vector<QVec>& basis) {
    QVec k;
    for (int i = 0; i < rs.rank(); ++i) k.emplace_back(static_cast<long long>(gen() % 13) - 6);
    return combine(k, basis);
  };
  auto wdraw = [&] { return static_cast<std::size_t>(gen() % rs.weyl_order()); };
  long long f19 = 0, f20 = 0;
  const Rat up(lv.u, lv.p), pu(lv.p, lv.u);
  for (int s = 0; s < samples; ++s) {
    QVec v = draw(rs.fundamental_weights()), v2 = draw(rs.fundamental_weights());
    QVec b = draw(rs.fundamental_coweights()), b2 = draw(rs.fundamental_coweights());
    std::size_t w = wdraw(), w2 = wdraw();
    if (!is_integer(rs.pairing(rs.apply(w, v), b) - rs.pairing(v, b))) ++f19;
    // theta-index finite parts u' w(v) + (p/r) beta
    QVec l1 = Rat(lv.uprime) * rs.apply(w, v) + Rat(lv.p, r) * b;
    QVec l2 = Rat(lv.uprime) * rs.apply(w2, v2) + Rat(lv.p, r) * b2;
    Rat lhs = Rat(r, lv.uprime * lv.p) * rs.pairing(l1, l2);
    Rat rhs = up * rs.pairing(rs.apply(w, v), rs.apply(w2, v2)) + rs.pairing(v, b2) + rs.pairing(v2, b) +
              pu * rs.pairing(b, b2);
    if (!is_integer(lhs - rhs)) ++f20;
  }
  Verdict v;
  v.body = {{"samples", samples}, {"failures_weyl_shift", f19}, {"failures_pairing", f20}};
  v.pass = f19 == 0 && f20 == 0;
  return v;
}

Verdict verify_phi(Context& c, const std::vector<int>& us) {
  const auto& rs = c.roots();
  json rows = json::array();
  bool all = true;
  for (int u : us) {
    if (u < 1) throw UsageError("--u-values: entries must be positive");
    CoweightCosets cos(rs, u, Lattice::Q);
    std::vector<ExtendedWeylElement> ys;
    bool positive = true, consistent = true;
    for (const auto& b : cos.representatives()) {
      auto y = phi(rs, u, b);
      positive = positive && wall_positive(rs, u, y);
      consistent = consistent && cos.index_of(y.beta) == cos.index_of(b);
      ys.push_back(y);
    }
    bool distinct = true;
    for (std::size_t i = 0; i < ys.size(); ++i)
      for (std::size_t j = 0; j < i; ++j)
        if (ys[i] == ys[j]) distinct = false;
    const bool ok = positive && consistent && distinct && ys.size() == cos.size();
    all = all && ok;
    rows.push_back({{"u", u}, {"cosets", cos.size()}, {"images", ys.size()}, {"wall_positive", positive},
                    {"distinct", distinct}, {"coset_consistent", consistent}, {"pass", ok}});
  }
  return {{{"levels", rows}}, all};
}

// dominant integral weights of level L for the given labels (a_0 first)
long long count_level(const std::vector<Rat>& labels, long long L) {
  std::vector<long long> ways(static_cast<std::size_t>(L) + 1, 0);
  ways[0] = 1;
  for (const auto& a : labels) {
    if (!is_integer(a) || a.numerator() < 1) throw Error(ErrorKind::InvalidArgument, "labels must be positive integers");
    const long long s = a.numerator();
    for (long long x = s; x <= L; ++x) ways[x] += ways[x - s];
  }
  return ways[L];
}

Verdict verify_count(Context& c) {
  const auto& rs = c.roots();
  auto lv = c.level();
  auto qd = enumerate_quasidominant(rs, lv);
  auto all = enumerate_all(rs, lv);
  auto tm = twisted_marks(rs);
  const long long oracle = count_level(tm.comarks, lv.p - rs.h());
  const std::size_t cosets = CoweightCosets(rs, lv.u, Lattice::Q).size();
  Verdict v;
  v.body = {{"quasidominant", qd.size()},  {"level_weights_oracle", oracle}, {"cosets", cosets},
            {"total", all.size()},         {"expected_total", cosets * static_cast<std::size_t>(oracle)},
            {"distinct_mod_delta", distinct_mod_delta(all)}};
  v.pass = static_cast<long long>(qd.size()) == oracle && all.size() == cosets * qd.size();
  return v;
}

Verdict verify_qseries(Context& c, long long index, int powers) {
  const auto& rs = c.roots();
  auto lv = c.level();
  auto ws = enumerate_quasidominant(rs, lv);
  const auto& w = pick(ws, index);
  auto s = character_qseries_specialized(rs, lv, w.vbar - rs.rho(), powers);
  const Rat lead = *s.leading_exponent();
  bool ok = true;
  for (const auto& [e, val] : s.terms())
    if (!is_integer(e - lead) || denominator(val) != 1 || val < 0) ok = false;
  for (int j = 0; j <= powers; ++j)
    if (s.coefficient(lead + Rat(j)) < 0) ok = false;
  Verdict v;
  v.body = {{"weight_index", index}, {"leading_exponent", jr(lead)}, {"powers", powers},
            {"coefficients", series_json(s)}};
  v.pass = ok;
  return v;
}

Verdict verify_singular(Context& c, double threshold) {
  const auto& rs = c.roots();
  auto lv = c.level();
  auto ts = build_triple_sets(rs, lv);
  double worst = 0;
  std::size_t singular = 0, pairs = 0;
  for (std::size_t j = 0; j < ts.points.size(); ++j) {
    if (ts.point_regular[j]) continue;
    ++singular;
    for (const auto& v : ts.points) {
      worst = std::max(worst, std::abs(singular_sum(rs, lv, v, ts.points[j])));
      ++pairs;
    }
  }
  Verdict v;
  v.body = {{"chamber_points", ts.points.size()}, {"singular_points", singular}, {"pairs", pairs},
            {"triples", ts.triples.size()},       {"regular_triples", ts.regular_count()},
            {"max_modulus", worst}};
  v.pass = worst < threshold;
  return v;
}

Verdict verify_qhr(Context& c, double threshold, const std::vector<std::string>& nils, int npoints) {
  const auto& rs = c.roots();
  auto lv = c.level();
  auto ws = enumerate_quasidominant(rs, lv);
  QhrOptions o;
  o.tol = c.cfg.tol;
  o.mult = c.mult();
  json rows = json::array();
  bool all = true;
  for (const auto& name : nils) {
    auto nd = nilpotent_flag(rs, name);
    auto vc = vanishing_criterion(rs, lv, nd);
    std::vector<std::pair<cd, CVec>> pts;
    for (int i = 0; i < npoints; ++i)
      pts.push_back({cd(0.15 * i, 1.2 - 0.15 * i), centralizer_point(rs, nd, seeded_z(rs, c.cfg.seed + i).z)});
    std::vector<QhrValue> vals(ws.size() * pts.size());
    parallel_for(vals.size(), c.cfg.threads, [&](std::size_t k) {
      const auto& [tau, z] = pts[k % pts.size()];
      vals[k] = qhr_evaluate(rs, lv, ws[k / pts.size()], nd, tau, z, o);
    });
    double worst = 0, biggest = 0;
    for (const auto& v : vals) {
      worst = std::max(worst, v.rel_diff);
      biggest = std::max(biggest, std::abs(v.direct));
    }
    const bool scan_vanishes = biggest < 1e-8;
    const bool scan_nonzero = biggest > 1e-3;
    const bool agrees = vc.vanishes ? scan_vanishes : scan_nonzero;
    const bool ok = worst < threshold && agrees && vc.consistent;
    all = all && ok;
    rows.push_back({{"nilpotent", nd.name}, {"rel_diff", worst}, {"max_abs_value", biggest},
                    {"vanishing_predicted", vc.vanishes}, {"criteria_consistent", vc.consistent},
                    {"scan_agrees", agrees}, {"pass", ok}});
  }
  return {{{"weights", ws.size()}, {"points", npoints}, {"nilpotents", rows}}, all};
}

}  // namespace

int main(int argc, char** argv) {
  Context ctx;
  RunConfig& cfg = ctx.cfg;
  cfg.threads = default_threads();

  CLI::App app{"subadm: subprincipal admissible characters, S-matrices and W-algebra reductions"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--type", cfg.type, "Lie type: B, C, F, G (optionally with rank, e.g. C2)")->capture_default_str();
  app.add_option("--rank", cfg.rank, "rank (B/C: 2..6; implied for F, G)");
  app.add_option("-p", cfg.p, "numerator p of k + h^v = p/u")->capture_default_str();
  app.add_option("-u", cfg.u, "denominator u")->capture_default_str();
  app.add_option("--mult", cfg.mult, "imaginary-root multiplicity assignment: kac | alternate")->capture_default_str();
  app.add_option("--format", cfg.format, "json | csv (csv: smatrix only)")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  app.add_option("--output,-o", cfg.output, "write the report here instead of stdout");
  app.add_option("--threads", cfg.threads, "worker threads (default: $SUBADM_THREADS or all cores)")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", cfg.seed, "seed for sampled points")->capture_default_str();
  app.add_option("--tol", cfg.tol, "truncation tolerance for lattice sums")->capture_default_str();
  app.add_option("--max-terms", cfg.max_terms, "term cap per lattice sum")->capture_default_str();

  app.add_subcommand("roots", "root datum");

  int max_p = 12, max_u = 9;
  auto* levels = app.add_subcommand("levels", "subprincipal admissible levels in a box");
  levels->add_option("--max-p", max_p)->capture_default_str();
  levels->add_option("--max-u", max_u)->capture_default_str();

  app.add_subcommand("phi", "the map P^v/uQ -> Phi_(u)");

  std::string chamber = "all";
  auto* weights = app.add_subcommand("weights", "admissible weights of the level");
  weights->add_option("--chamber", chamber, "e | all")->capture_default_str();

  long long widx = 0;
  int powers = 10;
  auto* chr = app.add_subcommand("char", "specialized character q-series of a y = e weight");
  chr->add_option("--weight", widx, "index among the y = e weights")->capture_default_str();
  chr->add_option("--powers", powers, "integer q-steps above the leading exponent")->capture_default_str();

  std::string tau = "1.1i", zs, ts = "0", point;
  auto* num = app.add_subcommand("numerator-eval", "numerator by the Weyl-sum and theta routes");
  num->add_option("--weight", widx, "index among all weights")->capture_default_str();
  num->add_option("--tau", tau)->capture_default_str();
  num->add_option("--z", zs, "fundamental coweight coordinates, e.g. 1/3,1/5 (default: seeded)");
  num->add_option("--t", ts)->capture_default_str();

  std::string norm = "verified";
  auto* smat = app.add_subcommand("smatrix", "S-matrix dump");
  smat->add_option("--normalization", norm, "verified | alternate")->capture_default_str();

  std::string nil = "min";
  auto* qhr = app.add_subcommand("qhr", "W-algebra character by the direct and factored routes");
  qhr->add_option("--nilpotent", nil, "min | principal | custom:<labels>")->capture_default_str();
  qhr->add_option("--weight", widx, "index among the y = e weights")->capture_default_str();
  qhr->add_option("--tau", tau)->capture_default_str();
  qhr->add_option("--z", zs, "seed in fundamental coweight coordinates, projected to the centralizer");
  qhr->add_option("--point", point, "tau,z1:z2[,t] (t must be 0)");

  auto* verify = app.add_subcommand("verify", "verification suites; exit 2 on failure");
  verify->require_subcommand(1);
  double threshold = -1;
  std::vector<std::string> taus;
  int samples = 0, npoints = 0;
  bool s_squared = false;
  std::vector<int> us;
  std::vector<std::string> nils;
  auto add_threshold = [&](CLI::App* s, const std::string& def) {
    s->add_option("--threshold", threshold, "pass threshold (default " + def + ")");
  };
  auto* v_theta = verify->add_subcommand("theta", "theta S-transformation");
  add_threshold(v_theta, "1e-8");
  v_theta->add_option("--tau", taus, "repeatable (default 1.1i, 0.3+1.2i)");
  v_theta->add_option("--indices", samples, "random theta indices (default 5)");
  auto* v_num = verify->add_subcommand("numerators", "Weyl-sum vs theta numerators");
  add_threshold(v_num, "1e-8");
  v_num->add_option("--points", npoints, "sample points (default 3)");
  auto* v_mod = verify->add_subcommand("modular", "S-transformation of the numerators");
  add_threshold(v_mod, "1e-6");
  v_mod->add_option("--tau", taus, "repeatable (default 1.1i, 0.3+1.2i)");
  v_mod->add_option("--normalization", norm, "verified | alternate")->capture_default_str();
  v_mod->add_flag("--s-squared", s_squared, "also check S^2 = (z -> -z)");
  auto* v_den = verify->add_subcommand("denominator", "denominator identity, both multiplicity switches");
  add_threshold(v_den, "1e-8");
  v_den->add_option("--points", npoints, "sample points (default 3)");
  auto* v_con = verify->add_subcommand("congruences", "exact phase congruences");
  v_con->add_option("--samples", samples, "random tuples (default 1000)");
  auto* v_phi = verify->add_subcommand("phi", "bijectivity of phi");
  v_phi->add_option("--u-values", us, "repeatable (default: -u)");
  auto* v_cnt = verify->add_subcommand("count", "weight count against the twisted-level oracle");
  auto* v_qs = verify->add_subcommand("qseries", "integrality of the specialized character");
  v_qs->add_option("--weight", widx, "index among the y = e weights")->capture_default_str();
  v_qs->add_option("--powers", powers)->capture_default_str();
  auto* v_sing = verify->add_subcommand("singular", "vanishing of singular Weyl phase sums");
  add_threshold(v_sing, "1e-10");
  auto* v_qhr = verify->add_subcommand("qhr", "W-algebra two-route agreement and vanishing");
  add_threshold(v_qhr, "1e-6");
  v_qhr->add_option("--nilpotent", nils, "repeatable (default min, principal)");
  v_qhr->add_option("--points", npoints, "sample points (default 2)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  auto def = [&](double d) { return threshold < 0 ? d : threshold; };
  auto defn = [](int v, int d) { return v > 0 ? v : d; };
  if (taus.empty()) taus = {"1.1i", "0.3+1.2i"};

  try {
    if (app.got_subcommand("roots")) cmd_roots(ctx);
    else if (levels->parsed()) cmd_levels(ctx, max_p, max_u);
    else if (app.got_subcommand("phi")) cmd_phi(ctx);
    else if (weights->parsed()) cmd_weights(ctx, chamber);
    else if (chr->parsed()) cmd_char(ctx, widx, powers);
    else if (num->parsed()) cmd_numerator(ctx, widx, tau, zs, ts);
    else if (smat->parsed()) cmd_smatrix(ctx, norm);
    else if (qhr->parsed()) cmd_qhr(ctx, nil, widx, tau, zs, point);
    else if (verify->parsed()) {
      Verdict v;
      std::string suite;
      double th = 0;
      if (v_theta->parsed()) suite = "theta", th = def(1e-8), v = verify_theta(ctx, th, taus, defn(samples, 5));
      else if (v_num->parsed()) suite = "numerators", th = def(1e-8), v = verify_numerators(ctx, th, defn(npoints, 3));
      else if (v_mod->parsed()) suite = "modular", th = def(1e-6), v = verify_modular(ctx, th, taus, norm, s_squared);
      else if (v_den->parsed()) suite = "denominator", th = def(1e-8), v = verify_denominator(ctx, th, defn(npoints, 3));
      else if (v_con->parsed()) suite = "congruences", v = verify_congruences(ctx, defn(samples, 1000));
      else if (v_phi->parsed()) suite = "phi", v = verify_phi(ctx, us.empty() ? std::vector<int>{cfg.u} : us);
      else if (v_cnt->parsed()) suite = "count", v = verify_count(ctx);
      else if (v_qs->parsed()) suite = "qseries", v = verify_qseries(ctx, widx, powers);
      else if (v_sing->parsed()) suite = "singular", th = def(1e-10), v = verify_singular(ctx, th);
      else if (v_qhr->parsed()) {
        suite = "qhr", th = def(1e-6);
        v = verify_qhr(ctx, th, nils.empty() ? std::vector<std::string>{"min", "principal"} : nils, defn(npoints, 2));
      }
      json r = ctx.report("verify " + suite);
      if (th > 0) r["threshold"] = th;
      r["pass"] = v.pass;
      r.update(v.body);
      emit(cfg, r);
      return v.pass ? 0 : 2;
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
