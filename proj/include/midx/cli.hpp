#pragma once

#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "midx/casoratian.hpp"
#include "midx/limits.hpp"
#include "midx/quadrature.hpp"
#include "midx/sweep.hpp"
#include "midx/verifier.hpp"

namespace midx::cli {

using json = nlohmann::ordered_json;

enum ExitCode { kExitOk = 0, kExitCheckFailed = 1, kExitInvalidConfig = 2 };

// Invalid request; names the field that caused it.
struct ConfigError : std::runtime_error {
  std::string field;
  ConfigError(std::string f, const std::string& msg) : std::runtime_error(msg), field(std::move(f)) {}
};

struct JobConfig {
  std::string command;
  std::string family;
  std::string a1, a2, a, phi, u;
  std::string D;
  int n = -1;
  int nmax = 5;
  int vmax = 2;
  bool exact = false, floating = false;
  bool raw = false;
  int points = 20;
  unsigned seed = 7;
  double tol_identity = kIdentityRelative;
  double tol_real_root = kRealRootRelative;
  double tol_raw = kRawFormRelative;
  double tol_ortho = 1e-7;
  double quad_tol = QuadratureOptions{}.rel_tol;
  std::string out, plot_data, csv;
  double plot_range = 8;
  int plot_points = 241;
  std::string relation;
  std::string t_list;
  std::string kind = "conjecture";
  std::string a_grid, phi_grid, a1_grid, a2_grid;
  int mmax = 3;
  int condition = 1;
};

struct Report {
  json meta = json::object();
  std::vector<CheckResult> results;
  json data = json::object();

  bool ok() const { return all_ok(results); }
  json to_json() const {
    json rs = json::array();
    for (const auto& r : results) {
      json v;
      v["check"] = r.check;
      v["status"] = to_string(r.status);
      if (std::isfinite(r.residual)) v["residual"] = r.residual;
      else v["residual"] = nullptr;
      v["detail"] = r.detail;
      rs.push_back(v);
    }
    json j;
    j["meta"] = meta;
    j["results"] = rs;
    if (!data.empty()) j["data"] = data;
    return j;
  }
};

// ---- encoding

inline json coeff_json(const QQi& z) { return json::array({z.re().get_str(), z.im().get_str()}); }
inline json coeff_json(const cplx& z) { return json::array({z.real(), z.imag()}); }

template <class T>
json poly_json(const Poly<T>& p) {
  json c = json::array();
  for (int k = 0; k <= p.degree(); ++k) c.push_back(coeff_json(p.coeff(k)));
  return c;
}

inline std::string scalar_str(const QQi& z) { return z.str(); }
inline std::string scalar_str(const cplx& z) { return ComplexScalar(z).str(); }

inline json report_json(const LimitReport& r) {
  json j;
  j["relation"] = r.relation;
  j["quantity"] = r.quantity;
  j["t"] = r.t_values;
  j["errors"] = r.errors;
  if (std::isfinite(r.fitted_rate)) j["fitted_rate"] = r.fitted_rate;
  else j["fitted_rate"] = nullptr;
  return j;
}

inline json record_json(const SweepRecord& r) {
  json j;
  j["family"] = r.family;
  j["lambda"] = r.lambda;
  j["D"] = r.D;
  j["lD"] = r.ell;
  j["parity_ok"] = r.parity_ok;
  j["strip_verdict"] = to_string(r.strip_verdict);
  if (std::isfinite(r.min_abs_im)) j["min_abs_im"] = r.min_abs_im;
  else j["min_abs_im"] = nullptr;
  j["agreement"] = r.agreement;
  if (r.condition) j["condition"] = r.condition;
  if (!r.error.empty()) j["error"] = r.error;
  return j;
}

// ---- parsing helpers

inline ComplexScalar parse_scalar(const std::string& field, const std::string& text) {
  try {
    return ComplexScalar::parse(text);
  } catch (const Error& e) {
    throw ConfigError(field, e.what());
  }
}

inline std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    tok.erase(std::remove_if(tok.begin(), tok.end(), ::isspace), tok.end());
    if (!tok.empty()) out.push_back(tok);
  }
  return out;
}

// Accepts plain reals and multiples of pi: "0.5", "pi/4", "3pi/4", "3*pi/4".
inline double parse_real(const std::string& field, const std::string& tok) {
  auto p = tok.find("pi");
  try {
    if (p == std::string::npos) {
      size_t used = 0;
      double v = std::stod(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      return v;
    }
    std::string num = tok.substr(0, p), rest = tok.substr(p + 2);
    if (!num.empty() && num.back() == '*') num.pop_back();
    double c = num.empty() ? 1.0 : num == "-" ? -1.0 : std::stod(num);
    double d = 1.0;
    if (!rest.empty()) {
      if (rest[0] != '/') throw std::invalid_argument(tok);
      d = std::stod(rest.substr(1));
    }
    return c * kPi / d;
  } catch (const std::exception&) {
    throw ConfigError(field, "cannot parse number '" + tok + "'");
  }
}

inline std::vector<double> parse_grid(const std::string& field, const std::string& text) {
  std::vector<double> out;
  for (const auto& tok : split_list(text)) out.push_back(parse_real(field, tok));
  if (out.empty()) throw ConfigError(field, "empty grid");
  return out;
}

inline std::vector<long> parse_t_list(const std::string& text) {
  if (text.empty()) return default_t_ladder();
  std::vector<long> out;
  for (const auto& tok : split_list(text)) {
    try {
      size_t used = 0;
      long v = std::stol(tok, &used);
      if (used != tok.size() || v <= 0) throw std::invalid_argument(tok);
      out.push_back(v);
    } catch (const std::exception&) {
      throw ConfigError("t", "t values must be positive integers, got '" + tok + "'");
    }
  }
  if (out.size() < 2) throw ConfigError("t", "a ladder needs at least two t values");
  return out;
}

inline std::vector<IndexEntry> parse_entries(const std::string& text) {
  try {
    return parse_index_list(text);
  } catch (const Error& e) {
    throw ConfigError("D", e.what());
  }
}

// ---- command bodies

template <class T>
T as_scalar(const ComplexScalar& c) {
  if constexpr (is_exact_v<T>) return c.exact();
  else return c.value();
}

template <class Fam>
json lambda_meta(const Fam& l) {
  json j;
  if constexpr (Fam::family == Family::ContinuousHahn) {
    j["a1"] = scalar_str(l.a1);
    j["a2"] = scalar_str(l.a2);
  } else {
    j["a"] = scalar_str(l.a);
    j["u"] = scalar_str(l.u);
    j["phi"] = l.phi();
  }
  return j;
}

template <class Fam>
void write_plot_data(const JobConfig& cfg, const DeformedSystem<Fam>& s, int n_max) {
  if (cfg.plot_data.empty()) return;
  require_admissible(s);
  std::ofstream os(cfg.plot_data);
  if (!os) throw ConfigError("plot-data", "cannot open " + cfg.plot_data);
  std::vector<Poly<cplx>> ps;
  os << "x,psi2";
  for (int n = 0; n <= n_max; ++n) {
    ps.push_back(to_complex(s.p(n)));
    os << ",P_" << n << "_re,P_" << n << "_im";
  }
  os << "\n";
  char buf[64];
  const int np = std::max(2, cfg.plot_points);
  for (int k = 0; k < np; ++k) {
    double x = -cfg.plot_range + 2 * cfg.plot_range * k / (np - 1);
    std::snprintf(buf, sizeof buf, "%.17g,%.17g", x, std::exp(psi_weight_log(s, x)));
    os << buf;
    for (const auto& p : ps) {
      cplx v = p(cplx(x));
      std::snprintf(buf, sizeof buf, ",%.17g,%.17g", v.real(), v.imag());
      os << buf;
    }
    os << "\n";
  }
}

// Gram matrix against the norms; off-diagonals are relative to sqrt(G_nn G_mm).
template <class Fam>
std::vector<CheckResult> gram_checks(const DeformedSystem<Fam>& s, int n_max, const JobConfig& cfg, json* data) {
  std::vector<CheckResult> out;
  QuadratureOptions opt;
  opt.rel_tol = cfg.quad_tol;
  auto g = gram_matrix(s, n_max, opt);
  json entries = json::array();
  for (const auto& r : g.reports) {
    CheckResult c;
    std::ostringstream name;
    name << "gram[" << r.n << "," << r.m << "]";
    c.check = name.str();
    if (r.n == r.m) {
      c.residual = r.rel_error;
    } else {
      c.residual = std::abs(r.value) / std::sqrt(std::abs(g.value[r.n][r.n] * g.value[r.m][r.m]));
    }
    std::ostringstream os;
    os << "value " << r.value << ", expected " << r.expected;
    c.detail = os.str();
    if (!(c.residual <= cfg.tol_ortho)) c.status = CheckStatus::fail;
    out.push_back(c);
    if (data) {
      json e;
      e["n"] = r.n;
      e["m"] = r.m;
      e["value"] = r.value;
      e["expected"] = r.expected;
      e["residual"] = c.residual;
      entries.push_back(e);
    }
  }
  if (data) {
    (*data)["gram"] = entries;
    (*data)["truncation_radius"] = g.truncation_radius;
    (*data)["node_count"] = g.node_count;
    (*data)["level"] = g.level;
  }
  return out;
}

template <class Fam>
void cmd_construct(const JobConfig& cfg, const DeformedSystem<Fam>& s, Report& rep) {
  json polys = json::array();
  int lo = cfg.n >= 0 ? cfg.n : 0, hi = cfg.n >= 0 ? cfg.n : cfg.nmax;
  for (int n = lo; n <= hi; ++n) {
    auto p = s.p(n);
    json e;
    e["n"] = n;
    e["degree"] = p.degree();
    e["coefficients"] = poly_json(p);
    polys.push_back(e);
  }
  rep.data["Xi"] = {{"degree", s.xi().degree()}, {"coefficients", poly_json(s.xi())}};
  rep.data["P"] = polys;
  rep.data["hermiticity"] = to_string(s.verdict());
  rep.results.push_back({"construct", CheckStatus::pass, 0, "Xi_D and P_{D,n} built"});
  if (!cfg.plot_data.empty()) {
    try {
      write_plot_data(cfg, s, hi);
    } catch (const Error& e) {
      rep.results.push_back({"plot_data", CheckStatus::fail, 0, e.what()});
    }
  }
}

template <class Fam>
void cmd_verify(const JobConfig& cfg, const DeformedSystem<Fam>& s, Report& rep) {
  auto& rs = rep.results;
  bool eigen_ok = true;
  for (int n = 0; n <= cfg.nmax; ++n) {
    try {
      auto e = eigencheck(s, n);
      eigen_ok = eigen_ok && e.ok();
      rs.push_back(e);
      for (auto& c : shift_op_check(s, n)) rs.push_back(c);
    } catch (const Error& e) {
      eigen_ok = false;
      rs.push_back(detail::from_error(detail::nstr("eigen", n), e));
    }
  }
  try {
    for (auto& c : closed_form_identities(s, cfg.nmax)) rs.push_back(c);
  } catch (const Error& e) {
    rs.push_back(detail::from_error("closed_forms", e));
  }
  rs.push_back(strip_check(s.strip(), s.verdict()));
  if (cfg.raw) {
    for (int n = 0; n <= cfg.nmax; ++n) {
      auto r = raw_form_check(s, n, cfg.points, cfg.seed);
      if (n) r.erase(r.begin());
      for (auto& c : r) rs.push_back(c);
    }
  }
  // a passing eigencheck on a zero-free Xi must come with the orthogonality relations
  if (eigen_ok && s.verdict() == HermiticityVerdict::ok) {
    CheckResult c{"orthogonality_consistency"};
    try {
      auto g = gram_checks(s, cfg.nmax, cfg, nullptr);
      for (const auto& r : g) {
        c.residual = std::max(c.residual, r.residual);
        if (!r.ok() && c.ok()) c.status = CheckStatus::fail, c.detail = r.check + ": " + r.detail;
      }
    } catch (const Error& e) {
      c = detail::from_error("orthogonality_consistency", e);
    }
    rs.push_back(c);
  }
}

template <class Fam>
void cmd_orthogonality(const JobConfig& cfg, const DeformedSystem<Fam>& s, Report& rep) {
  try {
    for (auto& c : gram_checks(s, cfg.nmax, cfg, &rep.data)) rep.results.push_back(c);
    write_plot_data(cfg, s, cfg.nmax);
  } catch (const Error& e) {
    rep.results.push_back(detail::from_error("orthogonality", e));
  }
}

template <class Fam>
void cmd_interlace(const JobConfig& cfg, const DeformedSystem<Fam>& s, Report& rep) {
  try {
    for (auto& c : interlace_check(s, cfg.nmax)) rep.results.push_back(c);
  } catch (const Error& e) {
    rep.results.push_back(detail::from_error("interlace", e));
  }
}

inline void push_ladders(const std::vector<LimitReport>& ls, Report& rep) {
  json arr = json::array();
  for (const auto& l : ls) {
    CheckResult c;
    c.check = l.relation + ":" + l.quantity;
    c.residual = l.errors.empty() ? 0 : l.errors.back();
    std::ostringstream os;
    if (l.all_zero()) os << "error identically zero";
    else os << "fitted rate " << l.fitted_rate << (l.monotone() ? "" : ", not monotone");
    c.detail = os.str();
    if (!ladder_ok(l)) c.status = CheckStatus::fail;
    rep.results.push_back(c);
    arr.push_back(report_json(l));
  }
  rep.data["ladders"] = arr;
}

template <class T>
void cmd_limits_ch(const JobConfig& cfg, const ContinuousHahn<T>& l, Report& rep) {
  push_ladders(wilson_to_ch(l, cfg.nmax, parse_t_list(cfg.t_list)), rep);
}

template <class T>
void cmd_limits_mp(const JobConfig& cfg, const MeixnerPollaczek<T>& l, const std::vector<IndexEntry>& entries, Report& rep) {
  auto ts = parse_t_list(cfg.t_list);
  if (cfg.relation == "mp-ho") {
    push_ladders(mp_to_ho<T>(cfg.nmax, cfg.vmax, ts), rep);
    return;
  }
  try {
    push_ladders(ch_to_mp(l, entries, cfg.nmax, ts), rep);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::TypeIIRejected) throw ConfigError("D", e.what());
    throw;
  }
}

// ---- family and mode dispatch

template <class Fam>
int run_system(const JobConfig& cfg, const Fam& l, Report& rep) {
  auto entries = parse_entries(cfg.D);
  rep.meta["lambda"] = lambda_meta(l);
  try {
    l.validate();
  } catch (const Error& e) {
    throw ConfigError("lambda", e.what());
  }
  if (cfg.command == "limits") {
    rep.meta["D"] = cfg.D;
    rep.meta["lD"] = nullptr;
    if constexpr (Fam::family == Family::ContinuousHahn) {
      if (!cfg.relation.empty() && cfg.relation != "wilson-ch")
        throw ConfigError("relation", "continuous Hahn supports the wilson-ch relation");
      cmd_limits_ch(cfg, l, rep);
    } else {
      if (!cfg.relation.empty() && cfg.relation != "ch-mp" && cfg.relation != "mp-ho")
        throw ConfigError("relation", "Meixner-Pollaczek supports ch-mp and mp-ho");
      if (!entries.empty()) {
        try {
          validate_index_set(entries, l);
        } catch (const Error& e) {
          throw ConfigError("D", e.what());
        }
      }
      cmd_limits_mp(cfg, l, entries, rep);
    }
    return rep.ok() ? kExitOk : kExitCheckFailed;
  }
  IndexSet D;
  try {
    D = validate_index_set(entries, l);
  } catch (const Error& e) {
    throw ConfigError(e.code() == ErrorCode::InvalidParams ? "lambda" : "D", e.what());
  }
  rep.meta["D"] = D.str();
  rep.meta["lD"] = D.ell();
  std::optional<DeformedSystem<Fam>> s;
  try {
    s.emplace(l, D);
  } catch (const Error& e) {
    rep.results.push_back(detail::from_error("construct", e));
    return kExitCheckFailed;
  }
  try {
    if (cfg.command == "construct") cmd_construct(cfg, *s, rep);
    else if (cfg.command == "verify") cmd_verify(cfg, *s, rep);
    else if (cfg.command == "orthogonality") cmd_orthogonality(cfg, *s, rep);
    else if (cfg.command == "interlace") cmd_interlace(cfg, *s, rep);
  } catch (const Error& e) {
    rep.results.push_back(detail::from_error(cfg.command, e));
  }
  return rep.ok() ? kExitOk : kExitCheckFailed;
}

template <class T>
int run_mode(const JobConfig& cfg, const std::map<std::string, ComplexScalar>& vals, Report& rep) {
  if (cfg.family == "ch") {
    ContinuousHahn<T> l{as_scalar<T>(vals.at("a1")), as_scalar<T>(vals.at("a2"))};
    return run_system(cfg, l, rep);
  }
  T u;
  if (vals.count("u")) {
    u = as_scalar<T>(vals.at("u"));
  } else {
    if constexpr (is_exact_v<T>) throw ConfigError("phi", "phi is a float; pass --u for an exact e^{i phi}");
    else u = std::polar(1.0, parse_real("phi", cfg.phi));
  }
  MeixnerPollaczek<T> l{as_scalar<T>(vals.at("a")), u};
  return run_system(cfg, l, rep);
}

inline int run_sweep(const JobConfig& cfg, Report& rep) {
  std::vector<SweepRecord> recs;
  if (cfg.kind == "conjecture") {
    auto ag = cfg.a_grid.empty() ? default_conjecture_a_grid() : parse_grid("a-grid", cfg.a_grid);
    auto pg = cfg.phi_grid.empty() ? default_conjecture_phi_grid() : parse_grid("phi-grid", cfg.phi_grid);
    rep.meta["family"] = "mp";
    rep.meta["lambda"] = {{"a_grid", ag}, {"phi_grid", pg}};
    try {
      recs = conjecture1_sweep(ag, pg, cfg.mmax);
    } catch (const Error& e) {
      throw ConfigError("a-grid", e.what());
    }
  } else if (cfg.kind == "ch-bullet") {
    if (cfg.condition < 1 || cfg.condition > 4) throw ConfigError("condition", "condition must be 1..4");
    auto grid = default_bullet_grid(cfg.condition);
    if (!cfg.a1_grid.empty() || !cfg.a2_grid.empty()) {
      if (cfg.a1_grid.empty() || cfg.a2_grid.empty()) throw ConfigError("a1-grid", "give both a1-grid and a2-grid");
      grid.clear();
      for (double x : parse_grid("a1-grid", cfg.a1_grid))
        for (double y : parse_grid("a2-grid", cfg.a2_grid)) grid.push_back({x, y});
    }
    rep.meta["family"] = "ch";
    json g = json::array();
    for (auto [x, y] : grid) g.push_back({x, y});
    rep.meta["lambda"] = {{"grid", g}, {"condition", cfg.condition}};
    try {
      recs = ch_sufficient_scan(grid, cfg.condition, sweep_threads(), cfg.mmax);
    } catch (const Error& e) {
      throw ConfigError("a1-grid", e.what());
    }
  } else {
    throw ConfigError("kind", "sweep kind must be conjecture or ch-bullet");
  }
  rep.meta["D"] = nullptr;
  rep.meta["lD"] = nullptr;
  rep.meta["mode"] = "float";
  auto sum = summarize(recs);
  CheckResult c{cfg.kind == "conjecture" ? "conjecture1" : "ch_bullet_" + std::to_string(cfg.condition)};
  c.residual = sum.disagreements;
  std::ostringstream os;
  os << sum.total << " sets, " << sum.agreements << " agree, " << sum.disagreements << " disagree, " << sum.ambiguous
     << " boundary_ambiguous, " << sum.errors << " errors";
  c.detail = os.str();
  if (sum.disagreements) c.status = CheckStatus::fail;
  rep.results.push_back(c);
  json all = json::array(), dis = json::array(), amb = json::array();
  for (const auto& r : recs) all.push_back(record_json(r));
  for (const auto& r : sum.disagreement_records) dis.push_back(record_json(r));
  for (const auto& r : sum.ambiguous_records) amb.push_back(record_json(r));
  rep.data["records"] = all;
  rep.data["disagreements"] = dis;
  rep.data["boundary_ambiguous"] = amb;
  if (!cfg.csv.empty()) {
    std::ofstream os2(cfg.csv);
    if (!os2) throw ConfigError("csv", "cannot open " + cfg.csv);
    write_sweep_csv(os2, recs);
  }
  return rep.ok() ? kExitOk : kExitCheckFailed;
}

// Validates the family parameters, fixes the mode and runs the command.
inline int execute(const JobConfig& cfg, Report& rep) {
  tolerances() = {cfg.tol_identity, cfg.tol_real_root, cfg.tol_raw};
  if (cfg.exact && cfg.floating) throw ConfigError("mode", "--exact and --float are exclusive");
  rep.meta["family"] = cfg.family;
  if (cfg.command == "sweep") return run_sweep(cfg, rep);
  if (cfg.family != "ch" && cfg.family != "mp") throw ConfigError("family", "family must be ch or mp");

  std::map<std::string, ComplexScalar> vals;
  auto need = [&](const char* name, const std::string& text) {
    if (text.empty()) throw ConfigError(name, std::string("missing --") + name);
    vals[name] = parse_scalar(name, text);
  };
  auto forbid = [&](const char* name, const std::string& text) {
    if (!text.empty()) throw ConfigError(name, std::string("--") + name + " does not apply to family " + cfg.family);
  };
  bool all_exact = true;
  const bool mp_ho = cfg.family == "mp" && cfg.command == "limits" && cfg.relation == "mp-ho";
  if (cfg.family == "ch") {
    need("a1", cfg.a1);
    need("a2", cfg.a2);
    forbid("a", cfg.a);
    forbid("phi", cfg.phi);
    forbid("u", cfg.u);
  } else if (mp_ho) {
    vals["a"] = ComplexScalar(QQi(1));
    vals["u"] = ComplexScalar(QQi(0, 1));
  } else {
    need("a", cfg.a);
    forbid("a1", cfg.a1);
    forbid("a2", cfg.a2);
    if (!cfg.u.empty() && !cfg.phi.empty()) throw ConfigError("phi", "give either --phi or --u");
    if (!cfg.u.empty()) need("u", cfg.u);
    else if (cfg.phi.empty()) throw ConfigError("phi", "missing --phi or --u");
    else all_exact = false;
  }
  for (const auto& [k, v] : vals) all_exact = all_exact && v.is_exact();
  if (cfg.exact && !all_exact) throw ConfigError("mode", "--exact needs exact parameters");
  const bool exact = all_exact && !cfg.floating;
  rep.meta["mode"] = exact ? "exact" : "float";
  if (exact) return run_mode<QQi>(cfg, vals, rep);
  return run_mode<cplx>(cfg, vals, rep);
}

// ---- argument handling

// Turns a JSON config into flag tokens; keys are the long flag names.
inline std::vector<std::string> config_tokens(const json& j, std::string& command) {
  std::vector<std::string> out;
  for (auto it = j.begin(); it != j.end(); ++it) {
    std::string key = it.key();
    std::replace(key.begin(), key.end(), '_', '-');
    const auto& v = it.value();
    if (key == "command") {
      if (!v.is_string()) throw ConfigError("command", "command must be a string");
      command = v.get<std::string>();
      continue;
    }
    if (key == "config") continue;
    if (v.is_boolean()) {
      if (v.get<bool>()) out.push_back("--" + key);
    } else if (v.is_string()) {
      out.push_back("--" + key);
      out.push_back(v.get<std::string>());
    } else if (v.is_number_integer()) {
      out.push_back("--" + key);
      out.push_back(std::to_string(v.get<long>()));
    } else if (v.is_number()) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.17g", v.get<double>());
      out.push_back("--" + key);
      out.push_back(buf);
    } else if (v.is_array()) {
      std::string s;
      for (const auto& e : v) {
        if (!s.empty()) s += ",";
        s += e.is_string() ? e.get<std::string>() : e.dump();
      }
      out.push_back("--" + key);
      out.push_back(s);
    } else {
      throw ConfigError(key, "unsupported value in config");
    }
  }
  return out;
}

inline const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"construct", "verify", "orthogonality", "interlace", "limits", "sweep"};
  return names;
}

// Splices --config PATH (or --config=PATH) into the argument list ahead of the explicit flags.
inline std::vector<std::string> expand_config(std::vector<std::string> args) {
  std::string path;
  std::vector<std::string> rest;
  for (size_t k = 0; k < args.size(); ++k) {
    if (args[k] == "--config") {
      if (k + 1 >= args.size()) throw ConfigError("config", "--config needs a path");
      path = args[++k];
    } else if (args[k].rfind("--config=", 0) == 0) {
      path = args[k].substr(9);
    } else {
      rest.push_back(args[k]);
    }
  }
  if (path.empty()) return rest;
  std::ifstream is(path);
  if (!is) throw ConfigError("config", "cannot read " + path);
  json j;
  try {
    j = json::parse(is);
  } catch (const json::exception& e) {
    throw ConfigError("config", e.what());
  }
  if (!j.is_object()) throw ConfigError("config", "config must be a JSON object");
  std::string command;
  auto toks = config_tokens(j, command);
  auto is_cmd = [](const std::string& s) {
    const auto& n = command_names();
    return std::find(n.begin(), n.end(), s) != n.end();
  };
  std::vector<std::string> out;
  size_t at = 0;
  if (!rest.empty() && is_cmd(rest[0])) {
    out.push_back(rest[0]);
    at = 1;
  } else if (!command.empty()) {
    out.push_back(command);
  }
  out.insert(out.end(), toks.begin(), toks.end());
  out.insert(out.end(), rest.begin() + at, rest.end());
  return out;
}

inline void add_options(CLI::App& s, JobConfig& c) {
  s.add_option("--family", c.family, "ch or mp");
  s.add_option("--a1", c.a1, "continuous Hahn a1");
  s.add_option("--a2", c.a2, "continuous Hahn a2");
  s.add_option("--a", c.a, "Meixner-Pollaczek a");
  s.add_option("--phi", c.phi, "Meixner-Pollaczek phi (float)");
  s.add_option("--u", c.u, "Meixner-Pollaczek e^{i phi}, exact or float");
  s.add_option("--D", c.D, "index set, e.g. I:2,II:1 or 0,1");
  s.add_option("--n", c.n, "single degree n (construct)");
  s.add_option("--nmax", c.nmax, "largest n");
  s.add_flag("--exact", c.exact, "require exact rational mode");
  s.add_flag("--float", c.floating, "force float mode");
  s.add_option("--out", c.out, "report path (default stdout)");
  s.add_option("--tol-identity", c.tol_identity, "float identity tolerance");
  s.add_option("--tol-real-root", c.tol_real_root, "real-root tolerance");
  s.add_option("--tol-raw", c.tol_raw, "raw-form tolerance");
  s.add_option("--tol-ortho", c.tol_ortho, "Gram matrix tolerance");
  s.add_option("--quad-tol", c.quad_tol, "quadrature level tolerance");
  s.add_option("--plot-data", c.plot_data, "CSV of x, psi^2, P_{D,n}(x)");
  s.add_option("--plot-range", c.plot_range, "plot half-width");
  s.add_option("--plot-points", c.plot_points, "plot sample count");
  s.add_flag("--raw", c.raw, "also compare the raw Casoratian forms");
  s.add_option("--points", c.points, "raw-form sample points");
  s.add_option("--seed", c.seed, "raw-form sample seed");
  s.add_option("--relation", c.relation, "wilson-ch, ch-mp or mp-ho");
  s.add_option("--t", c.t_list, "limit ladder, e.g. 100,1000,10000");
  s.add_option("--vmax", c.vmax, "largest pseudo-virtual degree (mp-ho)");
  s.add_option("--kind", c.kind, "sweep kind: conjecture or ch-bullet");
  s.add_option("--a-grid", c.a_grid, "sweep a values");
  s.add_option("--phi-grid", c.phi_grid, "sweep phi values, pi multiples allowed");
  s.add_option("--a1-grid", c.a1_grid, "cH scan a1 values");
  s.add_option("--a2-grid", c.a2_grid, "cH scan a2 values");
  s.add_option("--mmax", c.mmax, "largest |D| in sweeps");
  s.add_option("--condition", c.condition, "cH sufficient-condition bullet 1..4");
  s.add_option("--csv", c.csv, "sweep CSV path");
}

inline void print_diagnostic(std::ostream& err, const std::string& field, const std::string& msg) {
  json j;
  j["error"] = {{"field", field}, {"message", msg}};
  err << j.dump() << "\n";
}

// Runs one invocation; args exclude the program name.
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  JobConfig cfg;
  CLI::App app{"multi-indexed continuous Hahn and Meixner-Pollaczek polynomials"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);
  for (const auto& name : command_names()) add_options(*app.add_subcommand(name), cfg);
  try {
    args = expand_config(std::move(args));
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    print_diagnostic(err, "arguments", e.what());
    return kExitInvalidConfig;
  } catch (const ConfigError& e) {
    print_diagnostic(err, e.field, e.what());
    return kExitInvalidConfig;
  }
  for (auto* s : app.get_subcommands()) cfg.command = s->get_name();
  if (cfg.command == "interlace" && app.get_subcommand("interlace")->count("--nmax") == 0) cfg.nmax = 8;

  Report rep;
  rep.meta["command"] = cfg.command;
  int code = kExitOk;
  try {
    code = execute(cfg, rep);
  } catch (const ConfigError& e) {
    print_diagnostic(err, e.field, e.what());
    return kExitInvalidConfig;
  }
  std::string text = rep.to_json().dump(2) + "\n";
  if (cfg.out.empty()) {
    out << text;
  } else {
    std::ofstream os(cfg.out);
    if (!os) {
      print_diagnostic(err, "out", "cannot open " + cfg.out);
      return kExitInvalidConfig;
    }
    os << text;
  }
  return code;
}

inline int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(std::move(args), std::cout, std::cerr);
}

}  // namespace midx::cli
