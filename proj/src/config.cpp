#include <cmath>
#include <fstream>
#include <sstream>

#include "gwpt/experiment.hpp"
#include "json.hpp"

namespace gwpt {

using nlohmann::json;

std::string test_id_string(TestId id) {
  switch (id) {
    case TestId::a1i: return "a1i";
    case TestId::a1ii: return "a1ii";
    case TestId::a2: return "a2";
    case TestId::a3: return "a3";
    case TestId::a4: return "a4";
    case TestId::b: return "b";
    case TestId::c: return "c";
    case TestId::d: return "d";
    case TestId::custom: return "custom";
  }
  return "custom";
}

TestId test_id_from_string(const std::string& s) {
  for (TestId id : {TestId::a1i, TestId::a1ii, TestId::a2, TestId::a3, TestId::a4,
                    TestId::b, TestId::c, TestId::d, TestId::custom})
    if (test_id_string(id) == s) return id;
  throw StageError(Stage::config, "unknown test id: " + s);
}

std::string output_string(Output o) {
  switch (o) {
    case Output::psi: return "psi";
    case Output::rho: return "rho";
    case Output::j: return "j";
    case Output::stats: return "stats";
    case Output::errors: return "errors";
    case Output::zdiag: return "zdiag";
    case Output::classical: return "classical";
    case Output::timing: return "timing";
  }
  return "stats";
}

Output output_from_string(const std::string& s) {
  for (Output o : {Output::psi, Output::rho, Output::j, Output::stats, Output::errors,
                   Output::zdiag, Output::classical, Output::timing})
    if (output_string(o) == s) return o;
  throw StageError(Stage::config, "unknown output: " + s);
}

PacketParams InitialSpec::at(const ZPoint& z) const {
  PacketParams s;
  s.q = q0_base + q0_slope * z.z1;
  s.p = p0_base + p0_slope * z.z1;
  s.alpha = alpha0;
  s.gamma = gamma0;
  s.B = std::sqrt(alpha0.imag());
  return s;
}

std::vector<double> ExperimentConfig::output_times() const {
  std::vector<double> raw = out_times.empty() ? std::vector<double>{T} : out_times;
  for (double& t : raw) t = std::llround(t / dt_w) * dt_w;
  return raw;
}

void ExperimentConfig::validate() const {
  auto fail = [](const std::string& field, const std::string& why) {
    throw StageError(Stage::config, "config field '" + field + "': " + why);
  };
  if (!(eps > 0.0)) fail("eps", "must be positive");
  if (!(T > 0.0)) fail("T", "must be positive");
  if (!(dt_ode > 0.0)) fail("dt_ode", "must be positive");
  if (!(dt_w > 0.0)) fail("dt_w", "must be positive");
  if (!(dt_ds > 0.0)) fail("dt_ds", "must be positive");
  double ratio = dt_w / dt_ode;
  auto m = static_cast<long long>(std::llround(ratio));
  if (m < 2 || m % 2 != 0 || std::abs(ratio - static_cast<double>(m)) > 1e-9)
    fail("dt_w", "must be an even integer multiple (>= 2) of dt_ode");
  double steps = T / dt_w;
  if (std::abs(steps - std::llround(steps)) > 1e-9) fail("T", "must be a multiple of dt_w");
  if (nz1 < 1) fail("nz1", "must be >= 1");
  if (nz2 < 1) fail("nz2", "must be >= 1");
  if (nz3 < 1) fail("nz3", "must be >= 1");
  if (nz4 < 1) fail("nz4", "must be >= 1");
  if (z_dim != 1 && z_dim != 2) fail("z_dim", "must be 1 or 2");
  if (z_dim == 2 && !(nz1 == nz2 && nz2 == nz3))
    fail("nz2", "2-D z requires Nz1 = Nz2 = Nz3 (no z interpolation)");
  if (z_dim == 1) {
    auto splineable = [](int n) { return n == 1 || n >= 4; };
    if (nz1 != nz2 && !splineable(nz1)) fail("nz1", "spline transfer needs 1 or >= 4 nodes");
    if (nz1 != nz3 && !splineable(nz1)) fail("nz1", "spline transfer needs 1 or >= 4 nodes");
    if (nz2 != nz3 && !splineable(nz2)) fail("nz2", "spline transfer needs 1 or >= 4 nodes");
  }
  if (!is_pow2(n_eta)) fail("n_eta", "must be a power of two");
  if (!(eta_min < eta_max)) fail("eta_max", "must exceed eta_min");
  if (n_x < 2) fail("n_x", "must be >= 2");
  if (!(x_min < x_max)) fail("x_max", "must exceed x_min");
  if (!(initial.alpha0.imag() > 0.0)) fail("initial.alpha0", "needs Im(alpha0) > 0");
  for (double t : out_times) {
    if (t < 0.0 || t > T + 1e-9) fail("out_times", "entries must lie in [0, T]");
    double r = t / dt_w;
    if (std::abs(r - std::llround(r)) > 1e-6) fail("out_times", "entries must sit on the dt_w grid");
  }
}

ExperimentConfig ExperimentConfig::builtin(TestId id, double eps) {
  ExperimentConfig c;
  c.test_id = id;
  c.eps = eps;
  switch (id) {
    case TestId::a1i:
      c.potential = Potential::quadratic_random(1.0, 0.95);
      break;
    case TestId::a1ii:
      c.potential = Potential::cosine_random(1.0, 0.9);
      break;
    case TestId::a2:
      c.potential = Potential::cosine_random(1.0, 0.9);
      c.z_dist = Dist::gaussian;
      break;
    case TestId::a3:
      c.potential = Potential::cosine_random(1.0, eps);
      c.z_dist = Dist::gaussian;
      break;
    case TestId::a4:
      c.potential = Potential::cosine_random(1.0, std::sqrt(eps));
      c.z_dist = Dist::gaussian;
      break;
    case TestId::b:
      c.potential = Potential::cosine_deterministic();
      c.initial.q0_slope = 0.25 * pi;
      break;
    case TestId::c:
      c.potential = Potential::cosine_deterministic();
      c.initial.q0_slope = 0.25 * pi;
      c.initial.p0_slope = 0.5;
      c.T = 0.5;
      break;
    case TestId::d:
      c.potential = Potential::cosine_random(1.0, 0.2, 0.7);
      c.z_dim = 2;
      c.nz1 = c.nz2 = c.nz3 = c.nz4 = 32;
      break;
    case TestId::custom:
      break;
  }
  return c;
}

ExperimentConfig with_eps(ExperimentConfig cfg, double eps) {
  cfg.eps = eps;
  if (cfg.test_id == TestId::a3) cfg.potential = Potential::cosine_random(1.0, eps);
  if (cfg.test_id == TestId::a4) cfg.potential = Potential::cosine_random(1.0, std::sqrt(eps));
  return cfg;
}

std::string ExperimentConfig::to_json() const {
  json j;
  j["test_id"] = test_id_string(test_id);
  j["eps"] = eps;
  j["T"] = T;
  j["potential"] = {{"id", potential.id_string()},
                    {"a", potential.a()},
                    {"b1", potential.b1()},
                    {"b2", potential.b2()}};
  j["initial"] = {{"q0_base", initial.q0_base}, {"q0_slope", initial.q0_slope},
                  {"p0_base", initial.p0_base}, {"p0_slope", initial.p0_slope},
                  {"alpha0", {initial.alpha0.real(), initial.alpha0.imag()}},
                  {"gamma0", {initial.gamma0.real(), initial.gamma0.imag()}}};
  j["z_dist"] = z_dist == Dist::uniform ? "uniform" : "gaussian";
  j["z_dim"] = z_dim;
  j["nz1"] = nz1;
  j["nz2"] = nz2;
  j["nz3"] = nz3;
  j["nz4"] = nz4;
  j["dt_ode"] = dt_ode;
  j["dt_w"] = dt_w;
  j["dt_ds"] = dt_ds;
  j["eta"] = {{"min", eta_min}, {"max", eta_max}, {"n", n_eta}};
  j["x"] = {{"min", x_min}, {"max", x_max}, {"n", n_x}};
  j["w_scheme"] = w_scheme == WScheme::quadratic_exact ? "quadratic_exact" : "fourier_strang";
  std::vector<std::string> outs;
  for (Output o : outputs) outs.push_back(output_string(o));
  j["outputs"] = outs;
  j["out_times"] = out_times;
  j["threads"] = threads;
  return j.dump(2);
}

namespace {

double number_or_rational(const json& v, const std::string& field) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number()) return v.get<double>();
  throw StageError(Stage::config, "config field '" + field + "': expected number or string");
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const std::exception& e) {
    throw StageError(Stage::config, std::string("config parse error: ") + e.what());
  }
  ExperimentConfig c;
  if (j.contains("test_id")) {
    c = builtin(test_id_from_string(j["test_id"].get<std::string>()),
                j.contains("eps") ? number_or_rational(j["eps"], "eps") : c.eps);
  } else if (j.contains("eps")) {
    c.eps = number_or_rational(j["eps"], "eps");
  }
  if (j.contains("T")) c.T = number_or_rational(j["T"], "T");
  if (j.contains("potential")) {
    const json& p = j["potential"];
    c.potential = Potential::from_id_string(p.value("id", std::string("cosine_deterministic")),
                                            p.value("a", 1.0), p.value("b1", 0.0),
                                            p.value("b2", 0.0));
  }
  if (j.contains("initial")) {
    const json& in = j["initial"];
    c.initial.q0_base = in.value("q0_base", c.initial.q0_base);
    c.initial.q0_slope = in.value("q0_slope", c.initial.q0_slope);
    c.initial.p0_base = in.value("p0_base", c.initial.p0_base);
    c.initial.p0_slope = in.value("p0_slope", c.initial.p0_slope);
    if (in.contains("alpha0"))
      c.initial.alpha0 = cplx(in["alpha0"][0].get<double>(), in["alpha0"][1].get<double>());
    if (in.contains("gamma0"))
      c.initial.gamma0 = cplx(in["gamma0"][0].get<double>(), in["gamma0"][1].get<double>());
  }
  if (j.contains("z_dist")) {
    std::string d = j["z_dist"].get<std::string>();
    if (d == "uniform") c.z_dist = Dist::uniform;
    else if (d == "gaussian") c.z_dist = Dist::gaussian;
    else throw StageError(Stage::config, "config field 'z_dist': unknown value " + d);
  }
  c.z_dim = j.value("z_dim", c.z_dim);
  c.nz1 = j.value("nz1", c.nz1);
  c.nz2 = j.value("nz2", c.nz2);
  c.nz3 = j.value("nz3", c.nz3);
  c.nz4 = j.value("nz4", c.nz4);
  if (j.contains("dt_ode")) c.dt_ode = number_or_rational(j["dt_ode"], "dt_ode");
  if (j.contains("dt_w")) c.dt_w = number_or_rational(j["dt_w"], "dt_w");
  if (j.contains("dt_ds")) c.dt_ds = number_or_rational(j["dt_ds"], "dt_ds");
  if (j.contains("eta")) {
    c.eta_min = j["eta"].value("min", c.eta_min);
    c.eta_max = j["eta"].value("max", c.eta_max);
    c.n_eta = j["eta"].value("n", c.n_eta);
  }
  if (j.contains("x")) {
    c.x_min = j["x"].value("min", c.x_min);
    c.x_max = j["x"].value("max", c.x_max);
    c.n_x = j["x"].value("n", c.n_x);
  }
  if (j.contains("w_scheme")) {
    std::string s = j["w_scheme"].get<std::string>();
    if (s == "quadratic_exact") c.w_scheme = WScheme::quadratic_exact;
    else if (s == "fourier_strang") c.w_scheme = WScheme::fourier_strang;
    else throw StageError(Stage::config, "config field 'w_scheme': unknown value " + s);
  }
  if (j.contains("outputs")) {
    c.outputs.clear();
    for (const auto& o : j["outputs"]) c.outputs.insert(output_from_string(o.get<std::string>()));
  }
  if (j.contains("out_times")) {
    c.out_times.clear();
    for (const auto& t : j["out_times"]) c.out_times.push_back(number_or_rational(t, "out_times"));
  }
  c.threads = j.value("threads", c.threads);
  return c;
}

ExperimentConfig ExperimentConfig::from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw StageError(Stage::io, "cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return from_json(ss.str());
}

}  // namespace gwpt
