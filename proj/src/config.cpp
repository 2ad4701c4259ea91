#include "nlkg/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "nlkg/errors.hpp"

namespace nlkg {

using nlohmann::json;

namespace {

void expect_keys(const json& j, const std::set<std::string>& allowed,
                 const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key()))
      throw ConfigError("config: unknown key '" + it.key() + "' in " + where);
}

}  // namespace

Potential RunConfig::make_potential(const Grid1D& g) const {
  if (pot_type == "sech2") return Potential::sech_well(g, pot_depth, pot_width);
  if (pot_type == "gaussian")
    return Potential::gaussian_well(g, pot_depth, pot_width);
  if (pot_type == "zero") return Potential::zero(g);
  throw ConfigError("config: unknown potential type '" + pot_type + "'");
}

RunConfig config_from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("config: bad JSON: ") + e.what());
  }
  expect_keys(j,
              {"grid", "potential", "mass", "beta", "order", "degree_cap",
               "tolerances", "evolve"},
              "top level");
  RunConfig c;

  if (j.contains("grid")) {
    const auto& g = j["grid"];
    expect_keys(g, {"L", "n"}, "grid");
    c.L = g.value("L", c.L);
    c.n_total = g.value("n", c.n_total);
  }
  if (j.contains("potential")) {
    const auto& p = j["potential"];
    expect_keys(p, {"type", "depth", "width"}, "potential");
    c.pot_type = p.value("type", c.pot_type);
    c.pot_depth = p.value("depth", c.pot_depth);
    c.pot_width = p.value("width", c.pot_width);
  }
  c.mass = j.value("mass", c.mass);
  if (j.contains("beta")) {
    const auto& b = j["beta"];
    expect_keys(b, {"quartic", "taylor", "zero"}, "beta");
    if (b.contains("zero")) {
      c.beta = Nonlinearity::zero();
    } else if (b.contains("quartic")) {
      c.beta = Nonlinearity::quartic(b["quartic"].get<double>());
    } else if (b.contains("taylor")) {
      std::map<int, double> t;
      for (auto it = b["taylor"].begin(); it != b["taylor"].end(); ++it)
        t[std::stoi(it.key())] = it.value().get<double>();
      c.beta = Nonlinearity::from_taylor(t);
    }
  }
  c.order = j.value("order", c.order);
  c.degree_cap = j.value("degree_cap", c.degree_cap);

  if (j.contains("tolerances")) {
    const auto& t = j["tolerances"];
    expect_keys(t,
                {"res", "edge_factor", "homological", "bracket", "pc_project",
                 "density_agree", "gamma_agree", "ls_residual", "hermiticity",
                 "psd_floor", "rk_tol"},
                "tolerances");
    c.tol.res = t.value("res", c.tol.res);
    c.tol.edge_factor = t.value("edge_factor", c.tol.edge_factor);
    c.tol.homological = t.value("homological", c.tol.homological);
    c.tol.bracket = t.value("bracket", c.tol.bracket);
    c.tol.pc_project = t.value("pc_project", c.tol.pc_project);
    c.tol.density_agree = t.value("density_agree", c.tol.density_agree);
    c.tol.gamma_agree = t.value("gamma_agree", c.tol.gamma_agree);
    c.tol.ls_residual = t.value("ls_residual", c.tol.ls_residual);
    c.tol.hermiticity = t.value("hermiticity", c.tol.hermiticity);
    c.tol.psd_floor = t.value("psd_floor", c.tol.psd_floor);
    c.tol.rk_tol = t.value("rk_tol", c.tol.rk_tol);
  }

  if (j.contains("evolve")) {
    const auto& e = j["evolve"];
    expect_keys(e,
                {"T", "dt", "sample_dt", "amplitude", "phase", "seed", "xi0",
                 "sponge"},
                "evolve");
    c.T = e.value("T", c.T);
    c.dt = e.value("dt", c.dt);
    c.sample_dt = e.value("sample_dt", c.sample_dt);
    c.amplitude = e.value("amplitude", c.amplitude);
    c.phase = e.value("phase", c.phase);
    c.seed = e.value("seed", c.seed);
    if (e.contains("xi0")) {
      const auto& x = e["xi0"];
      c.xi0.resize(static_cast<Eigen::Index>(x.size()));
      for (std::size_t i = 0; i < x.size(); ++i)
        c.xi0[static_cast<Eigen::Index>(i)] = std::complex<double>(
            x[i].at(0).get<double>(), x[i].at(1).get<double>());
    }
    if (e.contains("sponge")) {
      const auto& s = e["sponge"];
      expect_keys(s, {"enabled", "frac", "sigma", "stride"}, "sponge");
      c.sponge.enabled = s.value("enabled", c.sponge.enabled);
      c.sponge.frac = s.value("frac", c.sponge.frac);
      c.sponge.sigma = s.value("sigma", c.sponge.sigma);
      c.sponge.stride = s.value("stride", c.sponge.stride);
    }
  }
  if (c.phase != "zero" && c.phase != "random")
    throw ConfigError("config: phase must be 'zero' or 'random'");
  return c;
}

std::string config_to_json_text(const RunConfig& c) {
  json j;
  j["grid"] = {{"L", c.L}, {"n", c.n_total}};
  j["potential"] = {
      {"type", c.pot_type}, {"depth", c.pot_depth}, {"width", c.pot_width}};
  j["mass"] = c.mass;
  json t;
  for (auto& [k, v] : c.beta.taylor)
    if (v != 0) t[std::to_string(k)] = v;
  j["beta"] = {{"taylor", t.is_null() ? json::object() : t}};
  j["order"] = c.order;
  j["degree_cap"] = c.degree_cap;
  json e;
  e["T"] = c.T;
  e["dt"] = c.dt;
  e["sample_dt"] = c.sample_dt;
  e["amplitude"] = c.amplitude;
  e["phase"] = c.phase;
  e["seed"] = c.seed;
  e["sponge"] = {{"enabled", c.sponge.enabled},
                 {"frac", c.sponge.frac},
                 {"sigma", c.sponge.sigma},
                 {"stride", c.sponge.stride}};
  if (c.xi0.size() > 0) {
    json x = json::array();
    for (Eigen::Index i = 0; i < c.xi0.size(); ++i)
      x.push_back({c.xi0[i].real(), c.xi0[i].imag()});
    e["xi0"] = x;
  }
  j["evolve"] = e;
  return j.dump(2);
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return config_from_json_text(ss.str());
}

RunConfig preset(const std::string& name) {
  RunConfig c;  // struct defaults = "default" preset
  c.L = 60;
  c.n_total = 1538;
  if (name == "default") return c;
  if (name == "leak-demo") {
    c.mass = 1.1;
    c.T = 2000;
    c.amplitude = 0.08;
    return c;
  }
  if (name == "two-mode") {
    c.pot_depth = 6.0;
    c.mass = 2.5;
    c.amplitude = 0.04;
    return c;
  }
  throw ConfigError("config: unknown preset '" + name + "' (have " +
                    preset_names() + ")");
}

std::string preset_names() { return "default, leak-demo, two-mode"; }

}  // namespace nlkg
