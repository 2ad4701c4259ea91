#pragma once
#include <optional>
#include <string>

#include "nlkg/grid.hpp"
#include "nlkg/nonlinearity.hpp"
#include "nlkg/pde.hpp"
#include "nlkg/tolerances.hpp"

namespace nlkg {

// One experiment description; serialized as JSON. Unknown keys are rejected
// so typos fail loudly. Every command takes one of these.
struct RunConfig {
  double L = 40;
  int n_total = 1026;  // grid points including the walls
  std::string pot_type = "sech2";  // sech2 | gaussian | zero
  double pot_depth = 2.0;
  double pot_width = 1.0;
  double mass = 1.25;
  Nonlinearity beta = Nonlinearity::quartic(1.0);
  int order = -1;       // normal-form order r; -1 picks 2N+1
  int degree_cap = -1;  // multi-index degree cap; -1 picks 2N+3
  Tolerances tol;

  // evolve-specific knobs
  double T = 400, dt = 0.04, sample_dt = 0.5;
  Eigen::VectorXcd xi0;     // initial mode amplitudes; sized on demand
  double amplitude = 0.05;  // used when xi0 is empty: amplitude on each mode
  SpongeConfig sponge;
  std::string phase = "zero";  // zero | random
  unsigned long long seed = 1;

  Potential make_potential(const Grid1D& g) const;
};

RunConfig config_from_json_text(const std::string& text);
std::string config_to_json_text(const RunConfig& c);

RunConfig load_config(const std::string& path);
RunConfig preset(const std::string& name);  // default | leak-demo | two-mode
std::string preset_names();

}  // namespace nlkg
