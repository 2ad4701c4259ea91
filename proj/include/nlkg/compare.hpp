#pragma once
#include <map>
#include <vector>

#include <Eigen/Core>

#include "nlkg/pde.hpp"
#include "nlkg/reduced.hpp"

namespace nlkg {

// block-averaged envelope of a sampled series; strips the fast oscillation
// so the slow energy drift is visible
struct Envelope {
  Eigen::VectorXd t, y;
  bool monotone_down = false;
  double worst_uptick = 0;  // largest relative increase between blocks
};

Envelope envelope(const Eigen::VectorXd& t, const Eigen::VectorXd& y,
                  int window);

// fit of y' = -C y^p on an envelope: regress log(-dy/dt) on log(y)
struct DecayFit {
  double p = 0;         // measured exponent
  double C = 0;         // measured rate constant
  double residual = 0;  // rms residual of the log-log regression
  bool valid = false;   // enough strictly-decreasing points to fit
};

DecayFit fit_decay(const Envelope& env);

struct LeakParams {
  Eigen::VectorXcd xi0;
  double T = 400, dt = 0.04, sample_dt = 0.5;
  SpongeConfig sponge;
  int window = 40;            // envelope block, in samples
  double ode_tol = 1e-10;
};

// full-wave run against the reduced mode system from the same data
struct LeakReport {
  Envelope pde, red;
  DecayFit fit_pde, fit_red;
  double drop_pde = 0, drop_red = 0;  // relative energy transfer over [0,T]
  double transfer_ratio = 0;          // drop_pde / drop_red
  double divergence_time = 0;         // gap > half the total transfer
};

LeakReport run_leak_compare(const SpectralData& S, const ReducedModel& model,
                            const Nonlinearity& nl, const LeakParams& params);

// amplitude scaling of the resonant monomials along full-wave runs
struct ScalingPoint {
  double eps = 0;
  std::map<MultiIndex, double> mono_l2;  // ||xi^mu||_{L2[0,T]}
  double drop = 0;
};

std::vector<ScalingPoint> run_eps_scaling(
    const SpectralData& S, const Nonlinearity& nl,
    const std::vector<MultiIndex>& monomials, const Eigen::VectorXcd& shape,
    const std::vector<double>& eps, const PdeRunConfig& cfg);

// least-squares slope of log(y) against log(x)
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace nlkg
