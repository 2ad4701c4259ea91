#pragma once
#include <complex>
#include <vector>

#include <Eigen/Core>

#include "nlkg/nonlinearity.hpp"
#include "nlkg/spectral.hpp"

namespace nlkg {

// absorbing layer: velocity/displacement damping on the outer fraction of the
// box with a quintic ramp, applied every `stride` steps
struct SpongeConfig {
  bool enabled = true;
  double frac = 0.25;    // damped fraction of the half-width, per side
  double sigma = 1.0;    // peak damping rate
  int stride = 8;
};

struct PdeRunConfig {
  double dt = 0.04;
  double T = 100;
  double sample_dt = 0.5;
  SpongeConfig sponge;
};

struct PdeSample {
  double t = 0;
  Eigen::VectorXcd xi;   // discrete-mode amplitudes
  double h_total = 0;    // quadratic + interaction energy
  double h_modes = 0;    // sum_j w_j |xi_j|^2
  double h_rad = 0;      // sum_k mu_k |f_k|^2
  double absorbed = 0;   // cumulative energy removed by the layer
};

// u_tt = -(A + m^2) u - beta'(u) on the eigencoordinates of A + m^2:
// exact diagonal rotation for the full linear flow, Strang-split kick for
// the nonlinearity (two dense transforms per step).
class PdeStepper {
 public:
  PdeStepper(const SpectralData& S, const Nonlinearity& nl, PdeRunConfig cfg);

  // place amplitude on the discrete modes, empty radiation field
  void set_modes(const Eigen::VectorXcd& xi0);
  // arbitrary initial data in physical coordinates
  void set_state(const Eigen::VectorXd& u0, const Eigen::VectorXd& v0);

  std::vector<PdeSample> run();

  PdeSample sample() const;
  // physical-coordinate snapshot (u, v)
  std::pair<Eigen::VectorXd, Eigen::VectorXd> state() const;
  double time() const { return t_; }

 private:
  void step();
  void apply_sponge(int accumulated_steps);

  const SpectralData& S_;
  Nonlinearity nl_;
  PdeRunConfig cfg_;
  Eigen::VectorXd uh_, vh_;        // eigen coordinates, full basis
  Eigen::VectorXd Omega_, ch_, sh_, shm_;  // rotation tables for dt/2
  Eigen::VectorXd damp_;           // per-node damping rate profile
  double t_ = 0, absorbed_ = 0;
};

}  // namespace nlkg
