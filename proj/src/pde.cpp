#include "nlkg/pde.hpp"

#include <cmath>

#include "nlkg/errors.hpp"

namespace nlkg {

PdeStepper::PdeStepper(const SpectralData& S, const Nonlinearity& nl,
                       PdeRunConfig cfg)
    : S_(S), nl_(nl), cfg_(cfg) {
  if (cfg_.dt <= 0 || cfg_.T <= 0 || cfg_.sample_dt < cfg_.dt)
    throw ConfigError("wave stepper: need dt > 0, T > 0, sample_dt >= dt");
  const int n = S_.n();
  uh_ = Eigen::VectorXd::Zero(n);
  vh_ = Eigen::VectorXd::Zero(n);
  Omega_ = (S_.evals.array() + S_.m * S_.m).sqrt();
  const double tau = cfg_.dt / 2;
  ch_ = (Omega_.array() * tau).cos();
  sh_ = (Omega_.array() * tau).sin() / Omega_.array();
  shm_ = -(Omega_.array() * tau).sin() * Omega_.array();

  damp_ = Eigen::VectorXd::Zero(n);
  const double x0 = (1.0 - cfg_.sponge.frac) * S_.grid.L;
  for (int i = 0; i < n; ++i) {
    const double r = (std::abs(S_.grid.x[i]) - x0) / (S_.grid.L - x0);
    if (r > 0) damp_[i] = cfg_.sponge.sigma * std::pow(r, 5);
  }
}

void PdeStepper::set_modes(const Eigen::VectorXcd& xi0) {
  if (xi0.size() != S_.n_bound)
    throw ConfigError("wave stepper: one amplitude per discrete mode");
  uh_.setZero();
  vh_.setZero();
  for (int j = 0; j < S_.n_bound; ++j) {
    const double w = S_.omega[j];
    uh_[j] = std::sqrt(2.0) * xi0[j].real() / std::sqrt(w);
    vh_[j] = std::sqrt(2.0) * xi0[j].imag() * std::sqrt(w);
  }
  t_ = 0;
  absorbed_ = 0;
}

void PdeStepper::set_state(const Eigen::VectorXd& u0,
                           const Eigen::VectorXd& v0) {
  uh_ = S_.to_modal(u0);
  vh_ = S_.to_modal(v0);
  t_ = 0;
  absorbed_ = 0;
}

void PdeStepper::step() {
  auto rotate = [&]() {
    Eigen::VectorXd un = ch_.array() * uh_.array() + sh_.array() * vh_.array();
    vh_ = (shm_.array() * uh_.array() + ch_.array() * vh_.array()).matrix();
    uh_ = std::move(un);
  };
  rotate();
  if (!nl_.trivial()) {
    Eigen::VectorXd ux = S_.from_modal(uh_);
    for (int i = 0; i < ux.size(); ++i) ux[i] = nl_.beta_prime(ux[i]);
    vh_ -= cfg_.dt * S_.to_modal(ux);
  }
  rotate();
  t_ += cfg_.dt;
}

void PdeStepper::apply_sponge(int accumulated_steps) {
  const double win = accumulated_steps * cfg_.dt;
  const double before =
      0.5 * (vh_.squaredNorm() + (Omega_.array() * uh_.array()).matrix().squaredNorm());
  Eigen::VectorXd ux = S_.from_modal(uh_);
  Eigen::VectorXd vx = S_.from_modal(vh_);
  for (int i = 0; i < ux.size(); ++i) {
    const double f = std::exp(-damp_[i] * win);
    ux[i] *= f;
    vx[i] *= f;
  }
  uh_ = S_.to_modal(ux);
  vh_ = S_.to_modal(vx);
  const double after =
      0.5 * (vh_.squaredNorm() + (Omega_.array() * uh_.array()).matrix().squaredNorm());
  absorbed_ += before - after;
}

PdeSample PdeStepper::sample() const {
  PdeSample s;
  s.t = t_;
  s.xi.resize(S_.n_bound);
  for (int j = 0; j < S_.n_bound; ++j) {
    const double w = S_.omega[j];
    s.xi[j] = std::complex<double>(std::sqrt(w) * uh_[j], vh_[j] / std::sqrt(w)) /
              std::sqrt(2.0);
    s.h_modes += w * std::norm(s.xi[j]);
  }
  for (int k = S_.n_bound; k < S_.n(); ++k) {
    const double mu = Omega_[k];
    s.h_rad += 0.5 * (vh_[k] * vh_[k] + mu * mu * uh_[k] * uh_[k]);
  }
  s.h_total =
      0.5 * (vh_.squaredNorm() + (Omega_.array() * uh_.array()).matrix().squaredNorm());
  if (!nl_.trivial()) {
    Eigen::VectorXd ux = S_.from_modal(uh_);
    double b = 0;
    for (int i = 0; i < ux.size(); ++i) b += nl_.beta(ux[i]);
    s.h_total += S_.grid.h * b;
  }
  s.absorbed = absorbed_;
  return s;
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> PdeStepper::state() const {
  return {S_.from_modal(uh_), S_.from_modal(vh_)};
}

std::vector<PdeSample> PdeStepper::run() {
  const long nsteps = std::lround(cfg_.T / cfg_.dt);
  const long per_sample = std::max(1L, std::lround(cfg_.sample_dt / cfg_.dt));
  std::vector<PdeSample> out;
  out.push_back(sample());
  int since_sponge = 0;
  for (long i = 1; i <= nsteps; ++i) {
    step();
    ++since_sponge;
    if (cfg_.sponge.enabled &&
        (since_sponge >= cfg_.sponge.stride || i == nsteps)) {
      apply_sponge(since_sponge);
      since_sponge = 0;
    }
    if (i % per_sample == 0 || i == nsteps) out.push_back(sample());
  }
  return out;
}

}  // namespace nlkg
