#include "nlkg/compare.hpp"

#include <cmath>

#include "nlkg/errors.hpp"

namespace nlkg {

Envelope envelope(const Eigen::VectorXd& t, const Eigen::VectorXd& y,
                  int window) {
  if (window < 1 || t.size() != y.size())
    throw ConfigError("envelope: window >= 1 and matching series lengths");
  const int nb = static_cast<int>(t.size()) / window;
  Envelope e;
  e.t.resize(nb);
  e.y.resize(nb);
  for (int b = 0; b < nb; ++b) {
    e.t[b] = t.segment(b * window, window).mean();
    e.y[b] = y.segment(b * window, window).mean();
  }
  e.monotone_down = true;
  const double scale = std::max(std::abs(e.y[0]), 1e-300);
  for (int b = 0; b + 1 < nb; ++b) {
    const double up = (e.y[b + 1] - e.y[b]) / scale;
    e.worst_uptick = std::max(e.worst_uptick, up);
  }
  e.monotone_down = e.worst_uptick <= 1e-7;
  return e;
}

DecayFit fit_decay(const Envelope& env) {
  DecayFit f;
  std::vector<double> lx, ly;
  for (int b = 0; b + 1 < env.t.size(); ++b) {
    const double dy = (env.y[b + 1] - env.y[b]) / (env.t[b + 1] - env.t[b]);
    const double ym = 0.5 * (env.y[b] + env.y[b + 1]);
    if (dy < 0 && ym > 0) {
      lx.push_back(std::log(ym));
      ly.push_back(std::log(-dy));
    }
  }
  if (lx.size() < 3) return f;
  const int n = static_cast<int>(lx.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = 0; i < n; ++i) {
    sx += lx[i];
    sy += ly[i];
    sxx += lx[i] * lx[i];
    sxy += lx[i] * ly[i];
  }
  const double det = n * sxx - sx * sx;
  if (std::abs(det) < 1e-30) return f;
  f.p = (n * sxy - sx * sy) / det;
  const double b0 = (sy * sxx - sx * sxy) / det;
  f.C = std::exp(b0);
  double rss = 0;
  for (int i = 0; i < n; ++i) {
    const double r = ly[i] - (b0 + f.p * lx[i]);
    rss += r * r;
  }
  f.residual = std::sqrt(rss / n);
  f.valid = true;
  return f;
}

LeakReport run_leak_compare(const SpectralData& S, const ReducedModel& model,
                            const Nonlinearity& nl, const LeakParams& params) {
  PdeRunConfig pc;
  pc.dt = params.dt;
  pc.T = params.T;
  pc.sample_dt = params.sample_dt;
  pc.sponge = params.sponge;

  PdeStepper stepper(S, nl, pc);
  stepper.set_modes(params.xi0);
  const auto samples = stepper.run();

  Eigen::VectorXd tp(samples.size()), ep(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    tp[static_cast<Eigen::Index>(i)] = samples[i].t;
    ep[static_cast<Eigen::Index>(i)] = samples[i].h_modes;
  }

  OdeResult red = integrate_reduced(model, params.xi0, params.T,
                                    params.sample_dt, params.ode_tol);
  Eigen::VectorXd er(red.t.size());
  for (Eigen::Index i = 0; i < red.t.size(); ++i)
    er[i] = model.energy(red.eta.col(i));

  LeakReport rep;
  rep.pde = envelope(tp, ep, params.window);
  rep.red = envelope(red.t, er, params.window);
  rep.fit_pde = fit_decay(rep.pde);
  rep.fit_red = fit_decay(rep.red);

  const double e0p = rep.pde.y[0], e0r = rep.red.y[0];
  rep.drop_pde = (e0p - rep.pde.y[rep.pde.y.size() - 1]) / e0p;
  rep.drop_red = (e0r - rep.red.y[rep.red.y.size() - 1]) / e0r;
  rep.transfer_ratio = rep.drop_red != 0 ? rep.drop_pde / rep.drop_red : 0;

  // first envelope time where the gap exceeds half the total transfer
  const int nb = static_cast<int>(std::min(rep.pde.y.size(), rep.red.y.size()));
  const double total = std::abs(e0r - rep.red.y[nb - 1]);
  rep.divergence_time = rep.pde.t[nb - 1];
  for (int b = 0; b < nb; ++b) {
    if (std::abs(rep.pde.y[b] - rep.red.y[b]) > 0.5 * std::max(total, 1e-300)) {
      rep.divergence_time = rep.pde.t[b];
      break;
    }
  }
  return rep;
}

std::vector<ScalingPoint> run_eps_scaling(
    const SpectralData& S, const Nonlinearity& nl,
    const std::vector<MultiIndex>& monomials, const Eigen::VectorXcd& shape,
    const std::vector<double>& eps, const PdeRunConfig& cfg) {
  std::vector<ScalingPoint> out;
  for (double e : eps) {
    PdeStepper stepper(S, nl, cfg);
    stepper.set_modes(e * shape);
    const auto samples = stepper.run();
    ScalingPoint pt;
    pt.eps = e;
    for (const auto& mu : monomials) {
      double acc = 0;
      for (const auto& s : samples) {
        double a = 1;
        for (int j = 0; j < s.xi.size(); ++j)
          a *= std::pow(std::abs(s.xi[j]), mu[static_cast<std::size_t>(j)]);
        acc += a * a * cfg.sample_dt;
      }
      pt.mono_l2[mu] = std::sqrt(acc);
    }
    const double e0 = samples.front().h_modes;
    pt.drop = (e0 - samples.back().h_modes) / e0;
    out.push_back(std::move(pt));
  }
  return out;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const int n = static_cast<int>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = 0; i < n; ++i) {
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace nlkg
