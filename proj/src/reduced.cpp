#include "nlkg/reduced.hpp"

#include <cmath>
#include <map>

#include "nlkg/errors.hpp"

namespace nlkg {
namespace {

std::complex<double> powc(std::complex<double> z, int p) {
  std::complex<double> r = 1;
  for (int i = 0; i < p; ++i) r *= z;
  return r;
}

std::complex<double> mono(const Eigen::VectorXcd& eta, const MultiIndex& a,
                          const MultiIndex& b) {
  std::complex<double> r = 1;
  for (std::size_t k = 0; k < a.size(); ++k) {
    r *= powc(eta[k], a[k]);
    r *= powc(std::conj(eta[static_cast<Eigen::Index>(k)]), b[k]);
  }
  return r;
}

}  // namespace

Eigen::VectorXcd ReducedModel::rhs(const Eigen::VectorXcd& eta) const {
  const std::complex<double> I(0, 1);
  Eigen::VectorXcd d(eta.size());
  for (int k = 0; k < n(); ++k) d[k] = -I * omega[k] * eta[k];

  for (const auto& t : z0) {
    for (int k = 0; k < n(); ++k) {
      if (t.b[k] == 0) continue;
      MultiIndex bk = t.b;
      --bk[k];
      d[k] += -I * t.c * double(t.b[k]) * mono(eta, t.a, bk);
    }
  }
  for (const auto& t : terms) {
    for (int k = 0; k < n(); ++k) {
      if (t.nu[k] == 0) continue;
      MultiIndex nk = t.nu;
      --nk[k];
      d[k] += I * double(t.nu[k]) * t.c * mono(eta, t.mu, nk);
    }
  }
  return d;
}

double ReducedModel::energy(const Eigen::VectorXcd& eta) const {
  double e = 0;
  for (int k = 0; k < n(); ++k) e += omega[k] * std::norm(eta[k]);
  return e;
}

double ReducedModel::drain(const Eigen::VectorXcd& eta) const {
  double total = 0;
  for (const auto& f : fibers) {
    Eigen::VectorXcd F(f.members.size());
    for (std::size_t a = 0; a < f.members.size(); ++a)
      F[static_cast<Eigen::Index>(a)] =
          mono(eta, f.members[a], MultiIndex(eta.size(), 0));
    total += 2 * f.lambda * (F.adjoint() * f.D * F)(0, 0).real();
  }
  return total;
}

ReducedModel build_reduced(const SpectralData& S, const NormalFormResult& nf,
                           const CoeffTensor& tensor) {
  ReducedModel m;
  m.omega = S.omega;

  for (const auto& [key, c] : nf.Z0.scalar) {
    if (key.kind != Kind::Scalar) continue;
    m.z0.push_back({key.mu, key.nu, c});
  }
  std::map<double, std::vector<MultiIndex>> members;
  for (const auto& e : tensor.entries) {
    m.terms.push_back({e.mu, e.nu, e.c});
    auto& mm = members[e.lambda];
    if (std::find(mm.begin(), mm.end(), e.nu) == mm.end()) mm.push_back(e.nu);
  }
  for (const auto& [lam, mm] : members) {
    ReducedModel::Fiber f;
    f.lambda = lam;
    f.members = mm;
    const int nn = static_cast<int>(mm.size());
    Eigen::MatrixXcd C = Eigen::MatrixXcd::Zero(nn, nn);
    auto idx = [&](const MultiIndex& x) {
      return static_cast<int>(std::find(mm.begin(), mm.end(), x) - mm.begin());
    };
    for (const auto& e : tensor.entries)
      if (e.lambda == lam) C(idx(e.nu), idx(e.mu)) = e.c;
    f.D = (C - C.adjoint()) / std::complex<double>(0, 2);
    m.fibers.push_back(std::move(f));
  }
  return m;
}

ReducedModel single_mode_model(double omega, int p, std::complex<double> c) {
  ReducedModel m;
  m.omega.resize(1);
  m.omega[0] = omega;
  m.terms.push_back({MultiIndex{p}, MultiIndex{p}, c});
  ReducedModel::Fiber f;
  f.lambda = p * omega;
  f.members = {MultiIndex{p}};
  f.D = Eigen::MatrixXcd::Constant(1, 1, c.imag());
  m.fibers.push_back(std::move(f));
  return m;
}

namespace {

// Dormand-Prince 5(4), adaptive; lands exactly on t1
Eigen::VectorXcd integrate_to(const ReducedModel& m, Eigen::VectorXcd y,
                              double t0, double t1, double tol, long* steps,
                              long* rejected) {
  static const double a21 = 1. / 5;
  static const double a31 = 3. / 40, a32 = 9. / 40;
  static const double a41 = 44. / 45, a42 = -56. / 15, a43 = 32. / 9;
  static const double a51 = 19372. / 6561, a52 = -25360. / 2187,
                      a53 = 64448. / 6561, a54 = -212. / 729;
  static const double a61 = 9017. / 3168, a62 = -355. / 33,
                      a63 = 46732. / 5247, a64 = 49. / 176,
                      a65 = -5103. / 18656;
  static const double b1 = 35. / 384, b3 = 500. / 1113, b4 = 125. / 192,
                      b5 = -2187. / 6784, b6 = 11. / 84;
  static const double e1 = 5179. / 57600, e3 = 7571. / 16695, e4 = 393. / 640,
                      e5 = -92097. / 339200, e6 = 187. / 2100, e7 = 1. / 40;

  double t = t0;
  double h = std::min(1e-2, (t1 - t0) / 4 + 1e-300);
  if (t1 <= t0) return y;
  Eigen::VectorXcd k1 = m.rhs(y);
  int guard = 0;
  while (t < t1) {
    if (++guard > 2000000) throw ResolutionError("ode step limit exceeded");
    h = std::min(h, t1 - t);
    Eigen::VectorXcd k2 = m.rhs(y + h * a21 * k1);
    Eigen::VectorXcd k3 = m.rhs(y + h * (a31 * k1 + a32 * k2));
    Eigen::VectorXcd k4 = m.rhs(y + h * (a41 * k1 + a42 * k2 + a43 * k3));
    Eigen::VectorXcd k5 =
        m.rhs(y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
    Eigen::VectorXcd k6 = m.rhs(
        y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
    Eigen::VectorXcd y5 =
        y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    Eigen::VectorXcd k7 = m.rhs(y5);
    Eigen::VectorXcd y4 = y + h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 +
                                   e6 * k6 + e7 * k7);
    double err = 0;
    for (Eigen::Index i = 0; i < y.size(); ++i) {
      const double sc =
          tol * (1.0 + std::max(std::abs(y[i]), std::abs(y5[i])));
      const double d = std::abs(y5[i] - y4[i]) / sc;
      err += d * d;
    }
    err = std::sqrt(err / double(y.size()));
    if (err <= 1.0) {
      t += h;
      y = std::move(y5);
      k1 = std::move(k7);  // first-same-as-last
      if (steps) ++*steps;
    } else if (rejected) {
      ++*rejected;
    }
    const double fac =
        std::clamp(0.9 * std::pow(std::max(err, 1e-300), -0.2), 0.2, 5.0);
    h = std::max(h * fac, 1e-14 * std::max(1.0, std::abs(t)));
  }
  return y;
}

}  // namespace

OdeResult integrate_reduced(const ReducedModel& model,
                            const Eigen::VectorXcd& eta0, double T,
                            double sample_dt, double tol) {
  if (sample_dt <= 0 || T <= 0)
    throw ConfigError("integration horizon and sample step must be positive");
  const int ns = static_cast<int>(std::floor(T / sample_dt + 1e-9)) + 1;
  OdeResult out;
  out.t.resize(ns);
  out.eta.resize(eta0.size(), ns);
  Eigen::VectorXcd y = eta0;
  out.t[0] = 0;
  out.eta.col(0) = y;
  for (int i = 1; i < ns; ++i) {
    const double t0 = (i - 1) * sample_dt, t1 = i * sample_dt;
    y = integrate_to(model, y, t0, t1, tol, &out.steps, &out.rejected);
    out.t[i] = t1;
    out.eta.col(i) = y;
  }
  return out;
}

std::pair<double, double> dissipation_check(const ReducedModel& model,
                                            const Eigen::VectorXcd& eta0,
                                            double t, double delta,
                                            double tol) {
  if (t - 2 * delta < 0) throw ConfigError("differencing stencil leaves t >= 0");
  long s = 0, r = 0;
  Eigen::VectorXcd y = integrate_to(model, eta0, 0, t - 2 * delta, tol, &s, &r);
  const double em2 = model.energy(y);
  y = integrate_to(model, y, t - 2 * delta, t - delta, tol, &s, &r);
  const double em1 = model.energy(y);
  y = integrate_to(model, y, t - delta, t, tol, &s, &r);
  Eigen::VectorXcd yc = y;
  y = integrate_to(model, y, t, t + delta, tol, &s, &r);
  const double ep1 = model.energy(y);
  y = integrate_to(model, y, t + delta, t + 2 * delta, tol, &s, &r);
  const double ep2 = model.energy(y);

  const double de = (8 * (ep1 - em1) - (ep2 - em2)) / (12 * delta);
  const double dr = model.drain(yc);
  return {std::abs(de + dr), std::abs(dr)};
}

}  // namespace nlkg
