#include "nlkg/scattering.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "nlkg/errors.hpp"
#include "nlkg/jets.hpp"

namespace nlkg {
namespace {

constexpr double kPi = 3.14159265358979323846;

void check_band(const SpectralData& S, double lam) {
  const double sp = S.level_spacing(lam);
  if (lam - S.m < 5 * sp)
    throw ResolutionError("spectral point too close to the continuum edge");
  if (S.mu_cont.size() == 0 || lam > S.mu_cont[S.mu_cont.size() - 1] - 5 * sp)
    throw ResolutionError("spectral point beyond the resolved band");
}

// A finite box samples the continuum on an almost uniform comb of levels.
// By Poisson summation the comb contributes exp(-2 pi eps / D) to the
// regularized resolvent at height eps, where D is the spacing of the levels
// that actually carry weight (alternate levels when the data has a definite
// parity, hence the stride-two measurement).  Fitting the basis
// {1, eps, .., eps^3, exp(-2 pi eps / D)} over a low window and reading off
// the constant removes the smooth bias and the comb artifact together.
double comb_spacing(const SpectralData& S, double lam) {
  const auto& mu = S.mu_cont;
  Eigen::Index i = 0;
  while (i + 1 < mu.size() && mu[i + 1] < lam) ++i;
  i = std::clamp<Eigen::Index>(i, 2, mu.size() - 3);
  return (mu[i + 2] - mu[i - 2]) / 2.0;
}

std::vector<double> eps_schedule(const SpectralData& S, double lam,
                                 double eps0) {
  if (eps0 > 0) return {16 * eps0, 8 * eps0, 4 * eps0, 2 * eps0};
  const double sp = S.level_spacing(lam);
  const double lo = 1.5 * sp;
  const double hi = std::max(std::min((lam - S.m) / 2, 8 * sp), 3.5 * sp);
  const int nn = 12;
  std::vector<double> eps(nn);
  const double r = std::pow(hi / lo, 1.0 / (nn - 1));
  for (int j = 0; j < nn; ++j) eps[j] = hi / std::pow(r, j);
  return eps;
}

double fit_at_zero(const std::vector<double>& eps, double comb,
                   const std::vector<double>& f) {
  const int n = static_cast<int>(eps.size());
  const int deg = std::min(3, n - 2);
  const bool with_comb = n >= deg + 3;
  const int ncol = deg + 1 + (with_comb ? 1 : 0);
  const double scale = *std::max_element(eps.begin(), eps.end());
  Eigen::MatrixXd A(n, ncol);
  Eigen::VectorXd b(n);
  for (int i = 0; i < n; ++i) {
    double p = 1;
    for (int j = 0; j <= deg; ++j) {
      A(i, j) = p;
      p *= eps[i] / scale;
    }
    if (with_comb) A(i, deg + 1) = std::exp(-2 * kPi * eps[i] / comb);
    b[i] = f[i];
  }
  // constant term only: the comb column is a box artifact, not a limit
  return A.colPivHouseholderQr().solve(b)[0];
}

std::complex<double> fit_at_zero(const std::vector<double>& eps, double comb,
                                 const std::vector<std::complex<double>>& f) {
  std::vector<double> re(f.size()), im(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    re[i] = f[i].real();
    im[i] = f[i].imag();
  }
  return {fit_at_zero(eps, comb, re), fit_at_zero(eps, comb, im)};
}

std::complex<double> lap_at_eps(const SpectralData& S, double lam, double eps,
                                const Eigen::VectorXcd& a,
                                const Eigen::VectorXcd& b) {
  std::complex<double> s = 0;
  for (Eigen::Index k = 0; k < S.mu_cont.size(); ++k)
    s += a[k] * b[k] / std::complex<double>(S.mu_cont[k] - lam, -eps);
  return s;
}

}  // namespace

DistortedWaves build_distorted_waves(const SpectralData& S,
                                     const Eigen::VectorXd& k,
                                     const Tolerances& tol) {
  const auto& g = S.grid;
  const Eigen::VectorXd& V = S.pot.values;
  const double vmax = V.cwiseAbs().maxCoeff();

  std::vector<int> sup;
  for (int i = 0; i < g.n; ++i)
    if (std::abs(V[i]) > 1e-13 * vmax) sup.push_back(i);
  const int ns = static_cast<int>(sup.size());

  DistortedWaves W;
  W.k = k;
  W.u.resize(g.n, k.size());
  W.T.resize(k.size());
  W.R.resize(k.size());
  W.residual.resize(k.size());

  for (Eigen::Index j = 0; j < k.size(); ++j) {
    const double kj = k[j];
    if (kj < 1e-6)
      throw ConfigError("distorted waves need strictly positive wavenumbers");
    const std::complex<double> pre = g.h / std::complex<double>(0, 2 * kj);

    if (ns == 0) {
      for (int i = 0; i < g.n; ++i)
        W.u(i, j) = std::polar(1.0, kj * g.x[i]);
      W.T[j] = 1.0;
      W.R[j] = 0.0;
      W.residual[j] = 0.0;
      continue;
    }

    // w(x) = F(x) + sum_y A(x,y) w(y), y restricted to the support of V
    Eigen::MatrixXcd A(ns, ns);
    Eigen::VectorXcd F(ns);
    for (int r = 0; r < ns; ++r) {
      const double x = g.x[sup[r]];
      std::complex<double> acc = 0;
      for (int c = 0; c < ns; ++c) {
        const double y = g.x[sup[c]];
        const std::complex<double> a =
            pre * std::polar(1.0, kj * (std::abs(x - y) + y - x)) * V[sup[c]];
        A(r, c) = a;
        acc += a;
      }
      F[r] = acc;
    }

    Eigen::MatrixXcd M = Eigen::MatrixXcd::Identity(ns, ns) - A;
    Eigen::VectorXcd ws = M.partialPivLu().solve(F);
    W.residual[j] = (M * ws - F).norm() / (F.norm() + 1e-300);
    if (W.residual[j] > tol.ls_residual)
      throw ResolutionError("integral-equation solve did not converge");

    // extend off the support and assemble u, T, R
    std::complex<double> Racc = 0;
    for (int c = 0; c < ns; ++c) {
      const double y = g.x[sup[c]];
      Racc += pre * std::polar(1.0, 2 * kj * y) * V[sup[c]] * (1.0 + ws[c]);
    }
    W.R[j] = Racc;
    for (int i = 0; i < g.n; ++i) {
      const double x = g.x[i];
      std::complex<double> w = 0;
      for (int c = 0; c < ns; ++c) {
        const double y = g.x[sup[c]];
        w += pre * std::polar(1.0, kj * (std::abs(x - y) + y - x)) * V[sup[c]] *
             (1.0 + ws[c]);
      }
      W.u(i, j) = std::polar(1.0, kj * x) * (1.0 + w);
    }
    W.T[j] = 1.0 + (W.u(g.n - 1, j) / std::polar(1.0, kj * g.x[g.n - 1]) - 1.0);
  }
  return W;
}

std::pair<std::complex<double>, std::complex<double>> dw_transform(
    const SpectralData& S, const DistortedWaves& W, int col,
    const Eigen::VectorXcd& g) {
  const double c = S.grid.h / std::sqrt(2 * kPi);
  const std::complex<double> plus = c * W.u.col(col).dot(g);
  const std::complex<double> minus =
      c * (W.u.col(col).array() * g.array()).sum();
  return {plus, minus};
}

double density_smoothed(const SpectralData& S, double lam,
                        const Eigen::VectorXcd& g, double sigma) {
  check_band(S, lam);
  if (sigma <= 0) sigma = 3 * S.level_spacing(lam);
  auto at = [&](double s) {
    double acc = 0;
    const double c = 1.0 / (s * std::sqrt(2 * kPi));
    for (Eigen::Index k = 0; k < S.mu_cont.size(); ++k) {
      const double d = (S.mu_cont[k] - lam) / s;
      acc += std::norm(g[k]) * c * std::exp(-0.5 * d * d);
    }
    return acc;
  };
  const double v1 = at(sigma), v2 = at(sigma / std::sqrt(2.0));
  return 2 * v2 - v1;
}

double density_extrapolated(const SpectralData& S, double lam,
                            const Eigen::VectorXcd& g, double eps0) {
  check_band(S, lam);
  const auto eps = eps_schedule(S, lam, eps0);
  std::vector<double> vals;
  for (double e : eps)
    vals.push_back(lap_at_eps(S, lam, e, g.conjugate(), g).imag() / kPi);
  return fit_at_zero(eps, comb_spacing(S, lam), vals);
}

DensityEstimate limiting_absorption(const SpectralData& S, double lam,
                                    const Eigen::VectorXcd& g, double eps0,
                                    double sigma, const Tolerances& tol) {
  DensityEstimate est;
  est.resolvent = lap_bilinear(S, lam, g.conjugate(), g, eps0);
  est.density = est.resolvent.imag() / kPi;
  est.smoothed = density_smoothed(S, lam, g, sigma);
  const double floor = 1e-12 * g.squaredNorm();
  const double scale = std::max(std::abs(est.density), std::abs(est.smoothed));
  est.agreement =
      scale < floor ? 0.0 : std::abs(est.density - est.smoothed) / scale;
  if (est.agreement > tol.density_agree)
    throw ResolutionError(
        "resolvent-limit and smoothed density estimates disagree; increase "
        "the box size L or the grid resolution");
  return est;
}

double density_distorted(const SpectralData& S, const DistortedWaves& W,
                         int col, double lam, const Eigen::VectorXcd& g) {
  const double k0 = W.k[col];
  const Eigen::VectorXcd gx = S.from_cont(g);
  auto [gp, gm] = dw_transform(S, W, col, gx);
  return (lam / k0) * (std::norm(gp) + std::norm(gm));
}

std::complex<double> lap_bilinear(const SpectralData& S, double lam,
                                  const Eigen::VectorXcd& a,
                                  const Eigen::VectorXcd& b, double eps0) {
  check_band(S, lam);
  const auto eps = eps_schedule(S, lam, eps0);
  std::vector<std::complex<double>> vals;
  for (double e : eps) vals.push_back(lap_at_eps(S, lam, e, a, b));
  return fit_at_zero(eps, comb_spacing(S, lam), vals);
}

namespace {

FiberMatrix make_fiber(const SpectralData& S, double lam,
                       const std::vector<MultiIndex>& members,
                       const std::map<MultiIndex, Eigen::VectorXcd>& coup,
                       const DistortedWaves& W, int col,
                       const Tolerances& tol) {
  const int n = static_cast<int>(members.size());
  const Eigen::VectorXcd zero = Eigen::VectorXcd::Zero(S.n_cont());
  std::vector<const Eigen::VectorXcd*> p(n, &zero);
  for (int i = 0; i < n; ++i) {
    auto it = coup.find(members[i]);
    if (it != coup.end()) p[i] = &it->second;
  }

  FiberMatrix fm;
  fm.lambda = lam;
  fm.members = members;
  fm.gamma_lap.resize(n, n);
  fm.gamma_dw.resize(n, n);

  // independent Hermitian-form evaluations; defect measured, not imposed
  auto q = [&](const Eigen::VectorXcd& v) {
    return limiting_absorption(S, lam, v, -1, -1, tol).density;
  };
  const std::complex<double> I(0, 1);
  for (int a = 0; a < n; ++a) {
    fm.gamma_lap(a, a) = kPi * q(*p[a]);
    for (int b = a + 1; b < n; ++b) {
      const double qpp = q(*p[a] + *p[b]);
      const double qmm = q(*p[a] - *p[b]);
      const double qpi = q(*p[a] + I * *p[b]);
      const double qmi = q(*p[a] - I * *p[b]);
      const std::complex<double> v(0.25 * (qpp - qmm), 0.25 * (qmi - qpi));
      fm.gamma_lap(a, b) = kPi * v;
      fm.gamma_lap(b, a) = kPi * std::conj(v);
    }
  }
  // the (a,b) and (b,a) entries above share their q values, so probe the
  // defect against an independently assembled bilinear limit as well
  double defect = 0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const std::complex<double> c =
          lap_bilinear(S, lam, p[a]->conjugate(), *p[b]);
      const std::complex<double> ct =
          lap_bilinear(S, lam, p[b]->conjugate(), *p[a]);
      // (c - ct^*)/2i is the boundary-value jump, already pi * density
      defect = std::max(
          defect, std::abs((c - std::conj(ct)) / (2.0 * I) -
                           fm.gamma_lap(a, b)));
    }
  const double scale = std::max(fm.gamma_lap.norm(), 1e-12);
  fm.hermiticity =
      std::max((fm.gamma_lap - fm.gamma_lap.adjoint()).cwiseAbs().maxCoeff(),
               defect) /
      scale;

  std::vector<std::complex<double>> tp(n), tm(n);
  for (int a = 0; a < n; ++a) {
    const Eigen::VectorXcd px = S.from_cont(*p[a]);
    std::tie(tp[a], tm[a]) = dw_transform(S, W, col, px);
  }
  const double k0 = W.k[col];
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      fm.gamma_dw(a, b) = kPi * (lam / k0) *
                          (std::conj(tp[a]) * tp[b] + std::conj(tm[a]) * tm[b]);

  const double na = fm.gamma_lap.norm(), nb = fm.gamma_dw.norm();
  fm.agreement =
      (na < 1e-12 && nb < 1e-12)
          ? 0.0
          : (fm.gamma_lap - fm.gamma_dw).norm() / std::max(na, nb);

  Eigen::MatrixXcd herm = 0.5 * (fm.gamma_lap + fm.gamma_lap.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(herm);
  fm.min_eig = es.eigenvalues().minCoeff();
  fm.trace = herm.trace().real();
  return fm;
}

}  // namespace

FgrData fgr_matrix(const SpectralData& S, const NormalFormResult& nf,
                   const MultiIndexSet& sets, const Tolerances& tol) {
  const auto coup = nf.radiating_couplings();

  auto collect_k = [&](const std::vector<double>& energies) {
    std::vector<double> ks;
    for (double lam : energies)
      ks.push_back(std::sqrt(std::max(lam * lam - S.m * S.m, 1e-12)));
    return ks;
  };
  std::vector<double> ks = collect_k(sets.energies_hat);
  for (double k : collect_k(sets.energies)) ks.push_back(k);
  Eigen::VectorXd kvec =
      Eigen::Map<Eigen::VectorXd>(ks.data(), static_cast<Eigen::Index>(ks.size()));
  DistortedWaves W = build_distorted_waves(S, kvec, tol);

  FgrData out;
  int col = 0;
  for (std::size_t i = 0; i < sets.energies_hat.size(); ++i, ++col) {
    std::vector<MultiIndex> members;
    for (int idx : sets.fibers_hat[i]) members.push_back(sets.Mhat[idx]);
    out.hat_fibers.push_back(
        make_fiber(S, sets.energies_hat[i], members, coup, W, col, tol));
  }
  for (std::size_t i = 0; i < sets.energies.size(); ++i, ++col) {
    std::vector<MultiIndex> members;
    bool any = false;
    for (int idx : sets.fibers[i]) {
      members.push_back(sets.M[idx]);
      any = any || coup.count(members.back()) > 0;
    }
    if (!any) continue;
    out.all_fibers.push_back(
        make_fiber(S, sets.energies[i], members, coup, W, col, tol));
  }

  out.coupling_alive = false;
  out.fibers_invertible = !out.hat_fibers.empty();
  out.rates_positive = !out.hat_fibers.empty();
  for (const auto& fm : out.hat_fibers) {
    Eigen::MatrixXcd herm = 0.5 * (fm.gamma_lap + fm.gamma_lap.adjoint());
    for (int a = 0; a < herm.rows(); ++a) {
      const double d = herm(a, a).real();
      out.gamma[fm.members[a]] = d;
      out.coupling_alive = out.coupling_alive || d > 1e-12;
      out.rates_positive = out.rates_positive && d > 1e-12;
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(herm);
    const double smax = svd.singularValues().maxCoeff();
    const double smin = svd.singularValues().minCoeff();
    out.fibers_invertible =
        out.fibers_invertible && smax > 1e-12 && smin > 1e-10 * smax;
  }
  return out;
}

CoeffTensor model_coefficients(const SpectralData& S,
                               const NormalFormResult& nf,
                               const MultiIndexSet& sets,
                               const Tolerances& tol) {
  (void)tol;
  const auto coup = nf.radiating_couplings();
  CoeffTensor out;
  out.eps_used = 0;

  for (std::size_t i = 0; i < sets.energies.size(); ++i) {
    const double lam = sets.energies[i];
    std::vector<const MultiIndex*> mem;
    std::vector<const Eigen::VectorXcd*> vec;
    for (int idx : sets.fibers[i]) {
      auto it = coup.find(sets.M[idx]);
      if (it == coup.end()) continue;
      mem.push_back(&it->first);
      vec.push_back(&it->second);
    }
    if (mem.empty()) continue;
    const double eps0 = 3 * S.level_spacing(lam);
    out.eps_used = std::max(out.eps_used, eps0);
    for (std::size_t a = 0; a < mem.size(); ++a) {
      for (std::size_t b = 0; b < mem.size(); ++b) {
        CoeffEntry e;
        e.nu = *mem[a];
        e.mu = *mem[b];
        e.lambda = lam;
        e.c = lap_bilinear(S, lam, *vec[a], vec[b]->conjugate());
        out.entries.push_back(std::move(e));
      }
      // outgoing-corrected coupling at the coarsest regularization
      Eigen::VectorXcd y(S.n_cont());
      for (Eigen::Index k = 0; k < S.mu_cont.size(); ++k)
        y[k] = std::conj((*vec[a])[k]) /
               std::complex<double>(S.mu_cont[k] - lam, -eps0);
      out.outgoing[*mem[a]] = std::move(y);
    }
  }
  return out;
}

GenericityScan genericity_scan(const SpectralData& S, const Nonlinearity& base,
                               const MultiIndex& mu,
                               const Eigen::VectorXd& beta_values, int r,
                               const Tolerances& tol) {
  GenericityScan out;
  out.mu = mu;
  out.taylor_order = order(mu) + 1;
  out.beta_values = beta_values;
  out.gamma_values.resize(beta_values.size());

  const double lam = dot(mu, S.omega);
  for (Eigen::Index i = 0; i < beta_values.size(); ++i) {
    Nonlinearity nl = base;
    nl.taylor[out.taylor_order] = beta_values[i];
    FormalHamiltonian Hp = expand_interaction(S, nl, r + 3);
    NormalFormResult nf = birkhoff_normalize(S, Hp, r, -1, tol);
    const auto coup = nf.radiating_couplings();
    auto it = coup.find(mu);
    out.gamma_values[i] =
        it == coup.end()
            ? 0.0
            : kPi * limiting_absorption(S, lam, it->second, -1, -1, tol)
                        .density;
  }

  Eigen::MatrixXd Vand(beta_values.size(), 3);
  for (Eigen::Index i = 0; i < beta_values.size(); ++i) {
    Vand(i, 0) = beta_values[i] * beta_values[i];
    Vand(i, 1) = beta_values[i];
    Vand(i, 2) = 1.0;
  }
  out.quad = Vand.colPivHouseholderQr().solve(out.gamma_values);
  out.fit_residual = (Vand * out.quad - out.gamma_values).norm() /
                     std::max(out.gamma_values.norm(), 1e-300);
  const double a = out.quad[0], b = out.quad[1], c = out.quad[2];
  if (std::abs(a) > 1e-14) {
    const double disc = b * b - 4 * a * c;
    if (disc >= 0) {
      out.roots.push_back((-b - std::sqrt(disc)) / (2 * a));
      out.roots.push_back((-b + std::sqrt(disc)) / (2 * a));
    }
  } else if (std::abs(b) > 1e-14) {
    out.roots.push_back(-c / b);
  }
  return out;
}

}  // namespace nlkg
