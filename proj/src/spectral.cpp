#include "nlkg/spectral.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace nlkg {

Eigen::MatrixXd assemble_operator(const Grid1D& g, const Potential& V,
                                  double m) {
  if (m <= 0) throw ConfigError("operator: mass must be positive");
  double vmax = V.values.cwiseAbs().maxCoeff();
  if (g.h * std::sqrt(vmax) > 0.5)
    throw ResolutionError("operator: grid too coarse for the potential");

  const int n = g.n;
  const double s = 1.0 / (12.0 * g.h * g.h);
  Eigen::MatrixXd H = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    H(i, i) = 30.0 * s + V.values[i] + m * m;
    if (i - 1 >= 0) H(i, i - 1) = -16.0 * s;
    if (i + 1 < n) H(i, i + 1) = -16.0 * s;
    if (i - 2 >= 0) H(i, i - 2) = s;
    if (i + 2 < n) H(i, i + 2) = s;
  }
  // fourth-order closure at the walls: odd reflection through the zero
  // boundary node keeps sine modes exact eigenvectors of the stencil
  H(0, 0) -= s;
  H(n - 1, n - 1) -= s;
  return H;
}

SpectralData spectral_decompose(const Grid1D& g, const Potential& V, double m,
                                const Tolerances& tol) {
  SpectralData S;
  S.grid = g;
  S.pot = V;
  S.m = m;
  S.tol_edge = tol.edge_factor * g.h * g.h;

  Eigen::MatrixXd H = assemble_operator(g, V, m);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
  if (es.info() != Eigen::Success)
    throw ResolutionError("spectral: eigensolver failed to converge");

  if (es.eigenvalues()[0] <= 1e-12)
    throw HypothesisError(
        "spectral: -d2/dx2 + V + m^2 is not positive definite; increase m");

  S.evals = es.eigenvalues().array() - m * m;  // spectrum of A = -d2/dx2 + V
  S.evecs = es.eigenvectors() / std::sqrt(g.h);

  int nb = 0;
  while (nb < g.n && S.evals[nb] < -S.tol_edge) ++nb;
  S.n_bound = nb;

  // A localized state with energy inside the edge band signals a threshold
  // eigenvalue/resonance; box continuum samples also live near zero but are
  // delocalized, so use the outer-half mass to tell them apart.
  for (int k = nb; k < g.n && S.evals[k] <= S.tol_edge; ++k) {
    double outer = 0, total = 0;
    for (int i = 0; i < g.n; ++i) {
      double w = S.evecs(i, k) * S.evecs(i, k);
      total += w;
      if (std::abs(g.x[i]) > 0.5 * g.L) outer += w;
    }
    if (outer < 0.1 * total)
      throw HypothesisError(
          "spectral: localized state at the continuum edge (energy " +
          std::to_string(S.evals[k]) + "); threshold resonance risk");
  }

  S.omega.resize(nb);
  for (int j = 0; j < nb; ++j) S.omega[j] = std::sqrt(S.evals[j] + m * m);
  S.mu_cont.resize(g.n - nb);
  for (int k = nb; k < g.n; ++k)
    S.mu_cont[k - nb] = std::sqrt(S.evals[k] + m * m);
  return S;
}

Eigen::VectorXd SpectralData::to_modal(const Eigen::VectorXd& g) const {
  return grid.h * (evecs.transpose() * g);
}
Eigen::VectorXcd SpectralData::to_modal(const Eigen::VectorXcd& g) const {
  return grid.h * (evecs.transpose() * g);
}
Eigen::VectorXd SpectralData::from_modal(const Eigen::VectorXd& c) const {
  return evecs * c;
}
Eigen::VectorXcd SpectralData::from_modal(const Eigen::VectorXcd& c) const {
  return evecs * c;
}

Eigen::VectorXcd SpectralData::to_cont(const Eigen::VectorXcd& g) const {
  return grid.h * (evecs.rightCols(n_cont()).transpose() * g);
}
Eigen::VectorXcd SpectralData::from_cont(const Eigen::VectorXcd& c) const {
  return evecs.rightCols(n_cont()) * c;
}
Eigen::VectorXcd SpectralData::project_continuum(
    const Eigen::VectorXcd& g) const {
  return from_cont(to_cont(g));
}

double SpectralData::pc_defect(const Eigen::VectorXcd& g) const {
  double gn = g.norm();
  if (gn == 0) return 0;
  double bound2 = 0;
  for (int j = 0; j < n_bound; ++j) {
    std::complex<double> c = grid.h * (evecs.col(j).transpose() * g)(0);
    bound2 += std::norm(c);
  }
  return std::sqrt(bound2) / (std::sqrt(grid.h) * gn);
}

double SpectralData::level_spacing(double lam) const {
  const int nc = n_cont();
  int k = 0;
  double best = std::abs(mu_cont[0] - lam);
  for (int i = 1; i < nc; ++i) {
    double d = std::abs(mu_cont[i] - lam);
    if (d < best) { best = d; k = i; }
  }
  int lo = std::max(0, k - 1), hi = std::min(nc - 1, k + 1);
  return (mu_cont[hi] - mu_cont[lo]) / (hi - lo);
}

Eigen::VectorXcd apply_B_power(const SpectralData& S, double a,
                               const Eigen::VectorXcd& g,
                               const Tolerances& tol) {
  if (a == 0.0) return S.project_continuum(g);
  if (S.pc_defect(g) > tol.pc_project)
    throw std::invalid_argument(
        "apply_B_power: input has a bound-state component");
  Eigen::VectorXcd c = S.to_cont(g);
  for (int k = 0; k < c.size(); ++k) c[k] *= std::pow(S.mu_cont[k], a);
  return S.from_cont(c);
}

Eigen::VectorXcd resolvent(const SpectralData& S, std::complex<double> z,
                           const Eigen::VectorXcd& g, const Tolerances& tol) {
  if (S.pc_defect(g) > tol.pc_project)
    throw std::invalid_argument("resolvent: input has a bound-state component");
  if (z.imag() == 0.0 && z.real() >= S.m - S.tol_edge)
    throw ResolutionError(
        "resolvent: real energy inside the continuum; use the "
        "limiting-absorption evaluator");
  Eigen::VectorXcd c = S.to_cont(g);
  for (int k = 0; k < c.size(); ++k) c[k] /= (S.mu_cont[k] - z);
  return S.from_cont(c);
}

}  // namespace nlkg
