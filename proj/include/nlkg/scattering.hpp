#pragma once
#include <complex>
#include <map>
#include <vector>

#include <Eigen/Core>

#include "nlkg/normalform.hpp"
#include "nlkg/resonance.hpp"
#include "nlkg/spectral.hpp"

namespace nlkg {

// Generalized plane-wave eigenfunctions u(x,k) = e^{ikx}(1 + w(x,k)) of
// -d2/dx2 + V, computed from the outgoing integral equation
//   w(x) = (2ik)^{-1} \int e^{ik|x-y| + ik(y-x)} V(y) (1 + w(y)) dy
// by a direct solve restricted to the support of V. Columns are independent.
struct DistortedWaves {
  Eigen::VectorXd k;       // positive wavenumbers
  Eigen::MatrixXcd u;      // grid.n x k.size()
  Eigen::VectorXcd T;      // transmission 1 + w(+infty)
  Eigen::VectorXcd R;      // reflection
  Eigen::VectorXd residual;  // relative integral-equation residual
};

DistortedWaves build_distorted_waves(const SpectralData& S,
                                     const Eigen::VectorXd& k,
                                     const Tolerances& tol = {});

// hat(g)(+-k_j) = (2 pi)^{-1/2} < conj(u(., +-k_j)), g >
std::pair<std::complex<double>, std::complex<double>> dw_transform(
    const SpectralData& S, const DistortedWaves& W, int col,
    const Eigen::VectorXcd& g);

// ---- scalar spectral density  <gbar, delta(B - lam) g> ----

// Gaussian-smoothed eigen-sum with two-width Richardson; sigma < 0 picks
// 3x the local level spacing.
double density_smoothed(const SpectralData& S, double lam,
                        const Eigen::VectorXcd& g, double sigma = -1);

// Im of the limiting-absorption resolvent over pi, extrapolated to
// vanishing regularization.  By default the fit runs over twelve geometric
// heights in [1.5 sp, max(min((lam-m)/2, 8 sp), 3.5 sp)] (sp = local level
// spacing) with an exp(-2 pi eps / D) column soaking up the finite-box level
// comb; eps0 > 0 pins the short schedule {16, 8, 4, 2} * eps0 instead.
double density_extrapolated(const SpectralData& S, double lam,
                            const Eigen::VectorXcd& g, double eps0 = -1);

/// closed form through the distorted transform:
// (lam/k0)(|ghat(k0)|^2 + |ghat(-k0)|^2), k0 = sqrt(lam^2 - m^2)
double density_distorted(const SpectralData& S, const DistortedWaves& W,
                         int col, double lam, const Eigen::VectorXcd& g);

// bilinear limiting-absorption value  sum_k a_k b_k / (mu_k - lam - i eps)
// extrapolated to eps -> 0 (same schedule and comb handling as above);
// a, b are continuum coefficients.
std::complex<double> lap_bilinear(const SpectralData& S, double lam,
                                  const Eigen::VectorXcd& a,
                                  const Eigen::VectorXcd& b, double eps0 = -1);

// Boundary value of the resolvent together with both density estimates.
// Throws ResolutionError (advising a larger box or grid) when the two
// estimates disagree by more than tol.density_agree; vectors whose density
// is zero at working precision are exempt.
struct DensityEstimate {
  std::complex<double> resolvent;  // <gbar, (B - lam - i0)^{-1} g>
  double density = 0;              // Im(resolvent) / pi
  double smoothed = 0;             // Gaussian-kernel estimate
  double agreement = 0;            // relative gap of the two estimates
};

DensityEstimate limiting_absorption(const SpectralData& S, double lam,
                                    const Eigen::VectorXcd& g,
                                    double eps0 = -1, double sigma = -1,
                                    const Tolerances& tol = {});

// ---- damping-rate matrices over the radiation channels ----

struct FiberMatrix {
  double lambda = 0;
  std::vector<MultiIndex> members;   // exponents carrying a coupling
  Eigen::MatrixXcd gamma_lap;        // pi * <conj Phi_a, delta(B-lam) Phi_b>
  Eigen::MatrixXcd gamma_dw;         // same through the distorted transform
  double agreement = 0;              // relative Frobenius gap
  double hermiticity = 0;            // worst |G - G^H| entry of gamma_lap
  double min_eig = 0, trace = 0;     // of the Hermitian part of gamma_lap
};

struct FgrData {
  std::vector<FiberMatrix> hat_fibers;  // channels of the minimal catalogue
  std::vector<FiberMatrix> all_fibers;  // every coupled resonant channel
  std::map<MultiIndex, double> gamma;   // diagonal rates over Mhat
  bool coupling_alive = false;      // some minimal channel radiates
  bool fibers_invertible = false;   // every minimal fiber matrix invertible
  bool rates_positive = false;      // every minimal diagonal rate positive
};

FgrData fgr_matrix(const SpectralData& S, const NormalFormResult& nf,
                   const MultiIndexSet& sets, const Tolerances& tol = {});

// ---- interaction coefficients of the reduced mode system ----

struct CoeffEntry {
  MultiIndex mu, nu;  // resonant pair, w.mu = w.nu
  double lambda = 0;
  std::complex<double> c;  // <Phi_{0 nu}, (B - lam - i0)^{-1} conj Phi_{0 mu}>
};

struct CoeffTensor {
  std::vector<CoeffEntry> entries;
  // outgoing-corrected couplings at fixed regularization, for diagnostics
  std::map<MultiIndex, Eigen::VectorXcd> outgoing;
  double eps_used = 0;
};

CoeffTensor model_coefficients(const SpectralData& S,
                               const NormalFormResult& nf,
                               const MultiIndexSet& sets,
                               const Tolerances& tol = {});

// ---- dependence of a diagonal rate on the lowest interaction coefficient ----

struct GenericityScan {
  MultiIndex mu;
  int taylor_order = 0;            // scanned beta^{(j)}(0), j = |mu| + 1
  Eigen::VectorXd beta_values, gamma_values;
  Eigen::Vector3d quad;            // fitted a2 b^2 + a1 b + a0, [a2, a1, a0]
  double fit_residual = 0;
  std::vector<double> roots;
};

GenericityScan genericity_scan(const SpectralData& S, const Nonlinearity& base,
                               const MultiIndex& mu,
                               const Eigen::VectorXd& beta_values, int r,
                               const Tolerances& tol = {});

}  // namespace nlkg
