#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <complex>

#include <Eigen/Dense>

#include "doctest.h"
#include "nlkg/jets.hpp"
#include "nlkg/nonlinearity.hpp"
#include "nlkg/normalform.hpp"
#include "nlkg/resonance.hpp"
#include "nlkg/scattering.hpp"
#include "nlkg/spectral.hpp"

using namespace nlkg;
using cplx = std::complex<double>;

namespace {

constexpr double kTau = 6.283185307179586476925286766559;  // 2 pi

const SpectralData& free_line() {
  static SpectralData S = [] {
    Grid1D g = Grid1D::make(40, 1026);
    return spectral_decompose(g, Potential::zero(g), 1.0);
  }();
  return S;
}

const SpectralData& well125() {
  static SpectralData S = [] {
    Grid1D g = Grid1D::make(40, 1026);
    return spectral_decompose(g, Potential::sech_well(g, 2.0, 1.0), 1.25);
  }();
  return S;
}

const SpectralData& well11() {
  static SpectralData S = [] {
    Grid1D g = Grid1D::make(40, 770);
    return spectral_decompose(g, Potential::sech_well(g, 2.0, 1.0), 1.1);
  }();
  return S;
}

Eigen::VectorXcd gaussian(const SpectralData& S, double width, double x0 = 0) {
  Eigen::VectorXd g =
      (-((S.grid.x.array() - x0) / width).square() / 2).exp();
  return g.cast<cplx>();
}

}  // namespace

TEST_CASE("free-line density: closed form (lam/k0) 2|ghat|^2") {
  const SpectralData& S = free_line();
  // density evaluators take continuum coefficients
  const Eigen::VectorXcd c = S.to_cont(gaussian(S, 1.0));
  const double lam = 1.2;
  const double k0 = std::sqrt(lam * lam - 1.0);
  // ghat(k) = exp(-k^2/2) for the unit Gaussian
  const double exact = (lam / k0) * 2.0 * std::exp(-k0 * k0);

  const double d_lap = density_extrapolated(S, lam, c);
  CHECK(std::abs(d_lap - exact) < 5e-3 * exact);

  const double sp = S.level_spacing(lam);
  const double d_sm = density_smoothed(S, lam, c, 2 * sp);
  CHECK(std::abs(d_sm - exact) < 5e-3 * exact);

  // default kernel width 3 sp carries a visible sigma^4 bias; the
  // agreement field is a coarse gate, not a precision statement
  const DensityEstimate est = limiting_absorption(S, lam, c);
  CHECK(est.agreement < 0.03);
  CHECK(std::abs(est.density - d_lap) < 1e-12 * exact);

  SUBCASE("phase covariance") {
    const cplx ph = std::polar(1.0, 0.7331);
    const double d_rot = density_extrapolated(S, lam, (ph * c).eval());
    CHECK(std::abs(d_rot - d_lap) < 1e-12 * d_lap);
  }
}

TEST_CASE("free distorted waves reduce to the Fourier transform") {
  const SpectralData& S = free_line();
  Eigen::VectorXd k(3);
  k << 0.5, 0.9, 1.3;
  const DistortedWaves W = build_distorted_waves(S, k);
  const Eigen::VectorXcd g = gaussian(S, 1.3, 0.4);

  for (int j = 0; j < 3; ++j) {
    CHECK(std::abs(W.T[j] - 1.0) < 1e-10);
    CHECK(std::abs(W.R[j]) < 1e-10);
    CHECK(W.residual[j] < 1e-10);
    const auto [gp, gm] = dw_transform(S, W, j, g);
    const double c = 1.0 / std::sqrt(kTau);
    const Eigen::ArrayXd ph = k[j] * S.grid.x.array();
    const cplx fp = c * S.grid.h *
                    ((-cplx(0, 1) * ph).exp() * g.array()).sum();
    const cplx fm = c * S.grid.h *
                    ((cplx(0, 1) * ph).exp() * g.array()).sum();
    CHECK(std::abs(gp - fp) < 1e-8);
    CHECK(std::abs(gm - fm) < 1e-8);
  }
}

TEST_CASE("reflectionless well: unimodular transmission, completeness") {
  const SpectralData& S = well125();

  SUBCASE("no reflection at any energy") {
    Eigen::VectorXd k(3);
    k << 0.4, 1.0, 2.0;
    const DistortedWaves W = build_distorted_waves(S, k);
    for (int j = 0; j < 3; ++j) {
      CHECK(std::abs(std::abs(W.T[j]) - 1.0) < 2e-3);
      CHECK(std::abs(W.R[j]) < 2e-3);
      CHECK(W.residual[j] < 1e-6);
    }
  }

  SUBCASE("bound state plus wave channels resolve the identity") {
    const Eigen::VectorXcd g = gaussian(S, 2.0, 1.0);
    const double total = S.grid.h * g.squaredNorm();

    double sum = 0;
    for (int j = 0; j < S.n_bound; ++j) {
      const cplx q = S.grid.h * (S.bound_state(j).cast<cplx>().array() *
                                 g.array()).sum();
      sum += std::norm(q);
    }
    const double dk = 0.08;
    const int nk = 75;
    Eigen::VectorXd k(nk);
    for (int j = 0; j < nk; ++j) k[j] = (j + 0.5) * dk;  // midpoint rule
    const DistortedWaves W = build_distorted_waves(S, k);
    for (int j = 0; j < nk; ++j) {
      const auto [gp, gm] = dw_transform(S, W, j, g);
      sum += dk * (std::norm(gp) + std::norm(gm));
    }
    CHECK(std::abs(sum - total) < 2e-3 * total);
  }
}

TEST_CASE("density guards") {
  const SpectralData& S = well125();

  SUBCASE("energy hugging the continuum edge is rejected") {
    const Eigen::VectorXcd c = S.to_cont(gaussian(S, 1.0));
    CHECK_THROWS_AS(density_extrapolated(S, S.m + 1e-4, c), ResolutionError);
  }

  SUBCASE("spectrally disjoint vector carries no density") {
    Eigen::VectorXcd c = Eigen::VectorXcd::Zero(S.n_cont());
    for (int j = 0; j < S.n_cont(); ++j)
      if (S.mu_cont[j] > 2.0)
        c[j] = std::exp(-std::pow((S.mu_cont[j] - 2.5) / 0.2, 2));
    const double scale = c.squaredNorm();
    CHECK(std::abs(density_smoothed(S, 1.5, c)) < 1e-9 * scale);
    // the resolvent fit keeps a small extrapolation residue
    CHECK(std::abs(density_extrapolated(S, 1.5, c)) < 2e-5 * scale);
  }
}

TEST_CASE("damping matrices: dead channel at 1.25, live channel at 1.1") {
  SUBCASE("quartic coupling into the doubled frequency vanishes") {
    // 2w = 1.5 lies in the continuum but u^4 produces no xibar^2 <.,f> term
    const SpectralData& S = well125();
    const MultiIndexSet sets = enumerate_channels(S.omega, S.m, 3);
    REQUIRE(sets.Mhat.size() == 1);
    REQUIRE(sets.Mhat[0] == MultiIndex{2});
    const FormalHamiltonian Hp =
        expand_interaction(S, Nonlinearity::quartic(), 5);
    const NormalFormResult nf = birkhoff_normalize(S, Hp, 1);
    const FgrData fgr = fgr_matrix(S, nf, sets);
    CHECK(!fgr.coupling_alive);
    CHECK(fgr.gamma.at(MultiIndex{2}) == 0.0);
  }

  SUBCASE("cubic-in-mode channel radiates and both methods agree") {
    const SpectralData& S = well11();
    const MultiIndexSet sets = enumerate_channels(S.omega, S.m, 4);
    REQUIRE(sets.Mhat.size() == 1);
    REQUIRE(sets.Mhat[0] == MultiIndex{3});
    const int r = 3;
    const FormalHamiltonian Hp =
        expand_interaction(S, Nonlinearity::quartic(), r + 4);
    const NormalFormResult nf = birkhoff_normalize(S, Hp, r);
    const FgrData fgr = fgr_matrix(S, nf, sets);

    CHECK(fgr.coupling_alive);
    CHECK(fgr.rates_positive);
    CHECK(fgr.fibers_invertible);
    REQUIRE(fgr.hat_fibers.size() == 1);
    const FiberMatrix& fib = fgr.hat_fibers[0];
    CHECK(fib.lambda == doctest::Approx(3 * S.omega[0]).epsilon(1e-12));
    CHECK(fib.agreement < 0.02);
    CHECK(fib.hermiticity < 1e-9);
    CHECK(fib.min_eig >= -1e-8 * fib.trace);
    CHECK(fib.trace > 0);

    SUBCASE("diagonal interaction coefficient carries the same rate") {
      const CoeffTensor ct = model_coefficients(S, nf, sets);
      bool seen = false;
      for (const CoeffEntry& e : ct.entries) {
        if (e.mu == MultiIndex{3} && e.nu == MultiIndex{3}) {
          seen = true;
          const double rate = e.c.imag();
          CHECK(std::abs(rate - fib.gamma_lap(0, 0).real()) <
                1e-6 * std::abs(rate));
        }
      }
      CHECK(seen);
    }
  }
}

TEST_CASE("rate is an exact quadratic in the cubic Taylor knob") {
  const SpectralData& S = well125();
  const Eigen::VectorXd betas = Eigen::VectorXd::LinSpaced(9, -2.0, 2.0);
  const GenericityScan scan =
      genericity_scan(S, Nonlinearity::quartic(), MultiIndex{2}, betas, 1);

  CHECK(scan.taylor_order == 3);
  const double gmax = scan.gamma_values.cwiseAbs().maxCoeff();
  CHECK(gmax > 0);
  CHECK(scan.fit_residual < 1e-6 * gmax);
  CHECK(scan.quad[0] > 0);
  // a pure quadratic through the origin: the dead quartic contributes nothing
  CHECK(std::abs(scan.quad[1]) < 1e-8 * scan.quad[0]);
  CHECK(std::abs(scan.quad[2]) < 1e-8 * scan.quad[0]);
  CHECK(scan.roots.size() <= 2);
  for (double rt : scan.roots) CHECK(std::abs(rt) < 1e-6);
}
