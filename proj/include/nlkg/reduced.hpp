#pragma once
#include <complex>
#include <vector>

#include <Eigen/Core>

#include "nlkg/multi_index.hpp"
#include "nlkg/normalform.hpp"
#include "nlkg/scattering.hpp"

namespace nlkg {

// Effective ODE for the discrete-mode amplitudes after the radiation field
// has been eliminated:
//   eta_k' = -i w_k eta_k - i dZ0/d(conj eta_k)
//            + i sum_{(mu,nu)} nu_k c_{mu,nu} eta^mu conj(eta)^{nu - e_k}
struct ReducedModel {
  Eigen::VectorXd omega;

  struct Z0Term {
    MultiIndex a, b;  // eta^a conj(eta)^b, a != b, w.a = w.b
    std::complex<double> c;
  };
  std::vector<Z0Term> z0;

  struct Coupling {
    MultiIndex mu, nu;
    std::complex<double> c;
  };
  std::vector<Coupling> terms;

  // one block per radiation energy: D = Im of the coefficient matrix
  struct Fiber {
    double lambda = 0;
    std::vector<MultiIndex> members;
    Eigen::MatrixXcd D;
  };
  std::vector<Fiber> fibers;

  int n() const { return static_cast<int>(omega.size()); }
  Eigen::VectorXcd rhs(const Eigen::VectorXcd& eta) const;
  double energy(const Eigen::VectorXcd& eta) const;  // sum_k w_k |eta_k|^2
  // exact energy drain of the model: 2 sum_lam lam <F, D_lam F>,
  // F_mu = eta^mu over the fiber members
  double drain(const Eigen::VectorXcd& eta) const;
};

ReducedModel build_reduced(const SpectralData& S, const NormalFormResult& nf,
                           const CoeffTensor& tensor);

// one oscillator feeding one channel: eta' = -i w eta + i p c eta^p conj(eta)^{p-1}
ReducedModel single_mode_model(double omega, int p, std::complex<double> c);

struct OdeResult {
  Eigen::VectorXd t;
  Eigen::MatrixXcd eta;  // n x t.size()
  long steps = 0, rejected = 0;
};

// adaptive Dormand-Prince 5(4)
OdeResult integrate_reduced(const ReducedModel& model,
                            const Eigen::VectorXcd& eta0, double T,
                            double sample_dt, double tol = 1e-10);

// |dE/dt + drain| at time t, with dE/dt from Richardson differencing of the
// integrated flow; returns {defect, |drain|}
std::pair<double, double> dissipation_check(const ReducedModel& model,
                                            const Eigen::VectorXcd& eta0,
                                            double t, double delta,
                                            double tol = 1e-12);

}  // namespace nlkg
