#pragma once
#include "nlkg/jets.hpp"
#include "nlkg/tolerances.hpp"

namespace nlkg {

// Action of {H_L, .} on a jet:
//   scalar   xi^mu xibar^nu            ->  -i w.(mu - nu) * (same monomial)
//   <Phi,f>    coefficient Phi         ->  -i (B - w.(nu - mu)) Phi
//   <Psi,fbar> coefficient Psi         ->  +i (B - w.(mu - nu)) Psi
// Kernel monomials produce nothing.
FormalHamiltonian homological_op(const SpectralData& S,
                                 const FormalHamiltonian& H,
                                 const Tolerances& tol = {});

// Splits K into a generator chi and a normal-form rest Z with
// {H_L, chi} + Z = K.  Scalar monomials with small w.(mu - nu) and field
// monomials on the far side of the continuum edge land in Z; everything
// else is inverted (small denominators for scalars, resolvents for field
// coefficients).  A field monomial whose frequency offset falls inside the
// edge band [m - tol_edge, m] cannot be resolved: HypothesisError.
struct HomologicalSplit {
  FormalHamiltonian chi, Z;
};
HomologicalSplit solve_homological(const SpectralData& S,
                                   const FormalHamiltonian& K,
                                   const Tolerances& tol = {});

// exp(ad_chi) H truncated at degree D: H + {chi,H} + {chi,{chi,H}}/2 + ...
// Requires min degree of chi >= 3 so the series terminates at D.
FormalHamiltonian lie_transform(const SpectralData& S,
                                const FormalHamiltonian& H,
                                const FormalHamiltonian& chi, int D);

struct NormalFormResult {
  FormalHamiltonian H;   // transformed jet, including the quadratic part
  FormalHamiltonian Z0;  // resonant scalar monomials, degree <= r+3
  FormalHamiltonian Z1;  // radiative field monomials, degree <= r+3
  std::vector<FormalHamiltonian> generators;   // one per handled degree
  std::vector<double> step_residuals;          // homological exactness
  int order = 0;
  double dropped = 0;

  // Phi_{0 nu}: coefficient of xibar^nu <.,f> in Z1, keyed by nu
  std::map<MultiIndex, Eigen::VectorXcd> radiating_couplings() const;
};

// Degree-by-degree normalization of H_L + Hp through degree r+3. The jet
// is truncated at degree D (default r+4).
NormalFormResult birkhoff_normalize(const SpectralData& S,
                                    const FormalHamiltonian& Hp, int r,
                                    int D = -1, const Tolerances& tol = {});

}  // namespace nlkg
