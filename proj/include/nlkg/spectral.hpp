#pragma once
#include <complex>

#include <Eigen/Core>

#include "nlkg/grid.hpp"
#include "nlkg/tolerances.hpp"

namespace nlkg {

// Full dense eigendecomposition of the Schroedinger operator A = -d2/dx2 + V
// (fourth-order stencil, Dirichlet walls with odd reflection) plus the shift
// by m^2.  Everything downstream -- projections, fractional powers of
// B = sqrt(A + m^2) on the continuum range, resolvents, the linear flow of
// the wave equation -- is functional calculus over this one decomposition.
//
// Immutable after construction; safe to share across threads read-only.
struct SpectralData {
  Grid1D grid;
  Potential pot;
  double m = 0;
  double tol_edge = 0;  // classification band around the spectral edge

  Eigen::VectorXd evals;  // eigenvalues of A, ascending
  Eigen::MatrixXd evecs;  // columns; orthonormal wrt the h-weighted product

  int n_bound = 0;            // eigenvalues below -tol_edge
  Eigen::VectorXd omega;      // sqrt(lambda_j + m^2), one per bound state
  Eigen::VectorXd mu_cont;    // sqrt(a_k + m^2) over the discretized continuum

  int n() const { return grid.n; }
  int n_cont() const { return n() - n_bound; }
  double edge() const { return m; }  // continuous spectrum of B starts here

  Eigen::VectorXd bound_state(int j) const { return evecs.col(j); }

  // coefficient transforms (h-weighted)
  Eigen::VectorXd to_modal(const Eigen::VectorXd& g) const;
  Eigen::VectorXcd to_modal(const Eigen::VectorXcd& g) const;
  Eigen::VectorXd from_modal(const Eigen::VectorXd& c) const;
  Eigen::VectorXcd from_modal(const Eigen::VectorXcd& c) const;

  // continuum-only coefficients (length n_cont)
  Eigen::VectorXcd to_cont(const Eigen::VectorXcd& g) const;
  Eigen::VectorXcd from_cont(const Eigen::VectorXcd& c) const;

  Eigen::VectorXcd project_continuum(const Eigen::VectorXcd& g) const;

  // relative norm of the component outside the continuum range
  double pc_defect(const Eigen::VectorXcd& g) const;

  // local spacing of mu_cont near energy lam (B-spectrum units)
  double level_spacing(double lam) const;
};

// Dense symmetric matrix of -d2/dx2 + V + m^2 on interior nodes.
// Throws ResolutionError when the grid cannot resolve the potential
// (h * sqrt(max|V|) > 0.5) and ConfigError for m <= 0.
Eigen::MatrixXd assemble_operator(const Grid1D& g, const Potential& V,
                                  double m);

// Eigendecomposition + classification. Throws HypothesisError when
// A + m^2 is not positive definite (mass too small for the well) or when
// an eigenvalue sits inside the edge band (zero-energy threshold case).
SpectralData spectral_decompose(const Grid1D& g, const Potential& V, double m,
                                const Tolerances& tol = {});

// B^a g restricted to the continuum range. Requires pc_defect(g) small
// (except a = 0, which is the projection itself); throws
// std::invalid_argument otherwise.
Eigen::VectorXcd apply_B_power(const SpectralData& S, double a,
                               const Eigen::VectorXcd& g,
                               const Tolerances& tol = {});

// (B - z)^{-1} g on the continuum range. Real z inside the discretized
// continuum is rejected (ResolutionError): use the limiting-absorption
// evaluations in the scattering module instead.
Eigen::VectorXcd resolvent(const SpectralData& S, std::complex<double> z,
                           const Eigen::VectorXcd& g,
                           const Tolerances& tol = {});

}  // namespace nlkg
