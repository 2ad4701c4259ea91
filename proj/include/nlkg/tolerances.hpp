#pragma once

namespace nlkg {

// Central numeric tolerances. Each field can be overridden from the run
// configuration; the defaults here are the ones the test suite pins.
struct Tolerances {
  double res = 1e-9;          // small-divisor cutoff for resonance tests
  double edge_factor = 10.0;  // spectral-edge band = edge_factor * h^2
  double homological = 1e-10; // exactness of the homological solve
  double bracket = 1e-10;     // bracket identities (Jacobi, antisymmetry)
  double pc_project = 1e-8;   // admissible leakage outside the continuum range
  double density_agree = 0.05;   // smoothed vs extrapolated density estimates
  double gamma_agree = 0.02;     // two-method damping-rate agreement
  double ls_residual = 1e-6;     // scattering integral-equation residual
  double hermiticity = 1e-9;     // damping matrix Hermiticity
  double psd_floor = 1e-8;       // min eigenvalue >= -psd_floor * trace
  double rk_tol = 1e-10;         // adaptive integrator local tolerance
};

}  // namespace nlkg
