#pragma once
#include <complex>
#include <map>
#include <vector>

#include <Eigen/Core>

#include "nlkg/multi_index.hpp"
#include "nlkg/nonlinearity.hpp"
#include "nlkg/spectral.hpp"

namespace nlkg {

// Polynomial jet in the mode variables (xi, xibar) and the radiation field f.
// Four monomial shapes are representable:
//   Scalar   c * xi^mu xibar^nu
//   FieldF   xi^mu xibar^nu <Phi, f>      (Phi stored in the continuum basis)
//   FieldFbar xi^mu xibar^nu <Psi, fbar>
//   BQuad    c * <fbar, B f>              (the quadratic radiation energy)
// Terms quadratic and higher in f are outside the algebra; operations that
// would create them record their magnitude in `dropped` instead.
enum class Kind : int { Scalar = 0, FieldF = 1, FieldFbar = 2, BQuad = 3 };

struct MonoKey {
  Kind kind;
  MultiIndex mu, nu;
  bool operator<(const MonoKey& o) const {
    if (kind != o.kind) return kind < o.kind;
    if (mu != o.mu) return mu < o.mu;
    return nu < o.nu;
  }
};

inline int degree_of(const MonoKey& k) {
  int base = order(k.mu) + order(k.nu);
  if (k.kind == Kind::FieldF || k.kind == Kind::FieldFbar) return base + 1;
  if (k.kind == Kind::BQuad) return 2;
  return base;
}

struct FormalHamiltonian {
  int n_modes = 0;
  int max_degree = 64;
  std::map<MonoKey, std::complex<double>> scalar;   // Scalar and BQuad keys
  std::map<MonoKey, Eigen::VectorXcd> field;        // FieldF / FieldFbar keys
  double dropped = 0;  // magnitude shed by truncation in degree or f-order

  void add_scalar(const MultiIndex& mu, const MultiIndex& nu,
                  std::complex<double> c);
  void add_bquad(std::complex<double> c);
  void add_field(Kind k, const MultiIndex& mu, const MultiIndex& nu,
                 const Eigen::VectorXcd& phi);

  bool empty() const { return scalar.empty() && field.empty(); }
  int min_degree() const;
  double norm1() const;  // sum of |c| and coefficient-function norms
  void prune(double eps = 0.0);
  void scale(std::complex<double> a);

  // worst violation of c_{mu nu} = conj(c_{nu mu}) and
  // Psi_{mu nu} = conj(Phi_{nu mu})
  double reality_defect() const;
};

FormalHamiltonian jet_add(const FormalHamiltonian& A,
                          const FormalHamiltonian& B);

// H_L = sum_j w_j |xi_j|^2 + <fbar, B f>
FormalHamiltonian build_quadratic_part(const SpectralData& S);

// Taylor jet of the interaction Hp(xi, f) = \int beta(w + U) dx where
// w = sum_j (xi_j + xibar_j) phi_j / sqrt(2 w_j) and
// U = B^{-1/2}(f + fbar)/sqrt(2), truncated at total degree D (scalar part)
// and D in total degree for the f-linear part; f^2 and higher go to
// `dropped` as a magnitude estimate.
FormalHamiltonian expand_interaction(const SpectralData& S,
                                     const Nonlinearity& nl, int D);

// Canonical bracket on jets. Output truncated at degree D; pieces quadratic
// in f are added to `dropped`.
FormalHamiltonian poisson_bracket(const SpectralData& S,
                                  const FormalHamiltonian& A,
                                  const FormalHamiltonian& B, int D);

// Complex mode/field coordinates of a real PDE state (u, v):
//   xi_j = (q_j sqrt(w_j) + i p_j / sqrt(w_j)) / sqrt(2)
//   f    = (B^{1/2} Pc u + i B^{-1/2} Pc v) / sqrt(2)   (continuum basis)
struct ModeCoords {
  Eigen::VectorXcd xi;
  Eigen::VectorXcd f;
};
ModeCoords to_complex_coords(const SpectralData& S, const Eigen::VectorXd& u,
                             const Eigen::VectorXd& v);
std::pair<Eigen::VectorXd, Eigen::VectorXd> from_complex_coords(
    const SpectralData& S, const ModeCoords& c);

// evaluate a jet at a point (for cross-checks against direct quadrature)
std::complex<double> evaluate_jet(const SpectralData& S,
                                  const FormalHamiltonian& H,
                                  const ModeCoords& c);

// direct quadrature of the interaction energy at a point; the independent
// oracle for expand_interaction
double interaction_energy(const SpectralData& S, const Nonlinearity& nl,
                          const ModeCoords& c);

}  // namespace nlkg
