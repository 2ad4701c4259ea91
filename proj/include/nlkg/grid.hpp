#pragma once
#include <string>

#include <Eigen/Core>

#include "nlkg/errors.hpp"

namespace nlkg {

// Uniform symmetric grid on [-L, L] with homogeneous Dirichlet walls.
// n_total counts all nodes including the two walls; degrees of freedom are
// the n = n_total - 2 interior values (wall values are identically zero).
struct Grid1D {
  double L = 0;
  int n_total = 0;
  int n = 0;
  double h = 0;
  Eigen::VectorXd x;  // interior nodes, ascending

  static Grid1D make(double L, int n_total);
};

// Quadrature of interior samples; exact trapezoid since walls carry zeros.
inline double integrate(const Grid1D& g, const Eigen::VectorXd& f) {
  return g.h * f.sum();
}
inline std::complex<double> integrate(const Grid1D& g,
                                      const Eigen::VectorXcd& f) {
  return g.h * f.sum();
}
// Bilinear pairing <f,g> = \int f g dx (no conjugation).
inline double pair_bilin(const Grid1D& g, const Eigen::VectorXd& a,
                         const Eigen::VectorXd& b) {
  return g.h * a.dot(b);
}
inline std::complex<double> pair_bilin(const Grid1D& g,
                                       const Eigen::VectorXcd& a,
                                       const Eigen::VectorXcd& b) {
  return g.h * (a.array() * b.array()).sum();
}

struct Potential {
  std::string tag;       // preset name, for cache keys and reports
  Eigen::VectorXd params;
  Eigen::VectorXd values;  // sampled on interior nodes

  // presets
  static Potential zero(const Grid1D& g);
  // V(x) = -depth * sech(a x)^2
  static Potential sech_well(const Grid1D& g, double depth, double a = 1.0);
  // V(x) = -amp * exp(-x^2 / (2 w^2))
  static Potential gaussian_well(const Grid1D& g, double amp, double w);

  // Validates decay at the walls relative to the interior maximum.
  void validate(const Grid1D& g) const;
};

}  // namespace nlkg
