#pragma once
#include <map>

namespace nlkg {

// Polynomial interaction potential held as derivatives at zero:
//   beta(u) = sum_j taylor[j] * u^j / j!
// Admissible models vanish to fourth order (h6_ok). A cubic derivative can
// still be stored: the coupling scans use it as a formal knob when probing
// how damping rates depend on the lowest interaction coefficient. PDE-facing
// configurations are validated against h6_ok().
struct Nonlinearity {
  std::map<int, double> taylor;  // j -> beta^{(j)}(0), j >= 3

  static Nonlinearity zero() { return {}; }
  // beta(u) = scale * u^4, i.e. beta^{(4)}(0) = 24 * scale
  static Nonlinearity quartic(double scale = 1.0);
  static Nonlinearity from_taylor(const std::map<int, double>& t);

  bool h6_ok() const;
  bool trivial() const;  // no nonzero derivative stored
  int max_order() const;
  double coeff(int j) const;  // beta^{(j)}(0), zero when absent

  double beta(double u) const;
  double beta_prime(double u) const;

  // compares stored derivatives against central finite differences of
  // beta() at zero; returns the worst relative mismatch
  double derivative_consistency() const;
};

}  // namespace nlkg
