#include "nlkg/nonlinearity.hpp"

#include <cmath>
#include <vector>

#include "nlkg/errors.hpp"

namespace nlkg {

Nonlinearity Nonlinearity::quartic(double scale) {
  Nonlinearity n;
  n.taylor[4] = 24.0 * scale;
  return n;
}

Nonlinearity Nonlinearity::from_taylor(const std::map<int, double>& t) {
  Nonlinearity n;
  for (auto& [j, v] : t) {
    if (j < 3) throw ConfigError("nonlinearity: derivatives start at order 3");
    if (v != 0.0) n.taylor[j] = v;
  }
  return n;
}

bool Nonlinearity::h6_ok() const {
  for (auto& [j, v] : taylor)
    if (j < 4 && v != 0.0) return false;
  return true;
}

bool Nonlinearity::trivial() const { return max_order() == 0; }

int Nonlinearity::max_order() const {
  int jm = 0;
  for (auto& [j, v] : taylor)
    if (v != 0.0) jm = std::max(jm, j);
  return jm;
}

double Nonlinearity::coeff(int j) const {
  auto it = taylor.find(j);
  return it == taylor.end() ? 0.0 : it->second;
}

double Nonlinearity::beta(double u) const {
  // Horner over monomial coefficients c_j = beta_j / j!
  int jm = max_order();
  if (jm == 0) return 0.0;
  std::vector<double> c(jm + 1, 0.0);
  for (auto& [j, v] : taylor) {
    if (v == 0.0) continue;
    double fact = 1;
    for (int k = 2; k <= j; ++k) fact *= k;
    c[j] = v / fact;
  }
  double r = 0;
  for (int j = jm; j >= 0; --j) r = r * u + c[j];
  return r;
}

double Nonlinearity::beta_prime(double u) const {
  int jm = max_order();
  if (jm == 0) return 0.0;
  std::vector<double> c(jm, 0.0);
  for (auto& [j, v] : taylor) {
    if (v == 0.0) continue;
    double fact = 1;
    for (int k = 2; k <= j - 1; ++k) fact *= k;
    c[j - 1] = v / fact;
  }
  double r = 0;
  for (int j = jm - 1; j >= 0; --j) r = r * u + c[j];
  return r;
}

double Nonlinearity::derivative_consistency() const {
  int jm = max_order();
  double worst = 0;
  for (int j = 3; j <= jm; ++j) {
    double target = coeff(j);
    // central difference of order j at 0 with spacing d
    double d = std::pow(1e-10, 1.0 / j);
    double sum = 0;
    double binom = 1;
    for (int k = 0; k <= j; ++k) {
      double sign = (j - k) % 2 == 0 ? 1.0 : -1.0;
      sum += sign * binom * beta((k - j / 2.0) * d);
      binom = binom * (j - k) / (k + 1);
    }
    double est = sum / std::pow(d, j);
    double scale = std::max(std::abs(target), 1.0);
    worst = std::max(worst, std::abs(est - target) / scale);
  }
  return worst;
}

}  // namespace nlkg
