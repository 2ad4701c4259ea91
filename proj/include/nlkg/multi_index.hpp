#pragma once
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace nlkg {

// Exponent vector of a monomial in n mode variables. Entries may be
// negative in signed enumeration contexts (integer relations), but the
// catalogue types below only ever hold nonnegative entries.
using MultiIndex = std::vector<int>;

inline int order(const MultiIndex& mu) {
  int s = 0;
  for (int e : mu) s += std::abs(e);
  return s;
}

inline double dot(const MultiIndex& mu, const Eigen::VectorXd& w) {
  double s = 0;
  for (int j = 0; j < (int)mu.size(); ++j) s += mu[j] * w[j];
  return s;
}

inline MultiIndex add_indices(const MultiIndex& a, const MultiIndex& b) {
  MultiIndex r(a.size());
  for (size_t j = 0; j < a.size(); ++j) r[j] = a[j] + b[j];
  return r;
}

// componentwise a <= b
inline bool leq(const MultiIndex& a, const MultiIndex& b) {
  for (size_t j = 0; j < a.size(); ++j)
    if (a[j] > b[j]) return false;
  return true;
}

inline bool is_zero(const MultiIndex& a) {
  for (int e : a)
    if (e != 0) return false;
  return true;
}

inline double factorial(int e) {
  double f = 1;
  for (int k = 2; k <= e; ++k) f *= k;
  return f;
}

inline double factorial(const MultiIndex& mu) {
  double f = 1;
  for (int e : mu) f *= factorial(e);
  return f;
}

inline std::string to_string(const MultiIndex& mu) {
  std::string s = "(";
  for (size_t j = 0; j < mu.size(); ++j) {
    if (j) s += ",";
    s += std::to_string(mu[j]);
  }
  return s + ")";
}

// Exact arithmetic on small fractions, used to certify resonance witnesses
// when frequencies are given as rationals.
struct Rational {
  std::int64_t num = 0, den = 1;

  Rational() = default;
  Rational(std::int64_t n, std::int64_t d) : num(n), den(d) { reduce(); }

  void reduce() {
    if (den < 0) { num = -num; den = -den; }
    std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) { num /= g; den /= g; }
  }
  Rational operator+(const Rational& o) const {
    return Rational(num * o.den + o.num * den, den * o.den);
  }
  Rational operator-(const Rational& o) const {
    return Rational(num * o.den - o.num * den, den * o.den);
  }
  Rational operator*(std::int64_t k) const { return Rational(num * k, den); }
  bool is_zero() const { return num == 0; }
};

}  // namespace nlkg
