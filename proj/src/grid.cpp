#include "nlkg/grid.hpp"

#include <cmath>

namespace nlkg {

Grid1D Grid1D::make(double L, int n_total) {
  if (L <= 0) throw ConfigError("grid: L must be positive");
  if (n_total < 16) throw ConfigError("grid: need at least 16 nodes");
  Grid1D g;
  g.L = L;
  g.n_total = n_total;
  g.n = n_total - 2;
  g.h = 2.0 * L / (n_total - 1);
  g.x.resize(g.n);
  for (int i = 0; i < g.n; ++i) g.x[i] = -L + (i + 1) * g.h;
  return g;
}

Potential Potential::zero(const Grid1D& g) {
  Potential p;
  p.tag = "zero";
  p.values = Eigen::VectorXd::Zero(g.n);
  return p;
}

Potential Potential::sech_well(const Grid1D& g, double depth, double a) {
  Potential p;
  p.tag = "sech_well";
  p.params.resize(2);
  p.params << depth, a;
  p.values.resize(g.n);
  for (int i = 0; i < g.n; ++i) {
    double c = std::cosh(a * g.x[i]);
    p.values[i] = -depth / (c * c);
  }
  p.validate(g);
  return p;
}

Potential Potential::gaussian_well(const Grid1D& g, double amp, double w) {
  Potential p;
  p.tag = "gaussian_well";
  p.params.resize(2);
  p.params << amp, w;
  p.values.resize(g.n);
  for (int i = 0; i < g.n; ++i)
    p.values[i] = -amp * std::exp(-g.x[i] * g.x[i] / (2 * w * w));
  p.validate(g);
  return p;
}

void Potential::validate(const Grid1D& g) const {
  double vmax = values.cwiseAbs().maxCoeff();
  if (!std::isfinite(vmax)) throw ConfigError("potential: non-finite values");
  if (vmax == 0) return;
  double wall = std::max(std::abs(values[0]), std::abs(values[g.n - 1]));
  if (wall > 1e-8 * vmax)
    throw ConfigError(
        "potential: does not decay at the walls (wall/max = " +
        std::to_string(wall / vmax) + "); enlarge L");
}

}  // namespace nlkg
