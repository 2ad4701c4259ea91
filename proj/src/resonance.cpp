#include "nlkg/resonance.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "nlkg/errors.hpp"

namespace nlkg {

std::vector<int> compute_floors(const Eigen::VectorXd& omega, double m,
                                const Tolerances& tol) {
  if (omega.size() == 0)
    throw ConfigError("resonance: no discrete modes");
  std::vector<int> floors(omega.size());
  for (int j = 0; j < omega.size(); ++j) {
    double w = omega[j];
    if (!(w > 0 && w < m))
      throw ConfigError("resonance: need 0 < omega_j < m");
    double r = m / w;
    if (std::abs(r - std::round(r)) < tol.res)
      throw HypothesisError("resonance: m is an integer multiple of omega_" +
                            std::to_string(j + 1));
    floors[j] = (int)std::floor(r);
  }
  return floors;
}

// visit all signed integer vectors with |mu|_1 <= cap (excluding mu = 0)
static void visit_signed(int n, int cap,
                         const std::function<void(const MultiIndex&)>& f) {
  MultiIndex mu(n, 0);
  std::function<void(int, int)> rec = [&](int j, int budget) {
    if (j == n) {
      if (!is_zero(mu)) f(mu);
      return;
    }
    for (int e = -budget; e <= budget; ++e) {
      mu[j] = e;
      rec(j + 1, budget - std::abs(e));
    }
    mu[j] = 0;
  };
  rec(0, cap);
}

ResonanceReport check_resonances(const Eigen::VectorXd& omega, double m,
                                 int cap, const Tolerances& tol) {
  if (omega.size() > 6)
    throw ConfigError("resonance: enumeration limited to 6 modes");
  ResonanceReport rep;
  rep.omega = omega;
  rep.m = m;
  rep.floors = compute_floors(omega, m, tol);
  rep.N = *std::max_element(rep.floors.begin(), rep.floors.end());
  rep.degree_cap = cap >= 0 ? cap : 2 * rep.N + 3;

  // cluster equal frequencies for the null-combination test
  std::vector<double> distinct;
  for (int j = 0; j < omega.size(); ++j) {
    bool found = false;
    for (double w : distinct)
      if (std::abs(w - omega[j]) < tol.res) { found = true; break; }
    if (!found) distinct.push_back(omega[j]);
  }

  const int n = (int)omega.size();
  visit_signed(n, rep.degree_cap, [&](const MultiIndex& mu) {
    double s = dot(mu, omega);
    double scale = 1.0 + order(mu);
    if (std::abs(s - m) < tol.res * scale) {
      rep.combos_miss_mass = false;
      rep.mass_witnesses.push_back(mu);
    }
  });

  Eigen::VectorXd dw(distinct.size());
  for (size_t i = 0; i < distinct.size(); ++i) dw[i] = distinct[i];
  visit_signed((int)distinct.size(), rep.degree_cap,
               [&](const MultiIndex& mu) {
                 double s = dot(mu, dw);
                 if (std::abs(s) < tol.res * (1.0 + order(mu))) {
                   rep.combos_nonnull = false;
                   rep.null_witnesses.push_back(mu);
                 }
               });
  return rep;
}

bool certify_mass_witness(const std::vector<Rational>& omega, Rational m,
                          const MultiIndex& mu) {
  Rational s(0, 1);
  for (size_t j = 0; j < omega.size(); ++j) s = s + omega[j] * mu[j];
  return (s - m).is_zero();
}

bool certify_null_witness(const std::vector<Rational>& omega,
                          const MultiIndex& mu) {
  Rational s(0, 1);
  for (size_t j = 0; j < omega.size(); ++j) s = s + omega[j] * mu[j];
  return s.is_zero();
}

MultiIndexSet enumerate_channels(const Eigen::VectorXd& omega, double m,
                                 int cap, const Tolerances& tol) {
  MultiIndexSet out;
  out.omega = omega;
  out.m = m;
  auto floors = compute_floors(omega, m, tol);
  int N = *std::max_element(floors.begin(), floors.end());
  out.degree_cap = cap >= 0 ? cap : 2 * N + 3;

  const int n = (int)omega.size();
  MultiIndex mu(n, 0);
  std::function<void(int, int)> rec = [&](int j, int budget) {
    if (j == n) {
      if (order(mu) >= 2 && dot(mu, omega) > m) out.M.push_back(mu);
      return;
    }
    for (int e = 0; e <= budget; ++e) {
      mu[j] = e;
      rec(j + 1, budget - e);
    }
    mu[j] = 0;
  };
  rec(0, out.degree_cap);
  std::sort(out.M.begin(), out.M.end());

  for (const auto& a : out.M) {
    bool minimal = true;
    for (const auto& b : out.M)
      if (b != a && leq(b, a)) { minimal = false; break; }
    if (minimal) out.Mhat.push_back(a);
  }

  auto fiber = [&](const std::vector<MultiIndex>& set,
                   std::vector<double>& energies,
                   std::vector<std::vector<int>>& fibers) {
    for (int i = 0; i < (int)set.size(); ++i) {
      double lam = dot(set[i], omega);
      int slot = -1;
      for (int s = 0; s < (int)energies.size(); ++s)
        if (std::abs(energies[s] - lam) < tol.res * (1 + out.degree_cap)) {
          slot = s;
          break;
        }
      if (slot < 0) {
        energies.push_back(lam);
        fibers.push_back({});
        slot = (int)energies.size() - 1;
      }
      fibers[slot].push_back(i);
    }
    // ascending energies
    std::vector<int> idx(energies.size());
    for (size_t s = 0; s < idx.size(); ++s) idx[s] = (int)s;
    std::sort(idx.begin(), idx.end(),
              [&](int a, int b) { return energies[a] < energies[b]; });
    std::vector<double> e2;
    std::vector<std::vector<int>> f2;
    for (int s : idx) {
      e2.push_back(energies[s]);
      f2.push_back(fibers[s]);
    }
    energies = e2;
    fibers = f2;
  };
  fiber(out.M, out.energies, out.fibers);
  fiber(out.Mhat, out.energies_hat, out.fibers_hat);
  return out;
}

}  // namespace nlkg
