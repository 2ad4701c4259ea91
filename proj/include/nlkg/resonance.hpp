#pragma once
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "nlkg/multi_index.hpp"
#include "nlkg/tolerances.hpp"

namespace nlkg {

// Structural checks on the mode frequencies:
//  - floors N_j with N_j w_j < m < (N_j+1) w_j          (mass between harmonics)
//  - no signed integer combination mu.w = m up to a degree cap
//  - no nontrivial signed combination of *distinct* frequencies vanishes
// Violations come with an explicit witness vector.
struct ResonanceReport {
  Eigen::VectorXd omega;
  double m = 0;
  int degree_cap = 0;

  std::vector<int> floors;  // N_j
  int N = 0;                // max_j N_j

  bool combos_miss_mass = true;   // no mu.w = m
  bool combos_nonnull = true;     // no nontrivial mu.w = 0 (distinct w)
  std::vector<MultiIndex> mass_witnesses;
  std::vector<MultiIndex> null_witnesses;

  bool ok() const { return combos_miss_mass && combos_nonnull; }
};

// Throws HypothesisError when some m/w_j sits within tol.res of an integer.
// Requires 0 < w_j < m for every mode.
std::vector<int> compute_floors(const Eigen::VectorXd& omega, double m,
                                const Tolerances& tol = {});

// Enumerates signed integer vectors with |mu|_1 <= cap. When cap < 0, the
// default 2N+3 derived from compute_floors is used and recorded.
ResonanceReport check_resonances(const Eigen::VectorXd& omega, double m,
                                 int cap = -1, const Tolerances& tol = {});

// Exact certification of a witness on rationally rounded frequencies.
bool certify_mass_witness(const std::vector<Rational>& omega, Rational m,
                          const MultiIndex& mu);
bool certify_null_witness(const std::vector<Rational>& omega,
                          const MultiIndex& mu);

// Catalogue of interaction exponents driving the radiation channels:
//   M    = { mu >= 0 : mu.w > m, 2 <= |mu| <= cap }
//   Mhat = componentwise-minimal elements of M
// together with the distinct resonant energies mu.w and their fibers.
struct MultiIndexSet {
  Eigen::VectorXd omega;
  double m = 0;
  int degree_cap = 0;

  std::vector<MultiIndex> M;     // lexicographically sorted
  std::vector<MultiIndex> Mhat;  // subset of M, same order

  std::vector<double> energies;      // distinct mu.w over M, ascending
  std::vector<std::vector<int>> fibers;      // indices into M per energy
  std::vector<double> energies_hat;  // distinct mu.w over Mhat
  std::vector<std::vector<int>> fibers_hat;  // indices into Mhat per energy
};

MultiIndexSet enumerate_channels(const Eigen::VectorXd& omega, double m,
                                 int cap = -1, const Tolerances& tol = {});

}  // namespace nlkg
