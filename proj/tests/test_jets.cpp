#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <complex>
#include <random>

#include <Eigen/Dense>

#include "doctest.h"
#include "nlkg/jets.hpp"
#include "nlkg/nonlinearity.hpp"
#include "nlkg/spectral.hpp"

using namespace nlkg;
using cplx = std::complex<double>;

namespace {

SpectralData make_well(double depth = 2.0, double m = 1.25) {
  Grid1D g = Grid1D::make(30, 514);
  return spectral_decompose(g, Potential::sech_well(g, depth, 1.0), m);
}

Eigen::VectorXcd random_cont(const SpectralData& S, std::mt19937_64& rng) {
  std::normal_distribution<double> N(0, 1);
  Eigen::VectorXd re(S.n()), im(S.n());
  for (int i = 0; i < S.n(); ++i) {
    const double damp = std::exp(-S.grid.x[i] * S.grid.x[i] / 50.0);
    re[i] = N(rng) * damp;
    im[i] = N(rng) * damp;
  }
  Eigen::VectorXcd g = re + cplx(0, 1) * im;
  return S.to_cont(S.project_continuum(g));
}

// random real jet: conjugate-paired scalar (and optionally field) monomials
FormalHamiltonian random_real_jet(const SpectralData& S, std::mt19937_64& rng,
                                  int deg_max, bool with_fields) {
  std::uniform_int_distribution<int> D(0, deg_max);
  std::uniform_real_distribution<double> U(-1, 1);
  FormalHamiltonian H;
  H.n_modes = S.n_bound;
  for (int t = 0; t < 4; ++t) {
    MultiIndex mu(S.n_bound, 0), nu(S.n_bound, 0);
    mu[0] = D(rng);
    nu[0] = D(rng);
    if (order(mu) + order(nu) == 0) mu[0] = 1;
    const cplx c(U(rng), U(rng));
    H.add_scalar(mu, nu, c);
    H.add_scalar(nu, mu, std::conj(c));
  }
  if (with_fields) {
    for (int t = 0; t < 2; ++t) {
      MultiIndex mu(S.n_bound, 0), nu(S.n_bound, 0);
      mu[0] = D(rng);
      const Eigen::VectorXcd phi = random_cont(S, rng);
      H.add_field(Kind::FieldF, mu, nu, phi);
      H.add_field(Kind::FieldFbar, nu, mu, phi.conjugate());
    }
  }
  return H;
}

}  // namespace

TEST_CASE("complex coordinates: values, inverse, quadratic energy") {
  const SpectralData S = make_well();
  const double w = S.omega[0];

  SUBCASE("bound-state displacement") {
    const Eigen::VectorXd u = S.bound_state(0);
    const Eigen::VectorXd v = Eigen::VectorXd::Zero(S.n());
    const ModeCoords c = to_complex_coords(S, u, v);
    CHECK(std::abs(c.xi[0] - std::sqrt(w / 2)) < 1e-9);
    CHECK(c.f.norm() < 1e-8);
  }

  SUBCASE("roundtrip and energy identity on random data") {
    std::mt19937_64 rng(7);
    std::normal_distribution<double> N(0, 1);
    Eigen::VectorXd u(S.n()), v(S.n());
    for (int i = 0; i < S.n(); ++i) {
      const double damp = std::exp(-S.grid.x[i] * S.grid.x[i] / 32.0);
      u[i] = N(rng) * damp;
      v[i] = N(rng) * damp;
    }
    const ModeCoords c = to_complex_coords(S, u, v);
    const auto [ub, vb] = from_complex_coords(S, c);
    CHECK((ub - u).norm() < 1e-9 * u.norm());
    CHECK((vb - v).norm() < 1e-9 * v.norm());

    const Eigen::MatrixXd A = assemble_operator(S.grid, S.pot, S.m);
    const double direct =
        0.5 * S.grid.h * (v.squaredNorm() + u.dot(A * u));
    const cplx viajet = evaluate_jet(S, build_quadratic_part(S), c);
    CHECK(std::abs(viajet.imag()) < 1e-9 * std::abs(direct));
    CHECK(std::abs(viajet.real() - direct) < 1e-6 * std::abs(direct));
  }
}

TEST_CASE("interaction jet coefficients against hand quadrature") {
  const SpectralData S = make_well();
  const double w = S.omega[0];
  const FormalHamiltonian H = expand_interaction(S, Nonlinearity::quartic(), 6);

  const Eigen::VectorXd phi = S.bound_state(0);
  const double I4 = S.grid.h * phi.array().pow(4).sum();

  const cplx c40 = H.scalar.at({Kind::Scalar, {4}, {0}});
  CHECK(std::abs(c40 - I4 / (4 * w * w)) < 1e-10 * std::abs(c40));
  const cplx c22 = H.scalar.at({Kind::Scalar, {2}, {2}});
  CHECK(std::abs(c22 - 6.0 * I4 / (4 * w * w)) < 1e-10 * std::abs(c22));

  // interaction vanishes to fourth order: no lower-degree monomials
  CHECK(H.min_degree() == 4);
  CHECK(H.reality_defect() < 1e-12);
}

TEST_CASE("jet evaluation against direct quadrature of the interaction") {
  const SpectralData S = make_well();
  const FormalHamiltonian H = expand_interaction(S, Nonlinearity::quartic(), 6);
  std::mt19937_64 rng(11);

  ModeCoords c;
  c.xi.resize(1);
  c.xi[0] = cplx(0.1, -0.05);
  c.f = Eigen::VectorXcd::Zero(S.n_cont());

  // no radiation: the quartic jet is exact
  const double exact0 = interaction_energy(S, Nonlinearity::quartic(), c);
  CHECK(std::abs(evaluate_jet(S, H, c).real() - exact0) <
        1e-10 * std::abs(exact0));

  // with radiation the jet is linear in f; the defect is quadratic
  const Eigen::VectorXcd dir = random_cont(S, rng);
  auto defect = [&](double eps) {
    ModeCoords cc = c;
    cc.f = eps * dir;
    return std::abs(evaluate_jet(S, H, cc).real() -
                    interaction_energy(S, Nonlinearity::quartic(), cc));
  };
  const double d1 = defect(1e-2), d2 = defect(5e-3);
  CHECK(d1 / d2 == doctest::Approx(4.0).epsilon(0.2));
}

TEST_CASE("bracket engine: antisymmetry, Jacobi, reality") {
  const SpectralData S = make_well();
  std::mt19937_64 rng(3);
  const int D = 20;  // above every degree a double bracket can reach

  for (int trial = 0; trial < 5; ++trial) {
    // one field-bearing jet at most: with two, the f-quadratic pieces shed
    // by the bracket would re-enter the double bracket and spoil Jacobi
    const FormalHamiltonian A = random_real_jet(S, rng, 3, true);
    const FormalHamiltonian B = random_real_jet(S, rng, 3, false);
    const FormalHamiltonian C = random_real_jet(S, rng, 3, false);

    // {A,B} + {B,A} = 0
    FormalHamiltonian anti =
        jet_add(poisson_bracket(S, A, B, D), poisson_bracket(S, B, A, D));
    CHECK(anti.norm1() < 1e-10);

    // cyclic Jacobi sum vanishes
    FormalHamiltonian J = jet_add(
        jet_add(poisson_bracket(S, A, poisson_bracket(S, B, C, D), D),
                poisson_bracket(S, B, poisson_bracket(S, C, A, D), D)),
        poisson_bracket(S, C, poisson_bracket(S, A, B, D), D));
    CHECK(J.norm1() < 1e-10);

    // bracket of reals is real, also with fields on both sides
    const FormalHamiltonian A2 = random_real_jet(S, rng, 3, true);
    CHECK(poisson_bracket(S, A, A2, D).reality_defect() < 1e-10);
    FormalHamiltonian anti2 =
        jet_add(poisson_bracket(S, A, A2, D), poisson_bracket(S, A2, A, D));
    CHECK(anti2.norm1() < 1e-10);
  }

  // {|xi|^2, |xi|^2} = 0
  FormalHamiltonian n1;
  n1.n_modes = 1;
  n1.add_scalar({1}, {1}, 1.0);
  CHECK(poisson_bracket(S, n1, n1, 6).norm1() < 1e-14);
}
