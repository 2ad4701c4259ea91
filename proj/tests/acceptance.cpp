// Acceptance gate: one self-contained check per numbered criterion, each
// printing a single [PASS]/[FAIL] line with the measured values. Tolerances
// are pinned here, not configurable. `--setup` warms the spectral caches the
// criteria share; ctest runs it first through a fixture.
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstring>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "nlkg/cache.hpp"
#include "nlkg/compare.hpp"
#include "nlkg/config.hpp"
#include "nlkg/errors.hpp"
#include "nlkg/jets.hpp"
#include "nlkg/nonlinearity.hpp"
#include "nlkg/normalform.hpp"
#include "nlkg/pde.hpp"
#include "nlkg/reduced.hpp"
#include "nlkg/resonance.hpp"
#include "nlkg/scattering.hpp"
#include "nlkg/spectral.hpp"

using namespace nlkg;
using cplx = std::complex<double>;

namespace {

double now_minus(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

// ---- shared decompositions ----

SpectralData well(double L, int n_total, double depth, double m) {
  Grid1D g = Grid1D::make(L, n_total);
  return cached_decompose(g, Potential::sech_well(g, depth, 1.0), m);
}

// three discrete modes: levels -9, -4, -1 under a depth-12 well
SpectralData three_mode_well() { return well(30, 770, 12.0, 3.2); }

// ---- random jets with smooth field coefficients ----

Eigen::VectorXcd random_cont(const SpectralData& S, std::mt19937_64& rng) {
  std::normal_distribution<double> N(0, 1);
  Eigen::VectorXcd g(S.n());
  for (int i = 0; i < S.n(); ++i) {
    const double damp = std::exp(-S.grid.x[i] * S.grid.x[i] / 40.0);
    g[i] = cplx(N(rng), N(rng)) * damp;
  }
  return S.to_cont(S.project_continuum(g));
}

MultiIndex random_index(int n_modes, int max_order, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> D(0, max_order);
  MultiIndex mu(n_modes, 0);
  int budget = D(rng);
  std::uniform_int_distribution<int> W(0, n_modes - 1);
  while (budget-- > 0) mu[W(rng)] += 1;
  return mu;
}

FormalHamiltonian random_real_jet(const SpectralData& S, std::mt19937_64& rng,
                                  int half_order, bool with_fields) {
  std::uniform_real_distribution<double> U(-1, 1);
  FormalHamiltonian H;
  H.n_modes = S.n_bound;
  for (int t = 0; t < 5; ++t) {
    MultiIndex mu = random_index(S.n_bound, half_order, rng);
    MultiIndex nu = random_index(S.n_bound, half_order, rng);
    if (order(mu) + order(nu) == 0) mu[0] = 1;
    const cplx c(U(rng), U(rng));
    H.add_scalar(mu, nu, c);
    H.add_scalar(nu, mu, std::conj(c));
  }
  if (with_fields) {
    for (int t = 0; t < 2; ++t) {
      MultiIndex mu = random_index(S.n_bound, half_order, rng);
      MultiIndex nu = random_index(S.n_bound, half_order, rng);
      const Eigen::VectorXcd phi = random_cont(S, rng);
      H.add_field(Kind::FieldF, mu, nu, phi);
      H.add_field(Kind::FieldFbar, nu, mu, phi.conjugate());
    }
  }
  return H;
}

// worst coefficient of A - B, monomial by monomial
double monomial_gap(const FormalHamiltonian& A, const FormalHamiltonian& B) {
  FormalHamiltonian d = B;
  d.scale(-1.0);
  d = jet_add(A, d);
  double worst = 0;
  for (auto& [k, c] : d.scalar) worst = std::max(worst, std::abs(c));
  for (auto& [k, p] : d.field)
    worst = std::max(worst, p.cwiseAbs().maxCoeff());
  return worst;
}

struct Outcome {
  bool ok = false;
  std::string detail;
};

// ---- criterion 1: homological solver, bulk random exactness ----

Outcome crit1() {
  const auto t0 = std::chrono::steady_clock::now();
  const SpectralData S = three_mode_well();
  std::mt19937_64 rng(101);
  double worst = 0, worst_reality = 0;
  int solved = 0, redrawn = 0;
  while (solved < 200) {
    const FormalHamiltonian K = random_real_jet(S, rng, 3, true);
    HomologicalSplit s;
    try {
      s = solve_homological(S, K);
    } catch (const HypothesisError&) {
      ++redrawn;  // frequency offset inside the edge band: not solvable
      continue;
    }
    FormalHamiltonian lhs = jet_add(homological_op(S, s.chi), s.Z);
    worst = std::max(worst, monomial_gap(lhs, K));
    worst_reality = std::max(
        {worst_reality, s.chi.reality_defect(), s.Z.reality_defect()});
    ++solved;
  }
  const double dt = now_minus(t0);
  Outcome o;
  o.ok = worst < 1e-10 && worst_reality < 1e-10 && dt < 10.0;
  o.detail = "200 jets over 3 modes, worst per-monomial residual " +
             fmt(worst) + ", reality defect " + fmt(worst_reality) + ", " +
             fmt(dt) + " s, " + std::to_string(redrawn) + " edge redraws";
  return o;
}

// ---- criterion 2: bracket engine vs homological operator, Jacobi ----

Outcome crit2() {
  const SpectralData S = three_mode_well();
  const FormalHamiltonian HL = build_quadratic_part(S);
  std::mt19937_64 rng(202);
  double worst_op = 0;
  for (int t = 0; t < 50; ++t) {
    const FormalHamiltonian K = random_real_jet(S, rng, 2, true);
    worst_op = std::max(
        worst_op, monomial_gap(homological_op(S, K),
                               poisson_bracket(S, HL, K, 12)));
  }
  double worst_jac = 0;
  for (int t = 0; t < 10; ++t) {
    // one field-bearing jet per triple keeps the bracket algebra closed
    const FormalHamiltonian A = random_real_jet(S, rng, 2, t < 5);
    const FormalHamiltonian B = random_real_jet(S, rng, 2, false);
    const FormalHamiltonian C = random_real_jet(S, rng, 2, false);
    const int D = 20;
    FormalHamiltonian J = jet_add(
        jet_add(poisson_bracket(S, A, poisson_bracket(S, B, C, D), D),
                poisson_bracket(S, B, poisson_bracket(S, C, A, D), D)),
        poisson_bracket(S, C, poisson_bracket(S, A, B, D), D));
    worst_jac = std::max(worst_jac, J.norm1());
  }
  Outcome o;
  o.ok = worst_op < 1e-10 && worst_jac < 1e-10;
  o.detail = "50 operator comparisons, worst gap " + fmt(worst_op) +
             "; Jacobi residual " + fmt(worst_jac);
  return o;
}

// ---- criterion 3: shape and linearity of the minimal radiative coupling ----

Outcome crit3() {
  // one deep mode, 3w > m: the minimal exponent under the quartic is (3)
  const SpectralData S = well(40, 1026, 2.0, 1.1);
  const int r = 3;

  auto coupling = [&](double scale) {
    const FormalHamiltonian Hp =
        expand_interaction(S, Nonlinearity::quartic(scale), r + 4);
    const NormalFormResult nf = birkhoff_normalize(S, Hp, r);
    return nf.radiating_couplings().at(MultiIndex{3});
  };

  const Eigen::VectorXcd Phi = coupling(1.0);
  const Eigen::VectorXd phi = S.bound_state(0);
  const Eigen::VectorXcd ref = S.to_cont(
      apply_B_power(S, -0.5, S.project_continuum(phi.array().pow(3).matrix()
                                                     .cast<cplx>())));

  // (a) pointwise proportionality
  const double refmax = ref.cwiseAbs().maxCoeff();
  const cplx a = (ref.conjugate().dot(Phi)) / ref.squaredNorm();
  double var = 0;
  for (int i = 0; i < ref.size(); ++i)
    if (std::abs(ref[i]) > 1e-3 * refmax)
      var = std::max(var, std::abs(Phi[i] - a * ref[i]) /
                              (std::abs(a) * refmax));

  // (b) constant linear in beta^(4)(0) = 24 * scale
  const cplx a_half = (ref.conjugate().dot(coupling(0.5))) / ref.squaredNorm();
  const cplx a_two = (ref.conjugate().dot(coupling(2.0))) / ref.squaredNorm();
  const double lin =
      std::max(std::abs(a_half - 0.5 * a), std::abs(a_two - 2.0 * a)) /
      std::abs(a);

  // (c) finite-difference oracle of the interaction jet at a point
  const FormalHamiltonian Hp =
      expand_interaction(S, Nonlinearity::quartic(), r + 4);
  std::mt19937_64 rng(303);
  const Eigen::VectorXcd dir = random_cont(S, rng);
  ModeCoords c;
  c.xi.resize(1);
  c.xi[0] = cplx(0.27, 0.1);
  c.f = Eigen::VectorXcd::Zero(S.n_cont());
  auto e_at = [&](double eps, int sgn, bool jet) {
    ModeCoords cc = c;
    cc.f = (sgn * eps) * dir;
    return jet ? evaluate_jet(S, Hp, cc).real()
               : interaction_energy(S, Nonlinearity::quartic(), cc);
  };
  auto deriv = [&](double eps, bool jet) {
    return (e_at(eps, 1, jet) - e_at(eps, -1, jet)) / (2 * eps);
  };
  const double jet_lin = deriv(1e-3, true);  // exact: the jet is f-linear
  const double fd =
      (4 * deriv(5e-3, false) - deriv(1e-2, false)) / 3.0;  // O(eps^4)
  const double fd_gap = std::abs(fd - jet_lin) / std::abs(jet_lin);

  Outcome o;
  o.ok = var < 1e-6 && lin < 1e-8 && fd_gap < 1e-6;
  o.detail = "ratio variance " + fmt(var) + ", linearity residual " +
             fmt(lin) + ", FD oracle gap " + fmt(fd_gap);
  return o;
}

// ---- criterion 4: free-field density oracle at the full grid ----

Outcome crit4() {
  const auto t0 = std::chrono::steady_clock::now();
  const Grid1D g = Grid1D::make(40, 2048);
  // deliberately uncached: the budget includes the eigendecomposition
  const SpectralData S = spectral_decompose(g, Potential::zero(g), 1.0);

  const Eigen::VectorXcd gv =
      (-(S.grid.x.array().square()) / 2).exp().cast<cplx>();
  const Eigen::VectorXcd c = S.to_cont(gv);
  const double lam = 1.2, k0 = std::sqrt(lam * lam - 1.0);
  const double exact = (lam / k0) * 2.0 * std::exp(-k0 * k0);

  const double d_lap = density_extrapolated(S, lam, c);
  const double d_sm = density_smoothed(S, lam, c, 2 * S.level_spacing(lam));
  const double dt = now_minus(t0);

  const double e_lap = std::abs(d_lap - exact) / exact;
  const double e_sm = std::abs(d_sm - exact) / exact;
  Outcome o;
  o.ok = e_lap < 5e-3 && e_sm < 5e-3 && dt < 30.0;
  o.detail = "exact " + fmt(exact) + ", resolvent-limit off by " + fmt(e_lap) +
             ", smoothed off by " + fmt(e_sm) + ", " + fmt(dt) + " s";
  return o;
}

// ---- criterion 5: Hermiticity, positivity, method agreement on a sweep ----

Outcome crit5() {
  int ran = 0, passed = 0;
  double worst_herm = 0, worst_eig = 0, worst_agree = 0;
  std::string first_fail;
  for (int i = 0; i < 10; ++i) {
    const double depth = 1.2 + 0.8 * i / 9.0;
    for (double rho : {2.15, 2.25, 2.35, 2.45, 2.55}) {
      // aim m/omega at rho via the continuum ground-level formula
      const double lam0 =
          std::pow((std::sqrt(1 + 4 * depth) - 1) / 2, 2);
      const double m = rho * std::sqrt(lam0 / (rho * rho - 1));
      ++ran;
      try {
        const SpectralData S = well(50, 1282, depth, m);
        const MultiIndexSet sets = enumerate_channels(S.omega, S.m, 4);
        const FormalHamiltonian Hp =
            expand_interaction(S, Nonlinearity::quartic(), 7);
        const NormalFormResult nf = birkhoff_normalize(S, Hp, 3);
        const FgrData fgr = fgr_matrix(S, nf, sets);
        bool ok = !fgr.all_fibers.empty();
        for (const FiberMatrix& f : fgr.all_fibers) {
          worst_herm = std::max(worst_herm, f.hermiticity);
          worst_eig = std::max(worst_eig, -f.min_eig / f.trace);
          worst_agree = std::max(worst_agree, f.agreement);
          ok = ok && f.hermiticity < 1e-9 && f.min_eig >= -1e-8 * f.trace &&
               f.agreement < 0.02;
        }
        if (ok)
          ++passed;
        else if (first_fail.empty())
          first_fail = "depth " + fmt(depth) + " ratio " + fmt(rho);
      } catch (const std::exception& e) {
        if (first_fail.empty())
          first_fail = "depth " + fmt(depth) + " ratio " + fmt(rho) + ": " +
                       e.what();
      }
    }
  }
  Outcome o;
  o.ok = ran == 50 && passed == 50;
  o.detail = std::to_string(passed) + "/50 configs clean; worst hermiticity " +
             fmt(worst_herm) + ", worst -min_eig/trace " + fmt(worst_eig) +
             ", worst method gap " + fmt(worst_agree);
  if (!first_fail.empty()) o.detail += "; first failure at " + first_fail;
  return o;
}

// ---- criterion 6: rate is quadratic in the lowest Taylor knob ----

Outcome crit6() {
  const SpectralData S = well(40, 1026, 2.0, 1.25);
  const Eigen::VectorXd betas = Eigen::VectorXd::LinSpaced(9, -2.0, 2.0);
  const GenericityScan scan =
      genericity_scan(S, Nonlinearity::quartic(), MultiIndex{2}, betas, 1);
  const double gmax = scan.gamma_values.cwiseAbs().maxCoeff();
  Outcome o;
  o.ok = gmax > 0 && scan.fit_residual < 1e-4 * gmax &&
         scan.roots.size() <= 2;
  o.detail = "quadratic fit residual " + fmt(scan.fit_residual) + " vs " +
             fmt(1e-4 * gmax) + " allowed, " +
             std::to_string(scan.roots.size()) + " roots";
  return o;
}

// ---- criterion 7: dissipation identity and closed-form decay ----

Outcome crit7() {
  // closed form: w=1, p=3, c=i -> y(1) = 1/sqrt(13)
  const ReducedModel single = single_mode_model(1.0, 3, cplx(0, 1));
  Eigen::VectorXcd e0(1);
  e0[0] = 1.0;
  const OdeResult r = integrate_reduced(single, e0, 1.0, 1.0, 1e-10);
  const double y_err =
      std::abs(std::norm(r.eta(0, r.t.size() - 1)) - 1.0 / std::sqrt(13.0));

  // identity along the well-derived model
  const SpectralData S = well(40, 1026, 2.0, 1.1);
  const MultiIndexSet sets = enumerate_channels(S.omega, S.m, 4);
  const FormalHamiltonian Hp =
      expand_interaction(S, Nonlinearity::quartic(), 7);
  const NormalFormResult nf = birkhoff_normalize(S, Hp, 3);
  const ReducedModel model =
      build_reduced(S, nf, model_coefficients(S, nf, sets));
  Eigen::VectorXcd a0(1);
  a0[0] = 0.35;
  const auto [defect, drain] = dissipation_check(model, a0, 10.0, 0.5, 1e-10);

  Outcome o;
  o.ok = y_err < 1e-6 && drain > 0 && defect < 1e-6 * drain;
  o.detail = "closed-form error " + fmt(y_err) + "; identity residual " +
             fmt(defect / drain) + " relative";
  return o;
}

// ---- criterion 8: wave integrator integrity ----

Outcome crit8() {
  const SpectralData S = well(40, 1026, 2.0, 1.25);
  Eigen::VectorXcd xi0(1);

  PdeRunConfig lin;
  lin.dt = 0.05;
  lin.T = 10;
  lin.sample_dt = 10;
  lin.sponge.enabled = false;
  PdeStepper P(S, Nonlinearity::zero(), lin);
  xi0[0] = 0.2;
  P.set_modes(xi0);
  const auto samples = P.run();
  const long nsteps = std::lround(lin.T / lin.dt);
  const cplx expect =
      0.2 * std::exp(cplx(0, -S.omega[0] * samples.back().t));
  const double phase_err = std::abs(samples.back().xi[0] - expect) / nsteps;

  auto drift_at = [&](double dt) {
    PdeRunConfig cfg;
    cfg.dt = dt;
    cfg.T = 100;
    cfg.sample_dt = 1.0;
    cfg.sponge.enabled = false;
    PdeStepper Q(S, Nonlinearity::quartic(), cfg);
    Eigen::VectorXcd x(1);
    x[0] = 0.05;
    Q.set_modes(x);
    const auto ss = Q.run();
    const double h0 = ss.front().h_total;
    double worst = 0;
    for (const auto& s : ss)
      worst = std::max(worst, std::abs(s.h_total - h0) / h0);
    return worst;
  };
  const double d1 = drift_at(0.01);
  const double d2 = drift_at(0.005);

  Outcome o;
  o.ok = phase_err < 1e-12 && d1 < 1e-6 && d2 < d1 / 2.5 && d2 > d1 / 8.0;
  o.detail = "phase error " + fmt(phase_err) + " per step; drift " + fmt(d1) +
             " at dt=0.01, ratio " + fmt(d1 / d2) + " under halving";
  return o;
}

// ---- criterion 9: the energy-leak experiment at full resolution ----

struct LeakOutcome {
  bool ok = false;
  std::string detail;
};

LeakOutcome leak_run(const SpectralData& S, const ReducedModel& model,
                     double eps) {
  const auto t0 = std::chrono::steady_clock::now();
  LeakParams p;
  p.xi0.resize(1);
  p.xi0[0] = eps;
  p.T = 5000;
  p.dt = 0.05;
  p.sample_dt = 0.5;
  p.window = 42;  // ~5 beat periods of 2w per block
  p.ode_tol = 1e-10;
  const LeakReport rep =
      run_leak_compare(S, model, Nonlinearity::quartic(), p);
  const double wall = now_minus(t0);

  // non-increasing after the transient
  const double t_on = 10.0 / S.omega[0];
  double uptick = 0;
  for (int i = 0; i + 1 < rep.pde.t.size(); ++i)
    if (rep.pde.t[i] >= t_on && rep.pde.y[i] > 0)
      uptick = std::max(
          uptick, (rep.pde.y[i + 1] - rep.pde.y[i]) / rep.pde.y[i]);

  // fitted time exponents: envelope ~ t^(-1/(p-1))
  const double a_pde = 1.0 / (rep.fit_pde.p - 1.0);
  const double a_red = 1.0 / (rep.fit_red.p - 1.0);
  const double a_gap = std::abs(a_pde - a_red);

  LeakOutcome lo;
  lo.ok = rep.fit_pde.valid && rep.fit_red.valid && uptick <= 1e-6 &&
          a_gap <= 0.2 && rep.transfer_ratio >= 0.7 &&
          rep.transfer_ratio <= 1.3 && wall < 600.0;
  std::ostringstream d;
  d << "eps " << eps << ": drop " << fmt(rep.drop_pde) << " vs "
    << fmt(rep.drop_red) << " (ratio " << fmt(rep.transfer_ratio)
    << "), exponents " << fmt(-a_pde) << " vs " << fmt(-a_red) << ", uptick "
    << fmt(uptick) << ", diverges " << fmt(rep.divergence_time) << "/"
    << fmt(p.T) << ", " << fmt(wall) << " s";
  lo.detail = d.str();
  return lo;
}

Outcome crit9() {
  const SpectralData S = well(40, 2048, 2.0, 1.25);
  const MultiIndexSet sets = enumerate_channels(S.omega, S.m, 5);
  const FormalHamiltonian Hp =
      expand_interaction(S, Nonlinearity::quartic(), 7);
  const NormalFormResult nf = birkhoff_normalize(S, Hp, 3);
  const ReducedModel model =
      build_reduced(S, nf, model_coefficients(S, nf, sets));

  const LeakOutcome a = leak_run(S, model, 0.05);
  const LeakOutcome b = leak_run(S, model, 0.02);
  Outcome o;
  o.ok = a.ok && b.ok;
  o.detail = a.detail + " | " + b.detail;
  return o;
}

// ---- criterion 10: amplitude scaling of the resonant monomial ----

Outcome crit10() {
  const SpectralData S = well(40, 1026, 2.0, 1.25);
  const MultiIndexSet sets = enumerate_channels(S.omega, S.m, 5);

  Eigen::VectorXcd shape(1);
  shape[0] = 1.0;
  PdeRunConfig cfg;
  cfg.dt = 0.02;
  cfg.T = 100;
  cfg.sample_dt = 0.1;
  const std::vector<double> eps = {0.02, 0.04, 0.08};
  const auto pts = run_eps_scaling(S, Nonlinearity::quartic(), sets.Mhat,
                                   shape, eps, cfg);

  std::vector<double> x, y;
  for (const auto& pt : pts) {
    x.push_back(pt.eps);
    y.push_back(pt.mono_l2.at(sets.Mhat[0]));
  }
  const double slope = loglog_slope(x, y);
  const double want = order(sets.Mhat[0]);
  Outcome o;
  o.ok = std::abs(slope - want) <= 0.3;
  o.detail = "slope " + fmt(slope) + " for exponent " +
             to_string(sets.Mhat[0]) + ", target " + fmt(want) + " +- 0.3";
  return o;
}

// ---- demo: the stock leak preset end to end ----

Outcome demo() {
  const auto t0 = std::chrono::steady_clock::now();
  const RunConfig c = preset("leak-demo");
  const Grid1D g = Grid1D::make(c.L, c.n_total);
  const SpectralData S = cached_decompose(g, c.make_potential(g), c.mass);
  const ResonanceReport res = check_resonances(S.omega, c.mass);
  const int r = 2 * res.N + 1;
  const MultiIndexSet sets =
      enumerate_channels(S.omega, c.mass, 2 * res.N + 3);
  const FormalHamiltonian Hp = expand_interaction(S, c.beta, r + 4);
  const NormalFormResult nf = birkhoff_normalize(S, Hp, r);
  const ReducedModel model =
      build_reduced(S, nf, model_coefficients(S, nf, sets));

  LeakParams p;
  p.xi0.resize(1);
  p.xi0[0] = c.amplitude;
  p.T = c.T;
  p.dt = c.dt;
  p.sample_dt = c.sample_dt;
  p.sponge = c.sponge;
  p.window = std::max(4, static_cast<int>(c.T / c.sample_dt) / 20);
  const LeakReport rep = run_leak_compare(S, model, c.beta, p);

  const double a_pde = 1.0 / (rep.fit_pde.p - 1.0);
  const double a_red = 1.0 / (rep.fit_red.p - 1.0);
  Outcome o;
  o.ok = rep.pde.monotone_down && rep.fit_pde.valid && rep.fit_red.valid &&
         std::abs(a_pde - a_red) <= 0.2 && rep.transfer_ratio >= 0.7 &&
         rep.transfer_ratio <= 1.3 && rep.divergence_time >= 0.9 * c.T;
  std::ostringstream d;
  d << "drop " << fmt(rep.drop_pde) << " (wave) vs " << fmt(rep.drop_red)
    << " (reduced), ratio " << fmt(rep.transfer_ratio) << ", exponents "
    << fmt(-a_pde) << " vs " << fmt(-a_red) << ", diverges "
    << fmt(rep.divergence_time) << "/" << fmt(c.T) << ", "
    << fmt(now_minus(t0)) << " s";
  o.detail = d.str();
  return o;
}

void setup() {
  const auto t0 = std::chrono::steady_clock::now();
  well(40, 2048, 2.0, 1.25);  // leak experiment
  well(60, 1538, 2.0, 1.1);   // demo preset
  well(40, 1026, 2.0, 1.1);   // coupling shape, dissipation identity
  well(40, 1026, 2.0, 1.25);  // genericity, integrator, scaling
  three_mode_well();          // homological bulk tests
  std::printf("[SETUP] spectral caches warmed in %.1f s\n", now_minus(t0));
}

const char* kNames[10] = {
    "homological solver exactness",
    "bracket engine consistency",
    "radiative coupling structure",
    "free-field density oracle",
    "damping matrices across the well sweep",
    "genericity of the damping rate",
    "reduced-model dissipation identity",
    "wave integrator integrity",
    "energy leak: wave vs reduced model",
    "amplitude scaling of the resonant monomial",
};

}  // namespace

int main(int argc, char** argv) {
  if (argc == 2 && std::strcmp(argv[1], "--setup") == 0) {
    setup();
    return 0;
  }
  if (argc == 3 && std::strcmp(argv[1], "--criterion") == 0) {
    const std::string which = argv[2];
    Outcome (*fns[10])() = {crit1, crit2, crit3, crit4, crit5,
                            crit6, crit7, crit8, crit9, crit10};
    Outcome o;
    std::string label;
    if (which == "demo") {
      o = demo();
      label = "demo: stock leak preset";
    } else {
      const int k = std::atoi(which.c_str());
      if (k < 1 || k > 10) {
        std::fprintf(stderr, "criterion must be 1..10 or 'demo'\n");
        return 2;
      }
      o = fns[k - 1]();
      label = "criterion " + which + ": " + kNames[k - 1];
    }
    std::printf("[%s] %s -- %s\n", o.ok ? "PASS" : "FAIL", label.c_str(),
                o.detail.c_str());
    return o.ok ? 0 : 1;
  }
  std::fprintf(stderr, "usage: acceptance --setup | --criterion <1..10|demo>\n");
  return 2;
}
