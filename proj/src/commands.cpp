#include "nlkg/commands.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "nlkg/cache.hpp"
#include "nlkg/compare.hpp"
#include "nlkg/errors.hpp"
#include "nlkg/jets.hpp"
#include "nlkg/multi_index.hpp"
#include "nlkg/normalform.hpp"
#include "nlkg/pde.hpp"
#include "nlkg/reduced.hpp"
#include "nlkg/resonance.hpp"
#include "nlkg/scattering.hpp"

namespace nlkg {
namespace {

namespace fs = std::filesystem;

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

// every report opens with the command name, the full configuration it ran
// under, and a hash of that configuration for quick run identification
Json header(const RunConfig& c, const std::string& command) {
  const std::string text = config_to_json_text(c);
  char hex[24];
  std::snprintf(hex, sizeof hex, "%016llx",
                static_cast<unsigned long long>(fnv1a(text)));
  Json h;
  h["command"] = command;
  h["config"] = Json::parse(text);
  h["config_hash"] = hex;
  return h;
}

Json arr(const Eigen::VectorXd& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

Json arr(const std::vector<double>& v) {
  Json a = Json::array();
  for (double x : v) a.push_back(x);
  return a;
}

Json arr(const std::vector<int>& v) {
  Json a = Json::array();
  for (int x : v) a.push_back(x);
  return a;
}

Json names(const std::vector<MultiIndex>& v) {
  Json a = Json::array();
  for (const auto& mu : v) a.push_back(to_string(mu));
  return a;
}

Json fit_json(const DecayFit& f) {
  Json j;
  j["valid"] = f.valid;
  j["p"] = f.p;
  j["C"] = f.C;
  j["residual"] = f.residual;
  return j;
}

void emit(Json& rep, const CmdOptions& opt, const std::string& stem) {
  if (opt.out_dir.empty()) return;
  fs::create_directories(opt.out_dir);
  rep["files"]["report_json"] = stem + ".json";
  rep["files"]["report_text"] = stem + ".txt";
  write_json_file(join_path(opt.out_dir, stem + ".json"), rep);
  write_text_file(join_path(opt.out_dir, stem + ".txt"), render_text(rep));
}

SpectralData make_setup(const RunConfig& c) {
  const Grid1D g = Grid1D::make(c.L, c.n_total);
  const Potential V = c.make_potential(g);
  return cached_decompose(g, V, c.mass, c.tol);
}

// resonance gate shared by everything downstream of the normal form
ResonanceReport checked_resonances(const SpectralData& S, const RunConfig& c) {
  ResonanceReport res = check_resonances(S.omega, c.mass, c.degree_cap, c.tol);
  if (!res.ok()) {
    std::string w = !res.mass_witnesses.empty()
                        ? to_string(res.mass_witnesses.front()) +
                              " reaches the mass"
                        : to_string(res.null_witnesses.front()) +
                              " annihilates the frequencies";
    throw HypothesisError("resonant frequency combination: " + w);
  }
  return res;
}

int pick_order(const RunConfig& c, const ResonanceReport& res) {
  return c.order > 0 ? c.order : 2 * res.N + 1;
}

struct ModelParts {
  ResonanceReport res;
  MultiIndexSet sets;
  NormalFormResult nf;
  CoeffTensor tensor;
  ReducedModel model;
  int r = 0;
};

ModelParts build_model(const SpectralData& S, const RunConfig& c) {
  ModelParts p;
  p.res = checked_resonances(S, c);
  p.r = pick_order(c, p.res);
  p.sets = enumerate_channels(S.omega, c.mass, c.degree_cap, c.tol);
  FormalHamiltonian Hp = expand_interaction(S, c.beta, p.r + 4);
  p.nf = birkhoff_normalize(S, Hp, p.r, -1, c.tol);
  p.tensor = model_coefficients(S, p.nf, p.sets, c.tol);
  p.model = build_reduced(S, p.nf, p.tensor);
  return p;
}

Eigen::VectorXcd initial_modes(const SpectralData& S, const RunConfig& c) {
  if (c.xi0.size() > 0) {
    if (static_cast<int>(c.xi0.size()) != S.n_bound)
      throw ConfigError("evolve: xi0 holds " + std::to_string(c.xi0.size()) +
                        " amplitudes but the potential has " +
                        std::to_string(S.n_bound) + " bound states");
    return c.xi0;
  }
  Eigen::VectorXcd xi(S.n_bound);
  if (c.phase == "random") {
    std::mt19937_64 rng(c.seed);
    for (int j = 0; j < S.n_bound; ++j) {
      // top 53 bits -> uniform [0,1); keeps phases identical across platforms
      const double u =
          static_cast<double>(rng() >> 11) * (1.0 / 9007199254740992.0);
      xi[j] = std::polar(c.amplitude, 2.0 * M_PI * u);
    }
  } else {
    xi.setConstant(std::complex<double>(c.amplitude, 0.0));
  }
  return xi;
}

Json mode_sq(const Eigen::VectorXcd& xi) {
  Json a = Json::array();
  for (Eigen::Index j = 0; j < xi.size(); ++j) a.push_back(std::norm(xi[j]));
  return a;
}

// largest relative block-to-block increase of an envelope after t0
double uptick_after(const Envelope& e, double t0) {
  double worst = 0;
  const double scale = std::max(std::abs(e.y[0]), 1e-300);
  for (Eigen::Index b = 0; b + 1 < e.t.size(); ++b) {
    if (e.t[b] < t0) continue;
    worst = std::max(worst, (e.y[b + 1] - e.y[b]) / scale);
  }
  return worst;
}

Json envelope_json(const Envelope& e) {
  Json j;
  j["blocks"] = e.t.size();
  j["monotone_down"] = e.monotone_down;
  j["worst_uptick"] = e.worst_uptick;
  return j;
}

void write_envelope_csv(const std::string& path, const Envelope& e) {
  std::vector<Eigen::VectorXd> rows;
  for (Eigen::Index b = 0; b < e.t.size(); ++b)
    rows.push_back(Eigen::Vector2d(e.t[b], e.y[b]));
  write_csv(path, {"t", "h_modes"}, rows);
}

}  // namespace

Json cmd_spectrum(const RunConfig& c, const CmdOptions& opt) {
  const SpectralData S = make_setup(c);

  Json rep = header(c, "spectrum");
  Json sp;
  sp["n_grid"] = S.n();
  sp["h"] = S.grid.h;
  sp["edge"] = S.edge();
  sp["n_bound"] = S.n_bound;
  sp["omega"] = arr(S.omega);
  Json cont;
  cont["n_cont"] = S.n_cont();
  cont["mu_min"] = S.mu_cont[0];
  cont["mu_max"] = S.mu_cont[S.mu_cont.size() - 1];
  cont["spacing_near_edge"] = S.level_spacing(S.mu_cont[0]);
  sp["continuum"] = cont;
  if (S.n_bound == 0)
    sp["note"] = "no bound states; trivial scattering regime";
  rep["spectrum"] = sp;

  if (S.n_bound > 0) {
    const ResonanceReport res =
        check_resonances(S.omega, c.mass, c.degree_cap, c.tol);
    Json r;
    r["degree_cap"] = res.degree_cap;
    r["floors"] = arr(res.floors);
    r["N"] = res.N;
    r["combos_miss_mass"] = res.combos_miss_mass;
    r["combos_nonnull"] = res.combos_nonnull;
    r["ok"] = res.ok();
    if (!res.mass_witnesses.empty())
      r["mass_witnesses"] = names(res.mass_witnesses);
    if (!res.null_witnesses.empty())
      r["null_witnesses"] = names(res.null_witnesses);
    rep["resonance"] = r;

    const MultiIndexSet sets =
        enumerate_channels(S.omega, c.mass, c.degree_cap, c.tol);
    Json ch;
    ch["count"] = sets.M.size();
    ch["minimal"] = names(sets.Mhat);
    ch["energies"] = arr(sets.energies_hat);
    Json k0 = Json::array();
    for (double lam : sets.energies_hat)
      k0.push_back(std::sqrt(std::max(lam * lam - c.mass * c.mass, 0.0)));
    ch["k0"] = k0;
    rep["channels"] = ch;
  }

  emit(rep, opt, "spectrum");
  return rep;
}

Json cmd_fgr(const RunConfig& c, const CmdOptions& opt,
             const ScanOptions& scan) {
  if (c.beta.trivial())
    throw HypothesisError(
        "fgr: the interaction vanishes identically (degenerate "
        "nonlinearity); nothing radiates");
  const SpectralData S = make_setup(c);
  if (S.n_bound == 0)
    throw HypothesisError("fgr: no bound states; trivial scattering regime");

  const ResonanceReport res = checked_resonances(S, c);
  const int r = pick_order(c, res);
  const MultiIndexSet sets =
      enumerate_channels(S.omega, c.mass, c.degree_cap, c.tol);

  FormalHamiltonian Hp = expand_interaction(S, c.beta, r + 4);
  const NormalFormResult nf = birkhoff_normalize(S, Hp, r, -1, c.tol);
  const FgrData fgr = fgr_matrix(S, nf, sets, c.tol);
  const CoeffTensor tensor = model_coefficients(S, nf, sets, c.tol);

  Json rep = header(c, "fgr");

  Json sp;
  sp["n_bound"] = S.n_bound;
  sp["omega"] = arr(S.omega);
  sp["N"] = res.N;
  sp["order"] = r;
  sp["channels"] = sets.M.size();
  sp["minimal_channels"] = names(sets.Mhat);
  rep["setup"] = sp;

  Json nfj;
  nfj["order"] = nf.order;
  double worst_step = 0;
  for (double s : nf.step_residuals) worst_step = std::max(worst_step, s);
  nfj["max_step_residual"] = worst_step;
  nfj["dropped"] = nf.dropped;
  nfj["reality_defect"] = nf.H.reality_defect();
  nfj["z0_terms"] = nf.Z0.scalar.size();
  nfj["radiating_couplings"] = nf.radiating_couplings().size();
  rep["normalform"] = nfj;

  Json fj;
  fj["coupling_alive"] = fgr.coupling_alive;
  fj["fibers_invertible"] = fgr.fibers_invertible;
  fj["rates_positive"] = fgr.rates_positive;
  bool flagged = false;
  auto fiber_json = [&](const std::vector<FiberMatrix>& fbs) {
    Json out = Json::array();
    for (const auto& fb : fbs) {
      Json f;
      f["lambda"] = fb.lambda;
      f["members"] = names(fb.members);
      Json diag = Json::array();
      for (Eigen::Index i = 0; i < fb.gamma_lap.rows(); ++i)
        diag.push_back(fb.gamma_lap(i, i).real());
      f["gamma_diag"] = diag;
      f["agreement"] = fb.agreement;
      f["hermiticity"] = fb.hermiticity;
      f["min_eig"] = fb.min_eig;
      f["trace"] = fb.trace;
      const bool bad = fb.agreement > c.tol.gamma_agree;
      f["flagged"] = bad;
      flagged = flagged || bad;
      out.push_back(f);
    }
    return out;
  };
  fj["fibers"] = fiber_json(fgr.hat_fibers);
  fj["all_fibers"] = fiber_json(fgr.all_fibers);
  fj["methods_flagged"] = flagged;
  Json rates = Json::array();
  for (const auto& [mu, g] : fgr.gamma)
    rates.push_back({{"mu", to_string(mu)}, {"gamma", g}});
  fj["rates"] = rates;
  rep["fgr"] = fj;

  Json co;
  Json entries = Json::array();
  for (const auto& e : tensor.entries)
    entries.push_back({{"mu", to_string(e.mu)},
                       {"nu", to_string(e.nu)},
                       {"lambda", e.lambda},
                       {"re", e.c.real()},
                       {"im", e.c.imag()}});
  co["count"] = entries.size();
  co["entries"] = entries;
  rep["coefficients"] = co;

  if (scan.enabled) {
    // lowest-energy minimal channel, scanned against its jet derivative
    const MultiIndex mu = sets.Mhat[sets.fibers_hat.front().front()];
    const Eigen::VectorXd bv =
        Eigen::VectorXd::LinSpaced(scan.points, scan.lo, scan.hi);
    const GenericityScan gs = genericity_scan(S, c.beta, mu, bv, r, c.tol);
    Json sj;
    sj["mu"] = to_string(gs.mu);
    sj["taylor_order"] = gs.taylor_order;
    sj["quad"] = Json::array({gs.quad[0], gs.quad[1], gs.quad[2]});
    sj["fit_residual"] = gs.fit_residual;
    sj["roots"] = arr(gs.roots);
    sj["degenerate_points"] = gs.roots.size();
    rep["scan"] = sj;
    if (!opt.out_dir.empty()) {
      fs::create_directories(opt.out_dir);
      std::vector<Eigen::VectorXd> rows;
      for (Eigen::Index i = 0; i < bv.size(); ++i)
        rows.push_back(Eigen::Vector2d(gs.beta_values[i], gs.gamma_values[i]));
      write_csv(join_path(opt.out_dir, "scan.csv"), {"beta", "gamma"}, rows);
      rep["files"]["scan_csv"] = "scan.csv";
    }
  }

  emit(rep, opt, "fgr");
  return rep;
}

Json cmd_evolve(const RunConfig& c, const std::string& mode,
                const CmdOptions& opt) {
  if (mode != "pde" && mode != "reduced" && mode != "both")
    throw ConfigError("evolve: mode must be 'pde', 'reduced' or 'both'");
  if (c.beta.trivial() && mode != "pde")
    throw HypothesisError(
        "evolve: the interaction vanishes identically (degenerate "
        "nonlinearity); the reduced model is empty");
  if (mode != "reduced" && !c.beta.h6_ok())
    throw HypothesisError(
        "evolve: wave runs need an interaction vanishing to fourth order");

  const SpectralData S = make_setup(c);
  if (S.n_bound == 0)
    throw HypothesisError("evolve: no bound states; nothing to track");
  const Eigen::VectorXcd xi0 = initial_modes(S, c);

  Json rep = header(c, "evolve");
  rep["mode"] = mode;
  rep["initial"] = mode_sq(xi0);
  if (!opt.out_dir.empty()) fs::create_directories(opt.out_dir);

  if (mode == "pde") {
    PdeRunConfig pc;
    pc.dt = c.dt;
    pc.T = c.T;
    pc.sample_dt = c.sample_dt;
    pc.sponge = c.sponge;
    PdeStepper stepper(S, c.beta, pc);
    stepper.set_modes(xi0);
    const auto samples = stepper.run();

    const double h0 = samples.front().h_total;
    double drift = 0;
    for (const auto& s : samples)
      drift = std::max(drift, std::abs(s.h_total + s.absorbed - h0));
    const double m0 = samples.front().h_modes;
    Json pj;
    pj["samples"] = samples.size();
    pj["t_final"] = samples.back().t;
    pj["h_initial"] = h0;
    pj["h_final"] = samples.back().h_total;
    pj["absorbed"] = samples.back().absorbed;
    pj["energy_drift"] = drift / std::max(std::abs(h0), 1e-300);
    pj["mode_energy_drop"] =
        (m0 - samples.back().h_modes) / std::max(std::abs(m0), 1e-300);
    pj["mode_sq_final"] = mode_sq(samples.back().xi);
    rep["pde"] = pj;

    if (!opt.out_dir.empty()) {
      std::vector<std::string> cols = {"t", "h_total", "h_modes", "h_rad",
                                       "absorbed"};
      for (int j = 0; j < S.n_bound; ++j)
        cols.push_back("xi_sq_" + std::to_string(j));
      std::vector<Eigen::VectorXd> rows;
      for (const auto& s : samples) {
        Eigen::VectorXd row(5 + S.n_bound);
        row << s.t, s.h_total, s.h_modes, s.h_rad, s.absorbed,
            s.xi.cwiseAbs2().real();
        rows.push_back(row);
      }
      write_csv(join_path(opt.out_dir, "pde.csv"), cols, rows);
      rep["files"]["pde_csv"] = "pde.csv";
    }
  } else if (mode == "reduced") {
    const ModelParts mp = build_model(S, c);
    const OdeResult ode =
        integrate_reduced(mp.model, xi0, c.T, c.sample_dt, c.tol.rk_tol);

    const Eigen::Index ns = ode.t.size();
    Eigen::VectorXd energy(ns), drain(ns), live(ns);
    for (Eigen::Index i = 0; i < ns; ++i) {
      energy[i] = mp.model.energy(ode.eta.col(i));
      drain[i] = mp.model.drain(ode.eta.col(i));
      live[i] = std::norm(ode.eta(0, i));
    }

    Json rj;
    rj["samples"] = ns;
    rj["steps"] = ode.steps;
    rj["rejected"] = ode.rejected;
    rj["energy_initial"] = energy[0];
    rj["energy_final"] = energy[ns - 1];
    rj["energy_drop"] =
        (energy[0] - energy[ns - 1]) / std::max(std::abs(energy[0]), 1e-300);
    rj["mode_sq_final"] = mode_sq(ode.eta.col(ns - 1));
    const auto diss = dissipation_check(mp.model, xi0, 0.25 * c.T,
                                        std::max(c.sample_dt, 1e-3));
    rj["dissipation_defect"] = diss.first;
    rj["drain_scale"] = diss.second;
    const int window =
        std::max<int>(4, static_cast<int>(ns) / 20);
    const DecayFit fit = fit_decay(envelope(ode.t, live, window));
    rj["fit"] = fit_json(fit);
    rep["reduced"] = rj;

    if (!opt.out_dir.empty()) {
      std::vector<std::string> cols = {"t", "energy", "drain"};
      for (int j = 0; j < mp.model.n(); ++j)
        cols.push_back("eta_sq_" + std::to_string(j));
      std::vector<Eigen::VectorXd> rows;
      for (Eigen::Index i = 0; i < ns; ++i) {
        Eigen::VectorXd row(3 + mp.model.n());
        row << ode.t[i], energy[i], drain[i],
            ode.eta.col(i).cwiseAbs2().real();
        rows.push_back(row);
      }
      write_csv(join_path(opt.out_dir, "reduced.csv"), cols, rows);
      rep["files"]["reduced_csv"] = "reduced.csv";
    }
  } else {
    const ModelParts mp = build_model(S, c);
    LeakParams lp;
    lp.xi0 = xi0;
    lp.T = c.T;
    lp.dt = c.dt;
    lp.sample_dt = c.sample_dt;
    lp.sponge = c.sponge;
    lp.window = std::max<int>(
        4, static_cast<int>(c.T / c.sample_dt) / 20);
    lp.ode_tol = c.tol.rk_tol;
    const LeakReport lr = run_leak_compare(S, mp.model, c.beta, lp);

    const double t0 = 10.0 / S.omega[0];  // settling window of the fast phase
    Json cj;
    cj["window"] = lp.window;
    cj["pde"] = envelope_json(lr.pde);
    cj["reduced"] = envelope_json(lr.red);
    cj["pde_uptick_after_transient"] = uptick_after(lr.pde, t0);
    cj["transient"] = t0;
    cj["fit_pde"] = fit_json(lr.fit_pde);
    cj["fit_reduced"] = fit_json(lr.fit_red);
    cj["drop_pde"] = lr.drop_pde;
    cj["drop_reduced"] = lr.drop_red;
    cj["transfer_ratio"] = lr.transfer_ratio;
    cj["divergence_time"] = lr.divergence_time;
    rep["compare"] = cj;

    if (!opt.out_dir.empty()) {
      write_envelope_csv(join_path(opt.out_dir, "envelope_pde.csv"), lr.pde);
      write_envelope_csv(join_path(opt.out_dir, "envelope_red.csv"), lr.red);
      rep["files"]["envelope_pde_csv"] = "envelope_pde.csv";
      rep["files"]["envelope_red_csv"] = "envelope_red.csv";
    }
  }

  emit(rep, opt, "evolve_" + mode);
  return rep;
}

Json cmd_sweep(const std::vector<RunConfig>& runs, const CmdOptions& opt) {
  Json rep;
  rep["command"] = "sweep";
  Json out = Json::array();
  int n_ok = 0, n_config = 0, n_hyp = 0, n_res = 0;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    char name[16];
    std::snprintf(name, sizeof name, "run_%03zu", i);
    CmdOptions sub;
    if (!opt.out_dir.empty()) sub.out_dir = join_path(opt.out_dir, name);

    Json entry;
    entry["index"] = i;
    if (!sub.out_dir.empty()) entry["dir"] = name;
    try {
      const Json r = cmd_fgr(runs[i], sub);
      entry["status"] = "ok";
      entry["coupling_alive"] = r["fgr"]["coupling_alive"];
      entry["fibers_invertible"] = r["fgr"]["fibers_invertible"];
      entry["rates_positive"] = r["fgr"]["rates_positive"];
      entry["methods_flagged"] = r["fgr"]["methods_flagged"];
      double gmin = 0;
      bool first = true;
      for (const auto& rate : r["fgr"]["rates"]) {
        const double g = rate["gamma"].get<double>();
        gmin = first ? g : std::min(gmin, g);
        first = false;
      }
      entry["min_gamma"] = gmin;
      ++n_ok;
    } catch (const ConfigError& e) {
      entry["status"] = "config-error";
      entry["error"] = e.what();
      ++n_config;
    } catch (const HypothesisError& e) {
      entry["status"] = "hypothesis-error";
      entry["error"] = e.what();
      ++n_hyp;
    } catch (const ResolutionError& e) {
      entry["status"] = "resolution-error";
      entry["error"] = e.what();
      ++n_res;
    }
    out.push_back(entry);
  }
  rep["runs"] = out;
  Json sum;
  sum["total"] = runs.size();
  sum["ok"] = n_ok;
  sum["config_error"] = n_config;
  sum["hypothesis_error"] = n_hyp;
  sum["resolution_error"] = n_res;
  rep["summary"] = sum;

  emit(rep, opt, "sweep");
  return rep;
}

}  // namespace nlkg
