#include "nlkg/normalform.hpp"

#include <cmath>

#include "nlkg/errors.hpp"

namespace nlkg {

static Eigen::VectorXd omega_of(const SpectralData& S) { return S.omega; }

FormalHamiltonian homological_op(const SpectralData& S,
                                 const FormalHamiltonian& H,
                                 const Tolerances& tol) {
  const Eigen::VectorXd w = omega_of(S);
  FormalHamiltonian R;
  R.n_modes = H.n_modes;
  R.max_degree = H.max_degree;
  const std::complex<double> I(0, 1);
  for (auto& [k, c] : H.scalar) {
    if (k.kind == Kind::BQuad) continue;  // kernel
    double off = dot(k.mu, w) - dot(k.nu, w);
    if (std::abs(off) < tol.res * (1.0 + order(k.mu) + order(k.nu))) continue;
    R.add_scalar(k.mu, k.nu, -I * off * c);
  }
  for (auto& [k, p] : H.field) {
    double off = k.kind == Kind::FieldF ? dot(k.nu, w) - dot(k.mu, w)
                                        : dot(k.mu, w) - dot(k.nu, w);
    Eigen::VectorXcd q(p.size());
    for (int i = 0; i < p.size(); ++i) q[i] = (S.mu_cont[i] - off) * p[i];
    R.add_field(k.kind, k.mu, k.nu,
                (k.kind == Kind::FieldF ? -I : I) * q);
  }
  R.prune(0.0);
  return R;
}

HomologicalSplit solve_homological(const SpectralData& S,
                                   const FormalHamiltonian& K,
                                   const Tolerances& tol) {
  const Eigen::VectorXd w = omega_of(S);
  HomologicalSplit out;
  out.chi.n_modes = out.Z.n_modes = K.n_modes;
  out.chi.max_degree = out.Z.max_degree = K.max_degree;
  const std::complex<double> I(0, 1);

  for (auto& [k, c] : K.scalar) {
    if (k.kind == Kind::BQuad) {  // kernel of the homological operator
      out.Z.add_bquad(c);
      continue;
    }
    double off = dot(k.mu, w) - dot(k.nu, w);
    if (std::abs(off) < tol.res * (1.0 + order(k.mu) + order(k.nu)))
      out.Z.add_scalar(k.mu, k.nu, c);
    else
      out.chi.add_scalar(k.mu, k.nu, I * c / off);
  }

  for (auto& [k, p] : K.field) {
    // frequency offset hitting the resolvent: chi coefficient is
    // +-i (B - off)^{-1} coeff, admissible while off < m
    double off = k.kind == Kind::FieldF ? dot(k.nu, w) - dot(k.mu, w)
                                        : dot(k.mu, w) - dot(k.nu, w);
    if (off > S.m) {
      out.Z.add_field(k.kind, k.mu, k.nu, p);
      continue;
    }
    if (off > S.m - S.tol_edge)
      throw HypothesisError(
          "normal form: field monomial xi^" + to_string(k.mu) + " xibar^" +
          to_string(k.nu) +
          " has frequency offset inside the continuum edge band");
    Eigen::VectorXcd q(p.size());
    for (int i = 0; i < p.size(); ++i) q[i] = p[i] / (S.mu_cont[i] - off);
    out.chi.add_field(k.kind, k.mu, k.nu,
                      (k.kind == Kind::FieldF ? I : -I) * q);
  }
  return out;
}

FormalHamiltonian lie_transform(const SpectralData& S,
                                const FormalHamiltonian& H,
                                const FormalHamiltonian& chi, int D) {
  if (!chi.empty() && chi.min_degree() < 3)
    throw std::invalid_argument("lie_transform: generator must have degree >= 3");
  FormalHamiltonian out = H;
  out.max_degree = D;
  FormalHamiltonian term = H;
  for (int j = 1; !term.empty(); ++j) {
    term = poisson_bracket(S, chi, term, D);
    term.scale(1.0 / j);
    if (term.empty()) break;
    out.dropped += term.dropped;
    term.dropped = 0;
    out = jet_add(out, term);
    if (j > 64)
      throw std::logic_error("lie_transform: series failed to terminate");
  }
  out.prune(1e-300);
  return out;
}

NormalFormResult birkhoff_normalize(const SpectralData& S,
                                    const FormalHamiltonian& Hp, int r,
                                    int D, const Tolerances& tol) {
  if (D < 0) D = r + 4;
  NormalFormResult res;
  res.order = r;

  FormalHamiltonian H = jet_add(build_quadratic_part(S), Hp);
  H.max_degree = D;

  for (int d = 3; d <= r + 3; ++d) {
    // collect the degree-d monomials
    FormalHamiltonian K;
    K.n_modes = H.n_modes;
    K.max_degree = D;
    for (auto& [k, c] : H.scalar)
      if (k.kind == Kind::Scalar && degree_of(k) == d) K.scalar[k] = c;
    for (auto& [k, p] : H.field)
      if (degree_of(k) == d) K.field[k] = p;
    if (K.empty()) {
      res.generators.emplace_back();
      res.step_residuals.push_back(0.0);
      continue;
    }

    HomologicalSplit split = solve_homological(S, K, tol);
    if (!split.chi.empty()) H = lie_transform(S, H, split.chi, D);

    // exactness of this step: {H_L, chi} + Z - K should vanish
    FormalHamiltonian check =
        jet_add(homological_op(S, split.chi, tol), split.Z);
    check.scale(-1.0);
    check = jet_add(check, K);
    res.step_residuals.push_back(check.norm1());
    res.generators.push_back(std::move(split.chi));
  }

  res.Z0.n_modes = res.Z1.n_modes = H.n_modes;
  res.Z0.max_degree = res.Z1.max_degree = D;
  const Eigen::VectorXd w = S.omega;
  for (auto& [k, c] : H.scalar) {
    if (k.kind != Kind::Scalar) continue;
    int d = degree_of(k);
    if (d < 3 || d > r + 3) continue;
    double off = dot(k.mu, w) - dot(k.nu, w);
    if (std::abs(off) < tol.res * (1.0 + order(k.mu) + order(k.nu)))
      res.Z0.scalar[k] = c;
  }
  for (auto& [k, p] : H.field) {
    if (degree_of(k) > r + 3) continue;
    double off = k.kind == Kind::FieldF ? dot(k.nu, w) - dot(k.mu, w)
                                        : dot(k.mu, w) - dot(k.nu, w);
    if (off > S.m) res.Z1.field[k] = p;
  }
  res.dropped = H.dropped;
  res.H = std::move(H);
  return res;
}

std::map<MultiIndex, Eigen::VectorXcd> NormalFormResult::radiating_couplings()
    const {
  std::map<MultiIndex, Eigen::VectorXcd> out;
  for (auto& [k, p] : Z1.field)
    if (k.kind == Kind::FieldF && is_zero(k.mu)) out[k.nu] = p;
  return out;
}

}  // namespace nlkg
