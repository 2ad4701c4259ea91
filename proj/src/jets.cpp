#include "nlkg/jets.hpp"

#include <cmath>
#include <functional>

#include "nlkg/errors.hpp"

namespace nlkg {

void FormalHamiltonian::add_scalar(const MultiIndex& mu, const MultiIndex& nu,
                                   std::complex<double> c) {
  if (c == 0.0) return;
  MonoKey k{Kind::Scalar, mu, nu};
  auto [it, fresh] = scalar.try_emplace(k, c);
  if (!fresh) it->second += c;
}

void FormalHamiltonian::add_bquad(std::complex<double> c) {
  if (c == 0.0) return;
  MonoKey k{Kind::BQuad, MultiIndex(n_modes, 0), MultiIndex(n_modes, 0)};
  auto [it, fresh] = scalar.try_emplace(k, c);
  if (!fresh) it->second += c;
}

void FormalHamiltonian::add_field(Kind kind, const MultiIndex& mu,
                                  const MultiIndex& nu,
                                  const Eigen::VectorXcd& phi) {
  MonoKey k{kind, mu, nu};
  auto it = field.find(k);
  if (it == field.end())
    field.emplace(k, phi);
  else
    it->second += phi;
}

int FormalHamiltonian::min_degree() const {
  int d = 1 << 20;
  for (auto& [k, c] : scalar) d = std::min(d, degree_of(k));
  for (auto& [k, p] : field) d = std::min(d, degree_of(k));
  return d;
}

double FormalHamiltonian::norm1() const {
  double s = 0;
  for (auto& [k, c] : scalar) s += std::abs(c);
  for (auto& [k, p] : field) s += p.norm();
  return s;
}

void FormalHamiltonian::prune(double eps) {
  for (auto it = scalar.begin(); it != scalar.end();)
    it = std::abs(it->second) <= eps ? scalar.erase(it) : std::next(it);
  for (auto it = field.begin(); it != field.end();)
    it = it->second.norm() <= eps ? field.erase(it) : std::next(it);
}

void FormalHamiltonian::scale(std::complex<double> a) {
  for (auto& [k, c] : scalar) c *= a;
  for (auto& [k, p] : field) p *= a;
}

double FormalHamiltonian::reality_defect() const {
  double worst = 0;
  for (auto& [k, c] : scalar) {
    if (k.kind == Kind::BQuad) {
      worst = std::max(worst, std::abs(c.imag()));
      continue;
    }
    MonoKey partner{Kind::Scalar, k.nu, k.mu};
    auto it = scalar.find(partner);
    std::complex<double> mirror = it == scalar.end() ? 0.0 : it->second;
    worst = std::max(worst, std::abs(c - std::conj(mirror)));
  }
  for (auto& [k, p] : field) {
    Kind other = k.kind == Kind::FieldF ? Kind::FieldFbar : Kind::FieldF;
    MonoKey partner{other, k.nu, k.mu};
    auto it = field.find(partner);
    if (it == field.end()) {
      worst = std::max(worst, p.norm());
      continue;
    }
    worst = std::max(worst, (p - it->second.conjugate()).norm());
  }
  return worst;
}

FormalHamiltonian jet_add(const FormalHamiltonian& A,
                          const FormalHamiltonian& B) {
  FormalHamiltonian R = A;
  R.max_degree = std::max(A.max_degree, B.max_degree);
  R.dropped += B.dropped;
  for (auto& [k, c] : B.scalar) {
    auto [it, fresh] = R.scalar.try_emplace(k, c);
    if (!fresh) it->second += c;
  }
  for (auto& [k, p] : B.field) {
    auto it = R.field.find(k);
    if (it == R.field.end())
      R.field.emplace(k, p);
    else
      it->second += p;
  }
  return R;
}

FormalHamiltonian build_quadratic_part(const SpectralData& S) {
  FormalHamiltonian H;
  H.n_modes = S.n_bound;
  for (int j = 0; j < S.n_bound; ++j) {
    MultiIndex e(S.n_bound, 0);
    e[j] = 1;
    H.add_scalar(e, e, S.omega[j]);
  }
  H.add_bquad(1.0);
  return H;
}

// enumerate kappa >= 0 with |kappa| = d
static void visit_weight(int n, int d,
                         const std::function<void(const MultiIndex&)>& f) {
  MultiIndex k(n, 0);
  std::function<void(int, int)> rec = [&](int j, int left) {
    if (j == n - 1) {
      k[j] = left;
      f(k);
      return;
    }
    for (int e = 0; e <= left; ++e) {
      k[j] = e;
      rec(j + 1, left - e);
    }
  };
  if (n == 0) return;
  rec(0, d);
}

FormalHamiltonian expand_interaction(const SpectralData& S,
                                     const Nonlinearity& nl, int D) {
  FormalHamiltonian H;
  H.n_modes = S.n_bound;
  H.max_degree = D;
  const int n = S.n_bound;
  if (n == 0) return H;

  // c_j(x) = phi_j / sqrt(2 w_j)
  std::vector<Eigen::VectorXd> c(n);
  Eigen::VectorXd abs_sum = Eigen::VectorXd::Zero(S.n());
  for (int j = 0; j < n; ++j) {
    c[j] = S.bound_state(j) / std::sqrt(2.0 * S.omega[j]);
    abs_sum += c[j].cwiseAbs();
  }

  for (int d = 3; d <= nl.max_order(); ++d) {
    double bd = nl.coeff(d);
    if (bd == 0.0) continue;

    // scalar part: coefficient of xi^mu xibar^nu with mu+nu = kappa, |kappa|=d
    if (d <= D) {
      visit_weight(n, d, [&](const MultiIndex& kappa) {
        Eigen::VectorXd prod = Eigen::VectorXd::Ones(S.n());
        for (int j = 0; j < n; ++j)
          for (int e = 0; e < kappa[j]; ++e) prod.array() *= c[j].array();
        double I = integrate(S.grid, prod);
        // split kappa into (mu, nu)
        MultiIndex mu(n, 0);
        std::function<void(int)> split = [&](int j) {
          if (j == n) {
            MultiIndex nu(n);
            for (int i = 0; i < n; ++i) nu[i] = kappa[i] - mu[i];
            H.add_scalar(mu, nu, bd * I / (factorial(mu) * factorial(nu)));
            return;
          }
          for (int e = 0; e <= kappa[j]; ++e) {
            mu[j] = e;
            split(j + 1);
          }
        };
        split(0);
      });
    } else {
      H.dropped += std::abs(bd) * integrate(S.grid, (Eigen::VectorXd)abs_sum
                                                         .array()
                                                         .pow(d)
                                                         .matrix());
    }

    // f-linear part: |kappa| = d - 1, total degree d
    if (d <= D) {
      visit_weight(n, d - 1, [&](const MultiIndex& kappa) {
        Eigen::VectorXd prod = Eigen::VectorXd::Ones(S.n());
        for (int j = 0; j < n; ++j)
          for (int e = 0; e < kappa[j]; ++e) prod.array() *= c[j].array();
        Eigen::VectorXcd bm = S.to_cont(prod.cast<std::complex<double>>());
        for (int k = 0; k < bm.size(); ++k)
          bm[k] /= std::sqrt(S.mu_cont[k]);  // B^{-1/2} Pc
        MultiIndex mu(n, 0);
        std::function<void(int)> split = [&](int j) {
          if (j == n) {
            MultiIndex nu(n);
            for (int i = 0; i < n; ++i) nu[i] = kappa[i] - mu[i];
            Eigen::VectorXcd phi =
                bm * (bd / (std::sqrt(2.0) * factorial(mu) * factorial(nu)));
            H.add_field(Kind::FieldF, mu, nu, phi);
            H.add_field(Kind::FieldFbar, mu, nu, phi);
            return;
          }
          for (int e = 0; e <= kappa[j]; ++e) {
            mu[j] = e;
            split(j + 1);
          }
        };
        split(0);
      });
    }

    // magnitude estimate of the f^2-and-higher remainder at unit field norm
    Eigen::VectorXd p = abs_sum.array().pow(d - 2).matrix();
    H.dropped += std::abs(bd) / (2.0 * factorial(d - 2)) *
                 integrate(S.grid, p) / (2.0 * S.m);
  }
  H.prune(0.0);
  return H;
}

namespace {

// scatter the xi-derivative pairing of two monomials into `out`
template <class AddFn>
void xi_pairing(const MultiIndex& muA, const MultiIndex& nuA,
                const MultiIndex& muB, const MultiIndex& nuB,
                const AddFn& add) {
  const int n = (int)muA.size();
  for (int j = 0; j < n; ++j) {
    long f = (long)muA[j] * nuB[j] - (long)nuA[j] * muB[j];
    if (f == 0) continue;
    MultiIndex mu = add_indices(muA, muB), nu = add_indices(nuA, nuB);
    mu[j] -= 1;
    nu[j] -= 1;
    add(mu, nu, std::complex<double>(0, 1) * (double)f);
  }
}

}  // namespace

FormalHamiltonian poisson_bracket(const SpectralData& S,
                                  const FormalHamiltonian& A,
                                  const FormalHamiltonian& B, int D) {
  FormalHamiltonian R;
  R.n_modes = A.n_modes;
  R.max_degree = D;

  auto put_scalar = [&](const MultiIndex& mu, const MultiIndex& nu,
                        std::complex<double> c) {
    if (c == 0.0) return;
    if (order(mu) + order(nu) > D) {
      R.dropped += std::abs(c);
      return;
    }
    R.add_scalar(mu, nu, c);
  };
  auto put_field = [&](Kind k, const MultiIndex& mu, const MultiIndex& nu,
                       const Eigen::VectorXcd& phi) {
    double nrm = phi.norm();
    if (nrm == 0.0) return;
    if (order(mu) + order(nu) + 1 > D) {
      R.dropped += nrm;
      return;
    }
    R.add_field(k, mu, nu, phi);
  };

  // scalar x scalar
  for (auto& [ka, ca] : A.scalar) {
    if (ka.kind == Kind::BQuad) continue;
    for (auto& [kb, cb] : B.scalar) {
      if (kb.kind == Kind::BQuad) continue;
      auto cca = ca, ccb = cb;
      xi_pairing(ka.mu, ka.nu, kb.mu, kb.nu,
                 [&](const MultiIndex& mu, const MultiIndex& nu,
                     std::complex<double> w) { put_scalar(mu, nu, w * cca * ccb); });
    }
  }

  // scalar x field and field x scalar
  for (auto& [ka, ca] : A.scalar) {
    if (ka.kind == Kind::BQuad) continue;
    for (auto& [kb, pb] : B.field) {
      auto cca = ca;
      const Eigen::VectorXcd& ppb = pb;
      xi_pairing(ka.mu, ka.nu, kb.mu, kb.nu,
                 [&](const MultiIndex& mu, const MultiIndex& nu,
                     std::complex<double> w) {
                   put_field(kb.kind, mu, nu, (w * cca) * ppb);
                 });
    }
  }
  for (auto& [ka, pa] : A.field) {
    for (auto& [kb, cb] : B.scalar) {
      if (kb.kind == Kind::BQuad) continue;
      auto ccb = cb;
      const Eigen::VectorXcd& ppa = pa;
      xi_pairing(ka.mu, ka.nu, kb.mu, kb.nu,
                 [&](const MultiIndex& mu, const MultiIndex& nu,
                     std::complex<double> w) {
                   put_field(ka.kind, mu, nu, (w * ccb) * ppa);
                 });
    }
  }

  // field x field: the <grad_f, grad_fbar> pairing gives a scalar; the
  // xi-derivative part would be quadratic in f and is shed
  for (auto& [ka, pa] : A.field) {
    for (auto& [kb, pb] : B.field) {
      std::complex<double> pair = 0.0;
      if (ka.kind == Kind::FieldF && kb.kind == Kind::FieldFbar)
        pair = std::complex<double>(0, 1) * (pa.array() * pb.array()).sum();
      else if (ka.kind == Kind::FieldFbar && kb.kind == Kind::FieldF)
        pair = std::complex<double>(0, -1) * (pa.array() * pb.array()).sum();
      if (pair != 0.0)
        put_scalar(add_indices(ka.mu, kb.mu), add_indices(ka.nu, kb.nu), pair);

      for (int j = 0; j < A.n_modes; ++j) {
        long f = (long)ka.mu[j] * kb.nu[j] - (long)ka.nu[j] * kb.mu[j];
        if (f != 0) R.dropped += std::abs((double)f) * pa.norm() * pb.norm();
      }
    }
  }

  // <fbar, B f> against field monomials
  auto bquad_field = [&](std::complex<double> cH, const MonoKey& k,
                         const Eigen::VectorXcd& p, double side) {
    // side = +1 for {BQuad, mono}, -1 for {mono, BQuad}
    Eigen::VectorXcd bp(p.size());
    for (int i = 0; i < p.size(); ++i) bp[i] = S.mu_cont[i] * p[i];
    std::complex<double> w =
        (k.kind == Kind::FieldF ? std::complex<double>(0, -1)
                                : std::complex<double>(0, 1)) *
        side * cH;
    put_field(k.kind, k.mu, k.nu, w * bp);
  };
  for (auto& [ka, ca] : A.scalar) {
    if (ka.kind != Kind::BQuad) continue;
    for (auto& [kb, pb] : B.field) bquad_field(ca, kb, pb, +1.0);
  }
  for (auto& [kb, cb] : B.scalar) {
    if (kb.kind != Kind::BQuad) continue;
    for (auto& [ka, pa] : A.field) bquad_field(cb, ka, pa, -1.0);
  }

  R.prune(0.0);
  return R;
}

ModeCoords to_complex_coords(const SpectralData& S, const Eigen::VectorXd& u,
                             const Eigen::VectorXd& v) {
  Eigen::VectorXd uh = S.to_modal(u), vh = S.to_modal(v);
  ModeCoords c;
  c.xi.resize(S.n_bound);
  const double r2 = std::sqrt(2.0);
  for (int j = 0; j < S.n_bound; ++j) {
    double w = S.omega[j];
    c.xi[j] = std::complex<double>(uh[j] * std::sqrt(w), vh[j] / std::sqrt(w)) / r2;
  }
  c.f.resize(S.n_cont());
  for (int k = 0; k < S.n_cont(); ++k) {
    double mu = S.mu_cont[k];
    c.f[k] = std::complex<double>(uh[S.n_bound + k] * std::sqrt(mu),
                                  vh[S.n_bound + k] / std::sqrt(mu)) /
             r2;
  }
  return c;
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> from_complex_coords(
    const SpectralData& S, const ModeCoords& c) {
  Eigen::VectorXd uh(S.n()), vh(S.n());
  const double r2 = std::sqrt(2.0);
  for (int j = 0; j < S.n_bound; ++j) {
    double w = S.omega[j];
    uh[j] = r2 * c.xi[j].real() / std::sqrt(w);
    vh[j] = r2 * c.xi[j].imag() * std::sqrt(w);
  }
  for (int k = 0; k < S.n_cont(); ++k) {
    double mu = S.mu_cont[k];
    uh[S.n_bound + k] = r2 * c.f[k].real() / std::sqrt(mu);
    vh[S.n_bound + k] = r2 * c.f[k].imag() * std::sqrt(mu);
  }
  return {S.from_modal(uh), S.from_modal(vh)};
}

std::complex<double> evaluate_jet(const SpectralData& S,
                                  const FormalHamiltonian& H,
                                  const ModeCoords& c) {
  auto power = [&](const MultiIndex& mu, const Eigen::VectorXcd& z) {
    std::complex<double> p = 1.0;
    for (size_t j = 0; j < mu.size(); ++j)
      for (int e = 0; e < mu[j]; ++e) p *= z[j];
    return p;
  };
  std::complex<double> val = 0.0;
  Eigen::VectorXcd xib = c.xi.conjugate();
  for (auto& [k, cc] : H.scalar) {
    if (k.kind == Kind::BQuad) {
      std::complex<double> q = 0;
      for (int i = 0; i < c.f.size(); ++i)
        q += S.mu_cont[i] * std::norm(c.f[i]);
      val += cc * q;
      continue;
    }
    val += cc * power(k.mu, c.xi) * power(k.nu, xib);
  }
  for (auto& [k, p] : H.field) {
    std::complex<double> pairing =
        k.kind == Kind::FieldF ? (p.array() * c.f.array()).sum()
                               : (p.array() * c.f.conjugate().array()).sum();
    val += pairing * power(k.mu, c.xi) * power(k.nu, xib);
  }
  return val;
}

double interaction_energy(const SpectralData& S, const Nonlinearity& nl,
                          const ModeCoords& c) {
  // rebuild u from (xi, f) -- the velocity part does not enter
  auto [u, v] = from_complex_coords(S, c);
  Eigen::VectorXd bu(u.size());
  for (int i = 0; i < u.size(); ++i) bu[i] = nl.beta(u[i]);
  return integrate(S.grid, bu);
}

}  // namespace nlkg
