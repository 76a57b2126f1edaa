#include "lindfrag/tfim.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace lindfrag {

namespace {

cplx lambda_of(cplx k, double J, double kappa) {
  const cplx mu{0, -kappa};
  return J * J + mu * mu - 2.0 * mu * J * std::cos(k);
}

// sin(k n) scaled by exp(-|Im k| n): overflow-free for strongly complex k.
cplx scaled_sin(cplx k, double n) {
  const double a = k.real(), b = k.imag();
  const double damp = std::exp(-2.0 * std::abs(b) * n);
  const double ch = 0.5 * (1.0 + damp);
  const double sh = (b >= 0 ? 0.5 : -0.5) * (1.0 - damp);
  return {std::sin(a * n) * ch, std::cos(a * n) * sh};
}

// Relative residual of f1 * s(n1) - f2 * s(n2) with common rescaling.
double sin_combo_residual(cplx k, double f1_n1, cplx c1, double f2_n2, cplx c2) {
  const double t = std::abs(k.imag());
  const double n_max = std::max(f1_n1, f2_n2);
  const cplx s1 = c1 * scaled_sin(k, f1_n1) * std::exp(-t * (n_max - f1_n1));
  const cplx s2 = c2 * scaled_sin(k, f2_n2) * std::exp(-t * (n_max - f2_n2));
  const double scale = std::max({std::abs(s1), std::abs(s2), 1e-300});
  return std::abs(s1 + s2) / scale;
}

double secular_residual(const TfimSpec& spec, cplx k) {
  const int M = spec.n_sites - 1;
  const cplx mu{0, -spec.kappa};
  const int n_fields = spec.zeta_l + spec.zeta_r;
  if (n_fields == 2)
    return sin_combo_residual(k, M + 2, mu / spec.J, M + 1, -1.0);
  const double lam_scale = spec.J * spec.J + spec.kappa * spec.kappa;
  const double trivial = std::abs(lambda_of(k, spec.J, spec.kappa)) / lam_scale;
  double other;
  if (n_fields == 1)
    other = std::abs(scaled_sin(k, M + 1));
  else
    other = sin_combo_residual(k, M + 1, 1.0, M, -mu / spec.J);
  return std::min(trivial, other);
}

// Roots of sum_j c_j U_j(x) via the colleague (Chebyshev-U companion) matrix.
std::vector<cplx> chebyshev_u_roots(const std::vector<cplx>& coeffs) {
  const std::size_t deg = coeffs.size() - 1;
  CMatrix t(deg, deg);
  for (std::size_t j = 0; j + 1 < deg; ++j) {
    t(j, j + 1) = 0.5;
    t(j + 1, j) = 0.5;
  }
  for (std::size_t j = 0; j < deg; ++j) t(deg - 1, j) -= 0.5 * coeffs[j] / coeffs[deg];
  return eigendecompose(t, false).values;
}

}  // namespace

cplx pbc_dispersion(cplx k, double J, double kappa) {
  const cplx cos_k = std::cos(k);
  auto f = [&](double s) { return cplx{J * J - s * s, 0} + cplx{0, 2 * J * s} * cos_k; };
  cplx val = std::abs(J);
  const int steps = 256;
  for (int i = 1; i <= steps; ++i) {
    const cplx w = std::sqrt(f(kappa * i / steps));
    const double dp = std::abs(w - val), dm = std::abs(-w - val);
    if (dp < dm)
      val = w;
    else if (dm < dp)
      val = -w;
    else
      val = (w.real() > 0 || (w.real() == 0 && w.imag() >= 0)) ? w : -w;
  }
  return val;
}

Bogoliubov bogoliubov(cplx k, double J, double kappa) {
  const cplx eps = pbc_dispersion(k, J, kappa);
  const cplx z = J * std::cos(k) + cplx{0, kappa};
  const cplx y = -J * std::sin(k);
  const double scale = std::abs(J) + std::abs(kappa);
  const cplx den2 = 2.0 * eps * (eps + z);
  if (std::abs(eps) < 1e-6 * scale || std::abs(den2) < 1e-12 * scale * scale)
    throw std::domain_error("bogoliubov: exceptional point, dispersion vanishes");
  const cplx den = std::sqrt(den2);
  return {(eps + z) / den, cplx{0, 1} * y / den};
}

CMatrix dense_a_matrix(const TfimSpec& spec) {
  const int n = spec.n_sites;
  const cplx mu{0, -spec.kappa};
  CMatrix a(n, n);
  for (int i = 0; i < n; ++i) a(i, i) = mu;
  a(0, 0) = mu * static_cast<double>(spec.zeta_l);
  a(n - 1, n - 1) = mu * static_cast<double>(spec.zeta_r);
  for (int i = 0; i + 1 < n; ++i) a(i, i + 1) = a(i + 1, i) = spec.J / 2;
  return a;
}

CMatrix dense_b_matrix(const TfimSpec& spec) {
  const int n = spec.n_sites;
  CMatrix b(n, n);
  for (int i = 0; i + 1 < n; ++i) {
    b(i, i + 1) = spec.J / 2;
    b(i + 1, i) = -spec.J / 2;
  }
  return b;
}

CMatrix dense_c_matrix(const TfimSpec& spec) {
  const CMatrix a = dense_a_matrix(spec);
  const CMatrix b = dense_b_matrix(spec);
  CMatrix sum = a;
  sum += b;
  CMatrix diff = a;
  diff -= b;
  return sum * diff;
}

TfimSolution obc_spectrum(const TfimSpec& spec) {
  const int M = spec.n_sites - 1;
  if (M < 1) throw std::invalid_argument("obc_spectrum: need at least two sites");
  const double J = spec.J, kappa = spec.kappa;
  const cplx mu{0, -kappa};
  const int n_fields = spec.zeta_l + spec.zeta_r;

  TfimSolution sol;
  sol.spec = spec;
  const double pi = std::numbers::pi;

  std::vector<cplx> roots;  // nontrivial momenta
  if (n_fields == 1) {
    for (int alpha = 1; alpha <= M; ++alpha) roots.push_back(pi * alpha / (M + 1));
  } else {
    std::vector<cplx> coeffs;
    if (n_fields == 2) {
      // (mu/J) U_{M+1} - U_M
      coeffs.assign(M + 2, 0.0);
      coeffs[M + 1] = mu / J;
      coeffs[M] = -1.0;
    } else {
      // U_M - (mu/J) U_{M-1}
      coeffs.assign(M + 1, 0.0);
      coeffs[M] = 1.0;
      coeffs[M - 1] = -mu / J;
    }
    for (const cplx x : chebyshev_u_roots(coeffs)) roots.push_back(std::acos(x));
  }

  for (const cplx k : roots) {
    sol.momenta.push_back(k);
    sol.energies.push_back(pbc_dispersion(k, J, kappa));
    sol.max_residual = std::max(sol.max_residual, secular_residual(spec, k));
  }
  if (n_fields != 2) {
    sol.momenta.push_back(std::acos((J * J + mu * mu) / (2.0 * mu * J)));
    sol.energies.push_back(0.0);
  }

  std::vector<std::size_t> order(sol.momenta.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const cplx ka = sol.momenta[a], kb = sol.momenta[b];
    if (ka.real() != kb.real()) return ka.real() < kb.real();
    return ka.imag() < kb.imag();
  });
  std::vector<cplx> mk, en;
  for (const std::size_t i : order) {
    mk.push_back(sol.momenta[i]);
    en.push_back(sol.energies[i]);
  }
  sol.momenta = std::move(mk);
  sol.energies = std::move(en);

  if (n_fields == 2 && kappa < J) {
    sol.has_zero_mode = true;
    const cplx k_zm{-pi / 2, -std::log(kappa / J)};
    double best = 1e300;
    for (const cplx k : sol.momenta) {
      const double d = std::min(std::abs(k - k_zm), std::abs(k + k_zm));
      if (d < best) {
        best = d;
        sol.zero_mode_momentum = k;
      }
    }
  }
  return sol;
}

std::optional<ZeroMode> zero_mode(const TfimSpec& spec) {
  if (spec.zeta_l != 1 || spec.zeta_r != 1)
    throw std::invalid_argument("zero_mode: requires both boundary fields");
  if (spec.kappa >= spec.J) return std::nullopt;
  ZeroMode zm;
  zm.k_thermo = cplx{-std::numbers::pi / 2, -std::log(spec.kappa / spec.J)};
  const auto sol = obc_spectrum(spec);
  zm.k_finite = *sol.zero_mode_momentum;
  // |lambda_zm| through det C = mu^(2M+2): stays accurate far below the
  // cancellation floor of evaluating lambda(k) directly.
  const int M = spec.n_sites - 1;
  double log_others = 0;
  bool skipped = false;
  for (const cplx k : sol.momenta) {
    if (!skipped && k == zm.k_finite) {
      skipped = true;
      continue;
    }
    log_others += std::log(std::abs(lambda_of(k, spec.J, spec.kappa)));
  }
  zm.abs_energy = std::exp(0.5 * ((2 * M + 2) * std::log(spec.kappa) - log_others));
  return zm;
}

TfimEigenvector eigenvector(const TfimSpec& spec, cplx k_alpha) {
  if (spec.zeta_l != 1) throw std::invalid_argument("eigenvector: left boundary field required");
  if (secular_residual(spec, k_alpha) > 1e-6)
    throw std::invalid_argument("eigenvector: momentum is not a secular root");
  const int n = spec.n_sites;
  TfimEigenvector vec;
  auto normalized = [](std::vector<cplx> v) {
    double nrm = 0;
    for (const cplx& x : v) nrm += std::norm(x);
    nrm = std::sqrt(nrm);
    for (cplx& x : v) x /= nrm;
    return v;
  };
  std::vector<cplx> psi(n), phi(n);
  for (int j = 1; j <= n; ++j) {
    const double sgn = j % 2 == 0 ? 1.0 : -1.0;
    psi[j - 1] = sgn * std::sin(k_alpha * static_cast<double>(j));
    phi[j - 1] = sgn * std::sin(k_alpha * static_cast<double>(j - n - 1));
  }
  vec.psi = normalized(std::move(psi));
  vec.phi = normalized(std::move(phi));
  return vec;
}

std::vector<double> exceptional_points(const TfimSpec& spec, const std::vector<double>& theta_grid,
                                       double gap_tol, double cond_threshold) {
  auto at_theta = [&](double theta) {
    TfimSpec s = spec;
    s.J = std::cos(theta * std::numbers::pi / 2);
    s.kappa = std::sin(theta * std::numbers::pi / 2);
    return dense_c_matrix(s);
  };
  auto gap_of = [&](double theta, double* scale_out = nullptr, double* cond_out = nullptr) {
    const CMatrix c = at_theta(theta);
    const auto es = eigendecompose(c, cond_out != nullptr);
    double scale = 0;
    for (const cplx v : es.values) scale = std::max(scale, std::abs(v));
    scale = std::max(scale, 1e-12);
    double gap = 1e300;
    for (std::size_t i = 0; i < es.values.size(); ++i)
      for (std::size_t j = i + 1; j < es.values.size(); ++j)
        gap = std::min(gap, std::abs(es.values[i] - es.values[j]));
    if (scale_out) *scale_out = scale;
    if (cond_out) *cond_out = condition_number(es.right_vectors);
    return gap;
  };

  std::vector<double> gaps(theta_grid.size());
  for (std::size_t i = 0; i < theta_grid.size(); ++i) gaps[i] = gap_of(theta_grid[i]);

  std::vector<double> found;
  const double golden = (std::sqrt(5.0) - 1) / 2;
  for (std::size_t i = 1; i + 1 < theta_grid.size(); ++i) {
    if (!(gaps[i] < gaps[i - 1] && gaps[i] <= gaps[i + 1])) continue;
    double lo = theta_grid[i - 1], hi = theta_grid[i + 1];
    double x1 = hi - golden * (hi - lo), x2 = lo + golden * (hi - lo);
    double f1 = gap_of(x1), f2 = gap_of(x2);
    for (int it = 0; it < 60 && hi - lo > 1e-12; ++it) {
      if (f1 < f2) {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - golden * (hi - lo);
        f1 = gap_of(x1);
      } else {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + golden * (hi - lo);
        f2 = gap_of(x2);
      }
    }
    const double theta_star = (lo + hi) / 2;
    double scale = 0, cond = 0;
    const double gap = gap_of(theta_star, &scale, &cond);
    if (gap < gap_tol * scale && cond > cond_threshold) found.push_back(theta_star);
  }
  std::sort(found.begin(), found.end());
  return found;
}

}  // namespace lindfrag
