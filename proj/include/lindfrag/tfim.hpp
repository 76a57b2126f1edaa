#pragma once

#include <optional>
#include <vector>

#include "lindfrag/effective.hpp"
#include "lindfrag/linalg.hpp"

namespace lindfrag {

// Quasiparticle dispersion sqrt((J cos k + i kappa)^2 + (J sin k)^2) with the
// branch continued from the kappa = 0 limit (ties resolved toward Re >= 0).
cplx pbc_dispersion(cplx k, double J, double kappa);

struct Bogoliubov {
  cplx u, v;  // u^2 - v^2 = 1
};

// Throws std::domain_error at exceptional points (vanishing dispersion).
Bogoliubov bogoliubov(cplx k, double J, double kappa);

// Jordan-Wigner hopping/pairing blocks and the squared-spectrum matrix
// C = (A + B)(A - B) of the open chain.
CMatrix dense_a_matrix(const TfimSpec& spec);
CMatrix dense_b_matrix(const TfimSpec& spec);
CMatrix dense_c_matrix(const TfimSpec& spec);

struct TfimSolution {
  TfimSpec spec;
  std::vector<cplx> momenta;   // n_sites entries, Re k in [0, pi]
  std::vector<cplx> energies;  // branch-continued sqrt of lambda_k
  bool has_zero_mode = false;
  std::optional<cplx> zero_mode_momentum;  // finite-size secular root
  double max_residual = 0.0;               // worst relative secular residual
};

// Secular roots of the open chain for all three boundary-field cases; the
// momenta are cos^-1 of Chebyshev-basis companion (colleague) eigenvalues.
TfimSolution obc_spectrum(const TfimSpec& spec);

struct ZeroMode {
  cplx k_thermo;      // -pi/2 - i log(kappa/J)
  cplx k_finite;      // nearest secular root at the spec's size
  double abs_energy;  // |epsilon| of that root
};

// Requires zeta_l = zeta_r = 1; empty when kappa >= J.
std::optional<ZeroMode> zero_mode(const TfimSpec& spec);

struct TfimEigenvector {
  std::vector<cplx> psi, phi;  // unit-norm left eigenvectors of C and C^T-like partner
};

// Mode shapes u_j = (-1)^j c sin(k j), v_j = (-1)^j d sin(k (j - M - 2)) for
// the zeta_l = 1 branch; throws if k is not a secular root.
TfimEigenvector eigenvector(const TfimSpec& spec, cplx k_alpha);

// theta parameterizes J = cos(theta pi/2), kappa = sin(theta pi/2). Returns
// refined theta values where two eigenvalues of C coalesce while the
// eigenvector matrix becomes singular.
std::vector<double> exceptional_points(const TfimSpec& spec, const std::vector<double>& theta_grid,
                                       double gap_tol = 1e-6, double cond_threshold = 1e6);

}  // namespace lindfrag
