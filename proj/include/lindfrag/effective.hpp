#pragma once

#include <complex>
#include <string>
#include <vector>

#include "lindfrag/fragments.hpp"
#include "lindfrag/frustration.hpp"
#include "lindfrag/linalg.hpp"
#include "lindfrag/model.hpp"

namespace lindfrag {

// One pseudospin operator string over the active sites (chars I, X, Y, Z),
// ascending physical site order, with a complex prefactor.
struct PseudospinTerm {
  cplx coeff;
  std::string ops;
};

// Restriction of the Lindbladian to one fragment, written over pseudospins
// (X-tilde = up, Y-tilde = down).
struct EffectiveGenerator {
  Fragment fragment;
  std::size_t dim = 1;
  std::vector<PseudospinTerm> terms;
  CMatrix matrix;  // dense; empty when the fragment exceeds the dense cap
  bool has_matrix() const { return matrix.rows() == dim; }
};

// Renders a pseudospin term list as a dense matrix (index 0 = all-up, first
// listed site on the most significant bit). threads > 1 parallelizes over
// columns with OpenMP; the serial path is the reference implementation.
CMatrix materialize_terms(const std::vector<PseudospinTerm>& terms, std::size_t n_sites,
                          int threads = 1);

// Builds the per-fragment generator. Labels are required (single-generator
// Hamiltonian terms); the dense matrix is filled only for k <= dense_cap.
EffectiveGenerator restrict_generator(const TildeModel& model, const Fragment& fragment,
                                      int dense_cap = 14, int threads = 1);

// Restriction to one blockade-separated subsystem: only the graph component's
// vertices act, over the active sites appearing in that component.
EffectiveGenerator restrict_subsystem(const TildeModel& model, const Fragment& fragment,
                                      const FrustrationGraph& graph,
                                      const std::vector<int>& component, int dense_cap = 14,
                                      int threads = 1);

// Coefficients of the sigma-z strings in the Y-jump effective generator:
// alpha[i] spans sites (i,i+1,i+2), beta[i] spans (i,i+1), gamma[i] site i.
struct YCoefficients {
  std::vector<double> alpha, beta, gamma;
  double constant = 0;  // total identity coefficient over 2*kappa
};

YCoefficients y_coefficients(const EffectiveGenerator& gen, double kappa);

// Non-Hermitian transverse-field Ising chain data extracted from one ZIZ
// subsystem: M+1 sites, boundary-field flags and the parity sector.
struct TfimSpec {
  int n_sites = 0;  // M + 1
  double J = 1.0;
  double kappa = 0.0;
  int zeta_l = 1, zeta_r = 1;
  int sector = +1;
};

TfimSpec ziz_tfim(const TildeModel& model, const Fragment& fragment,
                  const FrustrationGraph& graph, const std::vector<int>& component);

// Dense sector-projected Ising chain J sum XX + i kappa sum Z (+ boundary
// zeta terms), restricted to the parity sector of the spec.
CMatrix dense_tfim_sector(const TfimSpec& spec);

}  // namespace lindfrag
