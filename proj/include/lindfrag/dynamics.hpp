#pragma once

#include <vector>

#include "lindfrag/effective.hpp"
#include "lindfrag/linalg.hpp"
#include "lindfrag/model.hpp"

namespace lindfrag {

enum class EchoRegime { oscillatory, overdamped, undetermined };

struct EchoSeries {
  std::vector<double> times;
  std::vector<cplx> values;         // normalized echo
  std::vector<double> norm_values;  // state norm before renormalization
  EchoRegime regime = EchoRegime::undetermined;
};

// 400 points over [0, 20/J].
std::vector<double> default_time_grid(double J);

// Unit vector at index 0 of dimension 2^n_sites.
std::vector<cplx> all_up_state(int n_sites);

// Propagates |O(t)> = exp(t gen) |O(0)> by eigendecomposition when the
// eigenvector condition number stays below 1e8, otherwise by stepped
// scaling-and-squaring exponentials with per-step renormalization.
EchoSeries evolve_echo(const CMatrix& gen, const std::vector<cplx>& initial,
                       const std::vector<double>& times);

EchoSeries evolve_echo(const EffectiveGenerator& gen, const std::vector<cplx>& initial,
                       const std::vector<double>& times);

// All-up echo under the sector-projected chain, via the generator
// -2i H_sector - 2 kappa (M + zeta_l + zeta_r - 1).
EchoSeries tfim_echo(const TfimSpec& spec, const std::vector<double>& times);

// Direction reversals of |echo| after the initial transient (first 10% of the
// grid), counted with relative prominence 1e-3.
int count_echo_extrema(const EchoSeries& series);

// The fragment member string whose per-jump stabilizer signs match the given
// computational-basis state; throws when the state is a superposition or no
// member satisfies the sign constraints.
PauliString operator_correspondence(const TildeModel& model, const Fragment& fragment,
                                    const std::vector<cplx>& state);

}  // namespace lindfrag
