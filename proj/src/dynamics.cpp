#include "lindfrag/dynamics.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <utility>

namespace lindfrag {

namespace {

char label_letter(SiteLabel label) {
  switch (label) {
    case SiteLabel::Frozen_I:
    case SiteLabel::Free_I:
      return 'I';
    case SiteLabel::Frozen_Z:
    case SiteLabel::Free_Z:
      return 'Z';
    case SiteLabel::Free_X:
      return 'X';
    case SiteLabel::Free_Y:
      return 'Y';
    default:
      return '?';
  }
}

bool letters_anticommute(char a, char b) { return a != 'I' && b != 'I' && a != b; }

}  // namespace

std::vector<double> default_time_grid(double J) {
  std::vector<double> times(400);
  for (int i = 0; i < 400; ++i) times[i] = 20.0 / J * i / 399.0;
  return times;
}

std::vector<cplx> all_up_state(int n_sites) {
  if (n_sites < 1) throw std::invalid_argument("all_up_state: need at least one site");
  std::vector<cplx> v(std::size_t{1} << n_sites);
  v[0] = 1.0;
  return v;
}

EchoSeries evolve_echo(const CMatrix& gen, const std::vector<cplx>& initial,
                       const std::vector<double>& times) {
  const std::size_t dim = gen.rows();
  if (gen.cols() != dim || initial.size() != dim)
    throw std::invalid_argument("evolve_echo: dimension mismatch");
  if (times.empty()) throw std::invalid_argument("evolve_echo: empty time grid");
  for (std::size_t i = 1; i < times.size(); ++i)
    if (times[i] <= times[i - 1])
      throw std::invalid_argument("evolve_echo: times must increase strictly");

  std::vector<cplx> o0 = initial;
  double n0 = 0;
  for (const cplx x : o0) n0 += std::norm(x);
  n0 = std::sqrt(n0);
  if (n0 == 0) throw std::invalid_argument("evolve_echo: zero initial state");
  for (cplx& x : o0) x /= n0;

  EchoSeries series;
  series.times = times;

  auto overlap = [&](const std::vector<cplx>& v) {
    cplx s = 0;
    for (std::size_t i = 0; i < dim; ++i) s += std::conj(o0[i]) * v[i];
    return s;
  };

  const auto es = eigendecompose(gen, true);
  const double cond = condition_number(es.right_vectors);
  if (std::isfinite(cond) && cond < 1e8) {
    CMatrix rhs(dim, 1);
    for (std::size_t i = 0; i < dim; ++i) rhs(i, 0) = o0[i];
    solve_linear(es.right_vectors, rhs);
    std::vector<cplx> coeffs(dim);
    for (std::size_t i = 0; i < dim; ++i) coeffs[i] = rhs(i, 0);
    for (const double t : times) {
      std::vector<cplx> amps(dim);
      for (std::size_t i = 0; i < dim; ++i) amps[i] = coeffs[i] * std::exp(es.values[i] * t);
      std::vector<cplx> o(dim, 0.0);
      for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t r = 0; r < dim; ++r) o[r] += es.right_vectors(r, i) * amps[i];
      double nrm = 0;
      for (const cplx x : o) nrm += std::norm(x);
      nrm = std::sqrt(nrm);
      if (!std::isfinite(nrm) || nrm == 0)
        throw std::runtime_error("evolve_echo: non-finite propagation");
      series.values.push_back(overlap(o) / nrm);
      series.norm_values.push_back(nrm);
    }
  } else {
    std::vector<cplx> v = o0;
    double log_norm = 0, prev_t = times.front(), cached_dt = -1;
    CMatrix prop;
    if (times.front() != 0.0) prev_t = 0.0;
    for (const double t : times) {
      const double dt = t - prev_t;
      if (dt > 0) {
        if (dt != cached_dt) {
          CMatrix scaled = gen;
          scaled *= cplx{dt, 0};
          prop = expm(scaled);
          cached_dt = dt;
        }
        v = mat_vec(prop, v);
        double nrm = 0;
        for (const cplx x : v) nrm += std::norm(x);
        nrm = std::sqrt(nrm);
        if (!std::isfinite(nrm) || nrm == 0)
          throw std::runtime_error("evolve_echo: non-finite propagation");
        for (cplx& x : v) x /= nrm;
        log_norm += std::log(nrm);
      }
      prev_t = t;
      series.values.push_back(overlap(v));
      series.norm_values.push_back(std::exp(log_norm));
    }
  }

  const int extrema = count_echo_extrema(series);
  if (extrema >= 2)
    series.regime = EchoRegime::oscillatory;
  else if (extrema == 0)
    series.regime = EchoRegime::overdamped;
  else
    series.regime = EchoRegime::undetermined;
  return series;
}

EchoSeries evolve_echo(const EffectiveGenerator& gen, const std::vector<cplx>& initial,
                       const std::vector<double>& times) {
  if (!gen.has_matrix()) throw std::invalid_argument("evolve_echo: generator has no dense matrix");
  return evolve_echo(gen.matrix, initial, times);
}

EchoSeries tfim_echo(const TfimSpec& spec, const std::vector<double>& times) {
  if (spec.sector != 1)
    throw std::invalid_argument("tfim_echo: all-up state lives in the +1 parity sector");
  const CMatrix h = dense_tfim_sector(spec);
  CMatrix gen = h;
  gen *= cplx{0, -2};
  const double shift = 2.0 * spec.kappa * (spec.n_sites - 1 + spec.zeta_l + spec.zeta_r - 1);
  for (std::size_t i = 0; i < gen.rows(); ++i) gen(i, i) -= shift;
  std::vector<cplx> initial(gen.rows(), 0.0);
  initial[0] = 1.0;  // all-up is the first even-parity basis state
  return evolve_echo(gen, initial, times);
}

int count_echo_extrema(const EchoSeries& series) {
  std::vector<double> e;
  const std::size_t start = series.times.size() / 10;
  for (std::size_t i = start; i < series.values.size(); ++i)
    e.push_back(std::abs(series.values[i]));
  if (e.size() < 3) return 0;
  double peak = 0;
  for (const double x : e) peak = std::max(peak, x);
  const double prom = 1e-3 * peak;

  int count = 0, dir = 0;
  double ref = e.front();
  for (const double x : e) {
    if (dir == 0) {
      if (x > ref + prom)
        dir = 1;
      else if (x < ref - prom)
        dir = -1;
      if (dir != 0) ref = x;
    } else if (dir == 1) {
      if (x > ref) {
        ref = x;
      } else if (x < ref - prom) {
        ++count;  // passed a maximum
        dir = -1;
        ref = x;
      }
    } else {
      if (x < ref) {
        ref = x;
      } else if (x > ref + prom) {
        ++count;  // passed a minimum
        dir = 1;
        ref = x;
      }
    }
  }
  return count;
}

PauliString operator_correspondence(const TildeModel& model, const Fragment& fragment,
                                    const std::vector<cplx>& state) {
  if (fragment.labels.empty())
    throw std::invalid_argument("operator_correspondence: fragment has no site labels");
  const std::size_t k = fragment.active_sites.size();
  if (state.size() != (std::size_t{1} << k))
    throw std::invalid_argument("operator_correspondence: state dimension mismatch");

  std::size_t index = state.size();
  for (std::size_t i = 0; i < state.size(); ++i) {
    if (std::abs(state[i]) < 1e-12) continue;
    if (index != state.size() || std::abs(std::abs(state[i]) - 1.0) > 1e-9)
      throw std::invalid_argument("operator_correspondence: state is a superposition");
    index = i;
  }
  if (index == state.size())
    throw std::invalid_argument("operator_correspondence: zero state");

  std::vector<int> pos_of(model.base.n_qubits, -1);
  for (std::size_t p = 0; p < k; ++p) pos_of[fragment.active_sites[p]] = static_cast<int>(p);
  auto z_bit = [&](std::size_t p) { return (index >> (k - 1 - p)) & 1; };

  // One parity constraint per jump touching the active region:
  // sum of y bits over its X/Y active support = base parity xor state bits.
  std::vector<std::pair<std::uint64_t, int>> rows;
  for (const auto& jump : model.base.jumps) {
    std::uint64_t mask = 0;
    int rhs = 0;
    for (int s = 0; s < model.base.n_qubits; ++s) {
      const char f = jump.string.letter(s);
      if (f == 'I') continue;
      const int p = pos_of[s];
      if (p < 0) {
        rhs ^= letters_anticommute(f, label_letter(fragment.labels[s]));
      } else {
        if (f == 'Z') {
          rhs ^= 1;
        } else {
          mask |= std::uint64_t{1} << p;
          if (f == 'Y') rhs ^= 1;
          rhs ^= static_cast<int>(z_bit(p));
        }
      }
    }
    if (mask != 0) rows.push_back({mask, rhs});
  }

  // GF(2) elimination, free variables set to zero.
  std::vector<int> y(k, 0);
  std::vector<std::pair<std::uint64_t, int>> echelon;
  for (auto [mask, rhs] : rows) {
    for (const auto& [em, er] : echelon) {
      const int pivot = std::countr_zero(em);
      if (mask >> pivot & 1) {
        mask ^= em;
        rhs ^= er;
      }
    }
    if (mask == 0) {
      if (rhs != 0)
        throw std::invalid_argument("operator_correspondence: state not expressible");
      continue;
    }
    echelon.push_back({mask, rhs});
  }
  std::sort(echelon.begin(), echelon.end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });
  for (auto it = echelon.rbegin(); it != echelon.rend(); ++it) {
    const int pivot = std::countr_zero(it->first);
    int val = it->second;
    for (int p = pivot + 1; p < static_cast<int>(k); ++p)
      if (it->first >> p & 1) val ^= y[p];
    y[pivot] = val;
  }

  PauliString result(model.base.n_qubits);
  for (int s = 0; s < model.base.n_qubits; ++s) {
    const int p = pos_of[s];
    if (p < 0)
      result.set_letter(s, label_letter(fragment.labels[s]));
    else
      result.set_letter(s, y[p] ? 'Y' : 'X');
  }
  return result.canonical();
}

}  // namespace lindfrag
