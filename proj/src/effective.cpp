#include "lindfrag/effective.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace lindfrag {

namespace {

bool letters_anticommute(char a, char b) { return a != 'I' && b != 'I' && a != b; }

char label_letter(SiteLabel l) {
  switch (l) {
    case SiteLabel::Frozen_I:
    case SiteLabel::Free_I: return 'I';
    case SiteLabel::Frozen_Z:
    case SiteLabel::Free_Z: return 'Z';
    case SiteLabel::Free_X: return 'X';
    case SiteLabel::Free_Y: return 'Y';
    case SiteLabel::Active: return 'A';
  }
  return '?';
}

// Applies one pseudospin string to basis index `col`; returns the row and
// multiplies `amp` by the accumulated factor.
std::size_t apply_term(const std::string& ops, std::size_t col, cplx& amp) {
  const std::size_t n = ops.size();
  std::size_t row = col;
  for (std::size_t s = 0; s < n; ++s) {
    const std::size_t mask = std::size_t{1} << (n - 1 - s);
    const bool down = col & mask;
    switch (ops[s]) {
      case 'X': row ^= mask; break;
      case 'Y':
        row ^= mask;
        amp *= down ? cplx{0, -1} : cplx{0, 1};
        break;
      case 'Z':
        if (down) amp = -amp;
        break;
      default: break;
    }
  }
  return row;
}

void fill_column(const std::vector<PseudospinTerm>& terms, std::size_t col, CMatrix& m) {
  for (const auto& t : terms) {
    cplx amp = t.coeff;
    const std::size_t row = apply_term(t.ops, col, amp);
    m(row, col) += amp;
  }
}

}  // namespace

CMatrix materialize_terms(const std::vector<PseudospinTerm>& terms, std::size_t n_sites,
                          int threads) {
  const std::size_t dim = std::size_t{1} << n_sites;
  CMatrix m(dim, dim);
  if (threads > 1) {
#ifdef _OPENMP
#pragma omp parallel for num_threads(threads) schedule(static)
    for (long long col = 0; col < static_cast<long long>(dim); ++col)
      fill_column(terms, static_cast<std::size_t>(col), m);
#else
    for (std::size_t col = 0; col < dim; ++col) fill_column(terms, col, m);
#endif
  } else {
    for (std::size_t col = 0; col < dim; ++col) fill_column(terms, col, m);
  }
  return m;
}

EffectiveGenerator restrict_generator(const TildeModel& model, const Fragment& fragment,
                                      int dense_cap, int threads) {
  if (fragment.has_explicit_basis())
    throw std::invalid_argument("restrict_generator: label fragment required");
  if (!all_terms_single_generator(model))
    throw std::invalid_argument("restrict_generator: multi-generator terms not supported");
  const int n = model.base.n_qubits;
  if (static_cast<int>(fragment.labels.size()) != n)
    throw std::invalid_argument("restrict_generator: fragment/model mismatch");

  const auto& active = fragment.active_sites;
  const std::size_t k = active.size();
  std::vector<int> pos(n, -1);
  for (std::size_t i = 0; i < k; ++i) pos[active[i]] = static_cast<int>(i);

  EffectiveGenerator gen;
  gen.fragment = fragment;
  gen.dim = std::size_t{1} << k;

  for (std::size_t t = 0; t < model.base.hamiltonian.size(); ++t) {
    int site = -1;
    for (int s = 0; s < n; ++s)
      if (model.term_exponents[t][s]) site = s;
    if (site < 0 || pos[site] < 0) continue;  // frozen: commutator vanishes
    std::string ops(k, 'I');
    ops[pos[site]] = 'Y';
    gen.terms.push_back({cplx{0, -2.0 * model.base.hamiltonian[t].coeff}, ops});
  }

  for (const auto& jump : model.base.jumps) {
    double sign = 1.0;
    std::string ops(k, 'I');
    for (int s = 0; s < n; ++s) {
      const char f = jump.string.letter(s);
      if (f == 'I') continue;
      if (pos[s] >= 0) {
        if (f == 'X' || f == 'Y') ops[pos[s]] = 'Z';
        if (f == 'Y' || f == 'Z') sign = -sign;
      } else if (letters_anticommute(f, label_letter(fragment.labels[s]))) {
        sign = -sign;
      }
    }
    const double two_kappa = 2.0 * jump.rate;
    gen.terms.push_back({cplx{two_kappa * sign, 0}, ops});
    gen.terms.push_back({cplx{-two_kappa, 0}, std::string(k, 'I')});
  }

  if (static_cast<int>(k) <= dense_cap) gen.matrix = materialize_terms(gen.terms, k, threads);
  return gen;
}

EffectiveGenerator restrict_subsystem(const TildeModel& model, const Fragment& fragment,
                                      const FrustrationGraph& graph,
                                      const std::vector<int>& component, int dense_cap,
                                      int threads) {
  if (fragment.has_explicit_basis())
    throw std::invalid_argument("restrict_subsystem: label fragment required");
  const int n = model.base.n_qubits;

  std::vector<int> active;
  for (const int v : component)
    for (const int s : graph.vertices[v].support)
      if (fragment.labels[s] == SiteLabel::Active) active.push_back(s);
  std::sort(active.begin(), active.end());
  active.erase(std::unique(active.begin(), active.end()), active.end());
  const std::size_t k = active.size();
  std::vector<int> pos(n, -1);
  for (std::size_t i = 0; i < k; ++i) pos[active[i]] = static_cast<int>(i);

  EffectiveGenerator gen;
  gen.fragment = fragment;
  gen.fragment.active_sites = active;
  gen.dim = std::size_t{1} << k;

  for (const int v : component) {
    const auto& vert = graph.vertices[v];
    if (vert.kind == TermKind::unitary) {
      int site = -1;
      for (int s = 0; s < n; ++s)
        if (model.term_exponents[vert.term_id][s]) site = s;
      if (site < 0 || pos[site] < 0) continue;
      std::string ops(k, 'I');
      ops[pos[site]] = 'Y';
      gen.terms.push_back(
          {cplx{0, -2.0 * model.base.hamiltonian[vert.term_id].coeff}, ops});
    } else {
      const auto& jump = model.base.jumps[vert.term_id];
      double sign = 1.0;
      std::string ops(k, 'I');
      for (int s = 0; s < n; ++s) {
        const char f = jump.string.letter(s);
        if (f == 'I') continue;
        if (pos[s] >= 0) {
          if (f == 'X' || f == 'Y') ops[pos[s]] = 'Z';
          if (f == 'Y' || f == 'Z') sign = -sign;
        } else if (fragment.labels[s] == SiteLabel::Active) {
          // Active site outside this subsystem: the jump must act on it only
          // by a sign (otherwise the component would contain its vertex).
          if (f == 'Z') sign = -sign;
          if (f == 'X' || f == 'Y')
            throw std::invalid_argument("restrict_subsystem: component is not closed");
        } else if (letters_anticommute(f, label_letter(fragment.labels[s]))) {
          sign = -sign;
        }
      }
      const double two_kappa = 2.0 * jump.rate;
      gen.terms.push_back({cplx{two_kappa * sign, 0}, ops});
      gen.terms.push_back({cplx{-two_kappa, 0}, std::string(k, 'I')});
    }
  }

  if (static_cast<int>(k) <= dense_cap) gen.matrix = materialize_terms(gen.terms, k, threads);
  return gen;
}

YCoefficients y_coefficients(const EffectiveGenerator& gen, double kappa) {
  if (kappa <= 0) throw std::invalid_argument("y_coefficients: kappa must be positive");
  const std::size_t k = gen.fragment.active_sites.size();
  YCoefficients out;
  out.alpha.assign(k >= 2 ? k - 2 : 0, 0.0);
  out.beta.assign(k >= 1 ? k - 1 : 0, 0.0);
  out.gamma.assign(k, 0.0);
  for (const auto& t : gen.terms) {
    if (t.coeff.imag() != 0) continue;  // unitary part
    std::vector<std::size_t> supp;
    for (std::size_t s = 0; s < t.ops.size(); ++s)
      if (t.ops[s] == 'Z') supp.push_back(s);
    const double c = t.coeff.real() / (2.0 * kappa);
    switch (supp.size()) {
      case 0: out.constant += c; break;
      case 1: out.gamma[supp[0]] += c; break;
      case 2:
        if (supp[1] != supp[0] + 1)
          throw std::runtime_error("y_coefficients: non-adjacent two-site string");
        out.beta[supp[0]] += c;
        break;
      case 3:
        if (supp[1] != supp[0] + 1 || supp[2] != supp[1] + 1)
          throw std::runtime_error("y_coefficients: non-contiguous three-site string");
        out.alpha[supp[0]] += c;
        break;
      default: throw std::runtime_error("y_coefficients: string spans more than three sites");
    }
  }
  return out;
}

TfimSpec ziz_tfim(const TildeModel& model, const Fragment& fragment,
                  const FrustrationGraph& graph, const std::vector<int>& component) {
  std::vector<int> u_sites;
  std::vector<int> d_ids;
  for (const int v : component) {
    const auto& vert = graph.vertices[v];
    if (vert.kind == TermKind::unitary) {
      if (vert.support.size() != 1)
        throw std::invalid_argument("ziz_tfim: non-single-site commutator term");
      u_sites.push_back(vert.support[0]);
    } else {
      d_ids.push_back(v);
    }
  }
  std::sort(u_sites.begin(), u_sites.end());
  const int M = static_cast<int>(u_sites.size());
  if (M == 0) throw std::invalid_argument("ziz_tfim: no active commutator terms");
  for (int i = 0; i + 1 < M; ++i)
    if (u_sites[i + 1] != u_sites[i] + 2)
      throw std::invalid_argument("ziz_tfim: subsystem is not a sublattice path");

  TfimSpec spec;
  spec.n_sites = M + 1;
  spec.J = model.base.hamiltonian.front().coeff;
  spec.kappa = model.base.jumps.empty() ? 0.0 : model.base.jumps.front().rate;

  // Boundary dissipators: one active site at the subsystem edge, the other
  // support site frozen or free; its conjugation sign sets epsilon.
  auto boundary_sign = [&](int edge_site, int neighbor) -> int {
    for (const int v : d_ids) {
      const auto& vert = graph.vertices[v];
      if (vert.support.size() != 2) continue;
      const bool match = (vert.support[0] == neighbor && vert.support[1] == edge_site) ||
                         (vert.support[0] == edge_site && vert.support[1] == neighbor);
      if (!match) continue;
      const char f = model.base.jumps[vert.term_id].string.letter(neighbor);
      const char l = label_letter(fragment.labels[neighbor]);
      return letters_anticommute(f, l) ? -1 : 1;
    }
    return 0;  // no such dissipator: the field is absent
  };
  const int eps_l = boundary_sign(u_sites.front(), u_sites.front() - 2);
  const int eps_r = boundary_sign(u_sites.back(), u_sites.back() + 2);
  spec.zeta_l = eps_l != 0;
  spec.zeta_r = eps_r != 0;
  spec.sector = (spec.zeta_l && spec.zeta_r) ? eps_l * eps_r : +1;
  return spec;
}

CMatrix dense_tfim_sector(const TfimSpec& spec) {
  const int n = spec.n_sites;
  if (n > 20) throw std::invalid_argument("dense_tfim_sector: chain too long");
  const std::size_t full = std::size_t{1} << n;
  // Basis states of the requested parity sector, ascending.
  std::vector<std::size_t> states;
  for (std::size_t b = 0; b < full; ++b) {
    const int parity = (std::popcount(b) % 2 == 0) ? +1 : -1;
    if (parity == spec.sector) states.push_back(b);
  }
  std::vector<long long> index(full, -1);
  for (std::size_t i = 0; i < states.size(); ++i) index[states[i]] = static_cast<long long>(i);

  CMatrix h(states.size(), states.size());
  const cplx ik{0, spec.kappa};
  for (std::size_t col = 0; col < states.size(); ++col) {
    const std::size_t b = states[col];
    cplx diag = 0;
    for (int s = 0; s < n; ++s) {
      const bool down = b & (std::size_t{1} << (n - 1 - s));
      double zeta = 1.0;
      if (s == 0) zeta = spec.zeta_l;
      if (s == n - 1) zeta = spec.zeta_r;
      diag += ik * zeta * (down ? -1.0 : 1.0);
    }
    h(col, col) += diag;
    for (int s = 0; s + 1 < n; ++s) {
      const std::size_t flipped =
          b ^ (std::size_t{1} << (n - 1 - s)) ^ (std::size_t{1} << (n - 2 - s));
      h(static_cast<std::size_t>(index[flipped]), col) += spec.J;
    }
  }
  return h;
}

}  // namespace lindfrag
