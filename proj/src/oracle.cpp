#include "lindfrag/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include "lindfrag/effective.hpp"
#include "lindfrag/fragments.hpp"

namespace lindfrag {

namespace {

PauliString basis_string(int n, std::uint64_t index) {
  static const char letters[] = "IXYZ";
  PauliString p(n);
  for (int s = n - 1; s >= 0; --s) {
    p.set_letter(s, letters[index % 4]);
    index /= 4;
  }
  return p.canonical();
}

const cplx iexp[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

void fill_super_column(const TildeModel& model, std::uint64_t col, CMatrix& m) {
  const int n = model.base.n_qubits;
  const PauliString M = basis_string(n, col);
  for (const auto& t : model.base.hamiltonian) {
    if (!anticommutes(t.string, M)) continue;
    const PauliString p = multiply(t.string, M);
    // -i J [h, M] = -i J * 2 h M for anticommuting strings.
    m(p.lex_key(), col) += cplx{0, -2.0 * t.coeff} * iexp[p.sign_exp()];
  }
  for (const auto& j : model.base.jumps)
    if (anticommutes(j.string, M)) m(col, col) += cplx{-4.0 * j.rate, 0};
}

double multiset_distance(std::vector<cplx> a, std::vector<cplx> b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  double worst = 0;
  for (const auto& x : a) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_j = 0;
    for (std::size_t j = 0; j < b.size(); ++j) {
      const double d = std::abs(x - b[j]);
      if (d < best) {
        best = d;
        best_j = j;
      }
    }
    worst = std::max(worst, best);
    b.erase(b.begin() + best_j);
  }
  return worst;
}

}  // namespace

SuperoperatorMatrix build_superoperator(const TildeModel& model, int threads) {
  const int n = model.base.n_qubits;
  if (n > 5) throw std::invalid_argument("build_superoperator: n_qubits > 5");
  const std::uint64_t dim = std::uint64_t{1} << (2 * n);
  SuperoperatorMatrix s;
  s.n_qubits = n;
  s.matrix = CMatrix(dim, dim);
  if (threads > 1) {
#ifdef _OPENMP
#pragma omp parallel for num_threads(threads) schedule(static)
#endif
    for (long long col = 0; col < static_cast<long long>(dim); ++col)
      fill_super_column(model, static_cast<std::uint64_t>(col), s.matrix);
  } else {
    for (std::uint64_t col = 0; col < dim; ++col) fill_super_column(model, col, s.matrix);
  }
  return s;
}

CMatrix term_superoperator_unitary(const TildeModel& model, std::size_t term_index) {
  const int n = model.base.n_qubits;
  const std::uint64_t dim = std::uint64_t{1} << (2 * n);
  CMatrix m(dim, dim);
  const auto& t = model.base.hamiltonian.at(term_index);
  for (std::uint64_t col = 0; col < dim; ++col) {
    const PauliString M = basis_string(n, col);
    if (!anticommutes(t.string, M)) continue;
    const PauliString p = multiply(t.string, M);
    m(p.lex_key(), col) += cplx{0, -2.0 * t.coeff} * iexp[p.sign_exp()];
  }
  return m;
}

CMatrix term_superoperator_dissipative(const TildeModel& model, std::size_t jump_index) {
  const int n = model.base.n_qubits;
  const std::uint64_t dim = std::uint64_t{1} << (2 * n);
  CMatrix m(dim, dim);
  const auto& j = model.base.jumps.at(jump_index);
  for (std::uint64_t col = 0; col < dim; ++col)
    if (anticommutes(j.string, basis_string(n, col))) m(col, col) = cplx{-4.0 * j.rate, 0};
  return m;
}

OracleReport verify_fragmentation(const TildeModel& model, const SuperoperatorMatrix& super) {
  const int n = super.n_qubits;
  const std::uint64_t dim = std::uint64_t{1} << (2 * n);
  OracleReport rep;

  // Group basis indices by fragment.
  std::map<std::string, std::vector<std::uint64_t>> groups;
  const bool labeled = all_terms_single_generator(model);
  for (std::uint64_t i = 0; i < dim; ++i) {
    const auto seed = basis_string(n, i);
    const auto frag = fragment_of(model, seed);
    std::string key;
    if (labeled)
      key = frag.label_string();
    else
      key = std::to_string(frag.basis.front().lex_key());
    groups[key].push_back(i);
  }

  std::vector<std::string> group_of(dim);
  for (const auto& [key, members] : groups)
    for (const auto i : members) group_of[i] = key;
  double off_block = 0;
  for (std::uint64_t c = 0; c < dim; ++c)
    for (std::uint64_t r = 0; r < dim; ++r)
      if (group_of[r] != group_of[c]) off_block += std::norm(super.matrix(r, c));
  off_block = std::sqrt(off_block);
  rep.checks.push_back({"off_block_frobenius", off_block < 1e-12, off_block});

  double worst_spec = 0;
  for (const auto& [key, members] : groups) {
    CMatrix block(members.size(), members.size());
    for (std::size_t c = 0; c < members.size(); ++c)
      for (std::size_t r = 0; r < members.size(); ++r)
        block(r, c) = super.matrix(members[r], members[c]);
    const auto block_eigs = eigendecompose(block, false).values;
    std::vector<cplx> reference;
    if (labeled) {
      const auto frag = fragment_of(model, basis_string(n, members.front()));
      const auto gen = restrict_generator(model, frag);
      reference = eigendecompose(gen.matrix, false).values;
    } else {
      reference = block_eigs;
    }
    worst_spec = std::max(worst_spec, multiset_distance(block_eigs, reference));
  }
  rep.checks.push_back({"block_spectra_vs_restrict", worst_spec < 1e-10, worst_spec});
  return rep;
}

OracleReport verify_conservation(const TildeModel& model, const SuperoperatorMatrix& super) {
  const int n = super.n_qubits;
  const std::uint64_t dim = std::uint64_t{1} << (2 * n);
  OracleReport rep;

  std::vector<CMatrix> term_mats;
  for (std::size_t t = 0; t < model.base.hamiltonian.size(); ++t)
    term_mats.push_back(term_superoperator_unitary(model, t));
  for (std::size_t j = 0; j < model.base.jumps.size(); ++j)
    term_mats.push_back(term_superoperator_dissipative(model, j));

  auto projector_commutator_norm = [&](const std::vector<double>& diag) {
    double worst = 0;
    for (const auto& a : term_mats) {
      double nrm = 0;
      for (std::uint64_t c = 0; c < dim; ++c)
        for (std::uint64_t r = 0; r < dim; ++r)
          nrm += std::norm((diag[r] - diag[c]) * a(r, c));
      worst = std::max(worst, std::sqrt(nrm));
    }
    return worst;
  };

  const bool labeled = all_terms_single_generator(model);
  for (int s = 0; s < n; ++s) {
    if (!model.is_generator_site[s]) continue;
    std::vector<double> p_i(dim), p_z(dim), p_coarse(dim);
    for (std::uint64_t i = 0; i < dim; ++i) {
      const char c = basis_string(n, i).letter(s);
      p_i[i] = c == 'I';
      p_z[i] = c == 'Z';
      p_coarse[i] = p_i[i] + p_z[i];
    }
    const double ni = projector_commutator_norm(p_i);
    const double nz = projector_commutator_norm(p_z);
    rep.checks.push_back(
        {"fine_projector_I_site_" + std::to_string(s), labeled ? ni < 1e-12 : true, ni});
    rep.checks.push_back(
        {"fine_projector_Z_site_" + std::to_string(s), labeled ? nz < 1e-12 : true, nz});
    if (!labeled) {
      // Fine conservation is an empirical datum for multi-generator models
      // (metrics above are reported but not required); the coarse projector
      // must still commute.
      const double nc = projector_commutator_norm(p_coarse);
      rep.checks.push_back({"coarse_projector_site_" + std::to_string(s), nc < 1e-12, nc});
    }
  }
  return rep;
}

}  // namespace lindfrag
