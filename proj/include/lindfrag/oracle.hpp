#pragma once

#include <string>
#include <vector>

#include "lindfrag/linalg.hpp"
#include "lindfrag/model.hpp"

namespace lindfrag {

// Full 4^N x 4^N generator matrix over the tilde Pauli basis, indexed
// lexicographically (I<X<Y<Z per site, site 0 most significant).
struct SuperoperatorMatrix {
  int n_qubits = 0;
  CMatrix matrix;
};

// Column-by-column assembly; threads > 1 parallelizes over columns (OpenMP),
// threads == 1 is the serial reference. N <= 5.
SuperoperatorMatrix build_superoperator(const TildeModel& model, int threads = 1);

// Superoperator of a single Hamiltonian commutator term / dissipator.
CMatrix term_superoperator_unitary(const TildeModel& model, std::size_t term_index);
CMatrix term_superoperator_dissipative(const TildeModel& model, std::size_t jump_index);

struct OracleCheck {
  std::string name;
  bool pass = false;
  double metric = 0.0;  // offending norm or deviation
};

struct OracleReport {
  std::vector<OracleCheck> checks;
  bool pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

// Permutes by fragment membership, measures the off-block Frobenius norm, and
// compares per-block spectra against the restricted generators.
OracleReport verify_fragmentation(const TildeModel& model, const SuperoperatorMatrix& super);

// Commutators of the per-site frozen projectors with every term superoperator;
// for multi-generator models also the coarse (I + Z) projector.
OracleReport verify_conservation(const TildeModel& model, const SuperoperatorMatrix& super);

}  // namespace lindfrag
