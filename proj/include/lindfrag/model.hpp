#pragma once

#include <string>
#include <vector>

#include "lindfrag/pauli.hpp"

namespace lindfrag {

struct HamiltonianTerm {
  double coeff;
  PauliString string;
};

struct JumpTerm {
  double rate;
  PauliString string;
};

enum class Basis { physical, tilde };

struct LindbladModel {
  int n_qubits = 0;
  std::vector<HamiltonianTerm> hamiltonian;
  std::vector<JumpTerm> jumps;
  Basis basis = Basis::physical;
};

struct ValidationReport {
  std::vector<std::string> errors;
  std::vector<std::string> warnings;
  bool ok() const { return errors.empty(); }
};

ValidationReport validate(const LindbladModel& model);

// Model rewritten in the stabilizer-generator basis: each Hamiltonian term is a
// product of single-site Z-tilde generators, jumps are single Pauli strings.
struct TildeModel {
  LindbladModel base;  // basis == tilde
  int n_generators = 0;
  // Generator sites need not be contiguous (the cluster chain pins them to the
  // bulk); free sites are the rest.
  std::vector<bool> is_generator_site;
  // Per Hamiltonian term, exponent bit per site (set only on generator sites).
  std::vector<std::vector<std::uint8_t>> term_exponents;
  // Converts physical-basis strings to the tilde basis.
  SymplecticMap map;
  // Inverse of map: tilde-basis strings back to physical.
  SymplecticMap to_physical;

  std::vector<int> generator_sites() const;
  std::vector<int> free_sites() const;
};

// Deterministic construction of the tilde basis; requires validate(model).ok().
TildeModel to_tilde(const LindbladModel& model);

// Reference chains: ZXZ Hamiltonian on n sites with uniform coupling J and
// either single-site Y jumps ("cluster_y") or next-nearest ZZ jumps
// ("cluster_ziz"), all at rate kappa.
LindbladModel builtin_model(const std::string& name, int n_qubits, double J = 1.0,
                            double kappa = 1.0);

// Parses the JSON model config (explicit term lists or {"builtin": {...}}).
LindbladModel model_from_json_text(const std::string& text);
LindbladModel model_from_file(const std::string& path);

}  // namespace lindfrag
