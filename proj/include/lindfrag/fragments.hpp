#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "lindfrag/model.hpp"
#include "lindfrag/pauli.hpp"

namespace lindfrag {

enum class SiteLabel : std::uint8_t {
  Frozen_I,
  Frozen_Z,
  Active,
  Free_I,
  Free_X,
  Free_Y,
  Free_Z
};

char site_label_char(SiteLabel l);

// Invariant operator subspace, labeled by its per-site pattern. When the label
// rules do not apply (multi-generator Hamiltonian terms) the explicit basis
// list is stored instead and `labels` stays empty.
struct Fragment {
  std::vector<SiteLabel> labels;
  std::vector<int> active_sites;
  std::uint64_t dim = 0;
  std::vector<PauliString> basis;  // reachability path only

  bool has_explicit_basis() const { return !basis.empty(); }
  std::string label_string() const;
};

// True when every Hamiltonian term maps to a single generator, enabling the
// label-based fast path.
bool all_terms_single_generator(const TildeModel& model);

Fragment fragment_of(const TildeModel& model, const PauliString& seed);

bool fragment_contains(const Fragment& frag, const PauliString& tilde_string);

// Expands a labeled fragment into its tilde-basis member strings (ascending
// lexicographic order, I<X<Y<Z).
std::vector<PauliString> fragment_members(const TildeModel& model, const Fragment& frag);

// Lazy lexicographic enumeration of all 3^M 4^(N-M) fragments.
class FragmentEnumerator {
 public:
  explicit FragmentEnumerator(const TildeModel& model);
  // Fills `out` and advances; returns false when exhausted.
  bool next(Fragment& out);

 private:
  const TildeModel* model_;
  std::vector<int> state_;
  bool done_ = false;
};

// k -> number of fragments of dimension 2^k.
std::map<int, std::uint64_t> count_by_size(const TildeModel& model);

std::uint64_t total_fragment_count(const TildeModel& model);

}  // namespace lindfrag
