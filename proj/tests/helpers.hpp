#pragma once

#include <random>

#include "lindfrag/pauli.hpp"

namespace lindfrag::testing {

inline PauliString random_string(int n, std::mt19937_64& rng) {
  PauliString p(n);
  static const char letters[] = "IXYZ";
  for (int s = 0; s < n; ++s) p.set_letter(s, letters[rng() % 4]);
  p.set_phase_exp(static_cast<int>(rng() % 4));
  return p;
}

// Random valid basis map from elementary symplectic moves; images stay
// Hermitian involutions.
inline SymplecticMap random_map(int n, std::mt19937_64& rng) {
  SymplecticMap m = SymplecticMap::identity(n);
  for (int step = 0; step < 30; ++step) {
    const int i = static_cast<int>(rng() % n);
    switch (rng() % 4) {
      case 0: std::swap(m.image_x[i], m.image_z[i]); break;
      case 1: m.image_x[i] = multiply(m.image_x[i], m.image_z[i]).canonical(); break;
      case 2: {
        const int j = static_cast<int>(rng() % n);
        if (j == i) break;
        m.image_x[i] = multiply(m.image_x[i], m.image_x[j]).canonical();
        m.image_z[j] = multiply(m.image_z[j], m.image_z[i]).canonical();
        break;
      }
      case 3: m.image_x[i].set_phase_exp(m.image_x[i].phase_exp() + 2); break;
    }
  }
  return m;
}

}  // namespace lindfrag::testing
