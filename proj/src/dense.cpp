#include "lindfrag/dense.hpp"

#include <stdexcept>

namespace lindfrag {

CMatrix dense_matrix(const PauliString& p) {
  const int n = p.n_qubits();
  if (n > 14) throw std::invalid_argument("dense_matrix: n_qubits > 14");
  const std::size_t dim = std::size_t{1} << n;
  CMatrix m(dim, dim);
  // Column-by-column: X flips bits, Z contributes (-1)^{bit}, Y both with an i.
  static const cplx iexp[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  for (std::size_t col = 0; col < dim; ++col) {
    std::size_t row = col;
    // Leading sign in letter notation: i^phase * X^x Z^z = i^sign_exp * (letter product).
    cplx amp = iexp[p.sign_exp()];
    for (int s = 0; s < n; ++s) {
      const std::size_t bit_mask = std::size_t{1} << (n - 1 - s);
      const bool bit = col & bit_mask;
      switch (p.letter(s)) {
        case 'X': row ^= bit_mask; break;
        case 'Y':
          row ^= bit_mask;
          amp *= bit ? cplx{0, -1} : cplx{0, 1};
          break;
        case 'Z':
          if (bit) amp = -amp;
          break;
        default: break;
      }
    }
    m(row, col) = amp;
  }
  return m;
}

}  // namespace lindfrag
