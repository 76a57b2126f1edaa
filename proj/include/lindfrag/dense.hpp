#pragma once

#include "lindfrag/linalg.hpp"
#include "lindfrag/pauli.hpp"

namespace lindfrag {

// 2^N x 2^N matrix of a Pauli string, site 0 on the most significant bit.
// Oracle use only; capped at N <= 14.
CMatrix dense_matrix(const PauliString& p);

}  // namespace lindfrag
