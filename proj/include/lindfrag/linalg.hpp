#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace lindfrag {

using cplx = std::complex<double>;

// Dense column-major complex matrix, the storage LAPACK expects.
class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static CMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  cplx& operator()(std::size_t r, std::size_t c) { return data_[c * rows_ + r]; }
  const cplx& operator()(std::size_t r, std::size_t c) const { return data_[c * rows_ + r]; }

  cplx* data() { return data_.data(); }
  const cplx* data() const { return data_.data(); }

  CMatrix& operator+=(const CMatrix& o);
  CMatrix& operator-=(const CMatrix& o);
  CMatrix& operator*=(cplx s);

  CMatrix adjoint() const;
  CMatrix transpose() const;
  double frobenius_norm() const;
  double max_abs() const;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<cplx> data_;
};

CMatrix operator*(const CMatrix& a, const CMatrix& b);
CMatrix operator+(CMatrix a, const CMatrix& b);
CMatrix operator-(CMatrix a, const CMatrix& b);
CMatrix operator*(cplx s, CMatrix a);
CMatrix kron(const CMatrix& a, const CMatrix& b);

std::vector<cplx> mat_vec(const CMatrix& a, const std::vector<cplx>& v);

struct Eigensystem {
  std::vector<cplx> values;
  CMatrix right_vectors;  // empty unless requested
};

// General dense non-Hermitian eigendecomposition (LAPACK zgeev).
// Throws std::runtime_error on non-convergence.
Eigensystem eigendecompose(const CMatrix& a, bool want_vectors);

// Solves a x = b in place; b holds the solution on return (zgesv).
void solve_linear(CMatrix a, CMatrix& b);

std::vector<double> singular_values(const CMatrix& a);

// 2-norm condition number via SVD.
double condition_number(const CMatrix& a);

// Matrix exponential by Pade approximation with scaling and squaring.
CMatrix expm(const CMatrix& a);

}  // namespace lindfrag
