#include "lindfrag/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <cblas.h>
#include <lapacke.h>

namespace lindfrag {

CMatrix CMatrix::identity(std::size_t n) {
  CMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

CMatrix& CMatrix::operator+=(const CMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("CMatrix: shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("CMatrix: shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

CMatrix& CMatrix::operator*=(cplx s) {
  for (auto& v : data_) v *= s;
  return *this;
}

CMatrix CMatrix::adjoint() const {
  CMatrix r(cols_, rows_);
  for (std::size_t c = 0; c < cols_; ++c)
    for (std::size_t rr = 0; rr < rows_; ++rr) r(c, rr) = std::conj((*this)(rr, c));
  return r;
}

CMatrix CMatrix::transpose() const {
  CMatrix r(cols_, rows_);
  for (std::size_t c = 0; c < cols_; ++c)
    for (std::size_t rr = 0; rr < rows_; ++rr) r(c, rr) = (*this)(rr, c);
  return r;
}

double CMatrix::frobenius_norm() const {
  double s = 0;
  for (const auto& v : data_) s += std::norm(v);
  return std::sqrt(s);
}

double CMatrix::max_abs() const {
  double m = 0;
  for (const auto& v : data_) m = std::max(m, std::abs(v));
  return m;
}

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("CMatrix multiply: shape mismatch");
  CMatrix c(a.rows(), b.cols());
  const cplx one{1, 0}, zero{0, 0};
  cblas_zgemm(CblasColMajor, CblasNoTrans, CblasNoTrans, static_cast<int>(a.rows()),
              static_cast<int>(b.cols()), static_cast<int>(a.cols()), &one, a.data(),
              static_cast<int>(a.rows()), b.data(), static_cast<int>(b.rows()), &zero, c.data(),
              static_cast<int>(c.rows()));
  return c;
}

CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
CMatrix operator*(cplx s, CMatrix a) { return a *= s; }

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix r(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t ac = 0; ac < a.cols(); ++ac)
    for (std::size_t ar = 0; ar < a.rows(); ++ar) {
      const cplx av = a(ar, ac);
      if (av == cplx{}) continue;
      for (std::size_t bc = 0; bc < b.cols(); ++bc)
        for (std::size_t br = 0; br < b.rows(); ++br)
          r(ar * b.rows() + br, ac * b.cols() + bc) = av * b(br, bc);
    }
  return r;
}

std::vector<cplx> mat_vec(const CMatrix& a, const std::vector<cplx>& v) {
  if (a.cols() != v.size()) throw std::invalid_argument("mat_vec: shape mismatch");
  std::vector<cplx> out(a.rows());
  const cplx one{1, 0}, zero{0, 0};
  cblas_zgemv(CblasColMajor, CblasNoTrans, static_cast<int>(a.rows()), static_cast<int>(a.cols()),
              &one, a.data(), static_cast<int>(a.rows()), v.data(), 1, &zero, out.data(), 1);
  return out;
}

Eigensystem eigendecompose(const CMatrix& a, bool want_vectors) {
  if (a.rows() != a.cols()) throw std::invalid_argument("eigendecompose: matrix not square");
  const lapack_int n = static_cast<lapack_int>(a.rows());
  CMatrix work = a;
  Eigensystem es;
  es.values.resize(a.rows());
  if (want_vectors) es.right_vectors = CMatrix(a.rows(), a.rows());
  const lapack_int info = LAPACKE_zgeev(
      LAPACK_COL_MAJOR, 'N', want_vectors ? 'V' : 'N', n,
      reinterpret_cast<lapack_complex_double*>(work.data()), n,
      reinterpret_cast<lapack_complex_double*>(es.values.data()), nullptr, 1,
      want_vectors ? reinterpret_cast<lapack_complex_double*>(es.right_vectors.data()) : nullptr,
      want_vectors ? n : 1);
  if (info != 0) throw std::runtime_error("zgeev failed, info = " + std::to_string(info));
  return es;
}

void solve_linear(CMatrix a, CMatrix& b) {
  if (a.rows() != a.cols() || a.rows() != b.rows())
    throw std::invalid_argument("solve_linear: shape mismatch");
  const lapack_int n = static_cast<lapack_int>(a.rows());
  std::vector<lapack_int> ipiv(a.rows());
  const lapack_int info = LAPACKE_zgesv(LAPACK_COL_MAJOR, n, static_cast<lapack_int>(b.cols()),
                                        reinterpret_cast<lapack_complex_double*>(a.data()), n,
                                        ipiv.data(),
                                        reinterpret_cast<lapack_complex_double*>(b.data()), n);
  if (info != 0) throw std::runtime_error("zgesv failed, info = " + std::to_string(info));
}

std::vector<double> singular_values(const CMatrix& a) {
  CMatrix work = a;
  const lapack_int m = static_cast<lapack_int>(a.rows());
  const lapack_int n = static_cast<lapack_int>(a.cols());
  std::vector<double> s(std::min(a.rows(), a.cols()));
  std::vector<double> superb(std::max<std::size_t>(1, s.size()));
  const lapack_int info =
      LAPACKE_zgesvd(LAPACK_COL_MAJOR, 'N', 'N', m, n,
                     reinterpret_cast<lapack_complex_double*>(work.data()), m, s.data(), nullptr, 1,
                     nullptr, 1, superb.data());
  if (info != 0) throw std::runtime_error("zgesvd failed, info = " + std::to_string(info));
  return s;
}

double condition_number(const CMatrix& a) {
  const auto s = singular_values(a);
  if (s.empty() || s.back() == 0.0) return std::numeric_limits<double>::infinity();
  return s.front() / s.back();
}

CMatrix expm(const CMatrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("expm: matrix not square");
  const std::size_t n = a.rows();
  // 1-norm (max column sum) drives the scaling.
  double norm1 = 0;
  for (std::size_t c = 0; c < n; ++c) {
    double col = 0;
    for (std::size_t r = 0; r < n; ++r) col += std::abs(a(r, c));
    norm1 = std::max(norm1, col);
  }
  int squarings = 0;
  if (norm1 > 0.5) squarings = std::max(0, static_cast<int>(std::ceil(std::log2(norm1 / 0.5))));
  CMatrix as = a;
  as *= cplx{std::ldexp(1.0, -squarings), 0};

  // Pade(6,6) on the scaled matrix.
  static const double c[] = {1.0, 0.5, 5.0 / 44, 1.0 / 66, 1.0 / 792, 1.0 / 15840, 1.0 / 665280};
  const CMatrix x2 = as * as;
  CMatrix even = CMatrix::identity(n);
  even *= cplx{c[0], 0};
  CMatrix odd = as;
  odd *= cplx{c[1], 0};
  CMatrix pow = x2;
  for (int k = 2; k <= 6; k += 2) {
    CMatrix t = pow;
    t *= cplx{c[k], 0};
    even += t;
    if (k + 1 <= 6) {
      CMatrix u = as * pow;
      u *= cplx{c[k + 1], 0};
      odd += u;
    }
    if (k + 2 <= 6) pow = pow * x2;
  }
  CMatrix num = even + odd;
  CMatrix den = even - odd;
  solve_linear(den, num);
  for (int i = 0; i < squarings; ++i) num = num * num;
  return num;
}

}  // namespace lindfrag
