#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lindfrag/linalg.hpp"

namespace lindfrag {

struct ComplexSpectrum {
  std::vector<cplx> eigenvalues;
  CMatrix eigenvectors;  // empty unless requested
  std::string source_tag;
};

// Dense general eigendecomposition with a dimension cap (default 16384).
ComplexSpectrum spectrum_of(const CMatrix& matrix, bool vectors = false,
                            std::string source_tag = {}, std::size_t dim_cap = 16384);

struct EllipseFilter {
  cplx centroid;
  double semi_re = 0, semi_im = 0;  // final semi-axes after scaling
  std::size_t retained = 0, total = 0;
};

struct SpectrumStats {
  double f_r = 0;
  double eccentricity = 0;
  std::vector<cplx> complex_ratios;  // upper and lower half-planes pooled
  std::vector<double> real_ratios;
  EllipseFilter upper_filter, lower_filter;
};

struct RatioOptions {
  double real_tol_factor = 1e-10;   // times max |lambda|
  double retain_fraction = 1. / 3;  // central-ellipse fraction; >= 1 disables
};

// Complex spacing ratios z = (nn - x) / (nnn - x) for each point of `centers`
// with neighbors searched in `pool` (centers must be a subset of pool).
std::vector<cplx> spacing_ratio_values(const std::vector<cplx>& centers,
                                       const std::vector<cplx>& pool);

// Full statistics: reals split out by |Im| < real_tol, nonreal ratios per
// half-plane restricted to the central ellipse, real ratios on the sorted
// real subset (modulus, in [0,1]).
SpectrumStats spacing_ratios(const ComplexSpectrum& spec, const RatioOptions& opts = {});

double real_fraction(const ComplexSpectrum& spec, double real_tol);

// Eccentricity of the nonreal subset from the Re/Im standard deviations;
// throws when fewer than two nonreal eigenvalues remain.
double eccentricity(const ComplexSpectrum& spec, double real_tol);

struct RmtSample {
  std::size_t n = 0;
  double chi = 0;
  std::uint64_t seed = 0;
  CMatrix matrix;  // real entries
};

// Real symmetric-plus-antisymmetric pseudo-Hermitian ensemble: H = (X+X^T)/2
// with iid standard normal X, eta = parity signs (-1)^popcount(index),
// A = chi (PHP + QHQ) + (PHQ - QHP). Bitwise reproducible per seed.
RmtSample rmt_sample(std::size_t n, double chi, std::uint64_t seed);

}  // namespace lindfrag
