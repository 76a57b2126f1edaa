#include "lindfrag/spectra.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace lindfrag {

namespace {

double max_abs_eig(const std::vector<cplx>& v) {
  double m = 0;
  for (const cplx x : v) m = std::max(m, std::abs(x));
  return m;
}

// Central-ellipse selection: centroid and std-proportional axes, scale picked
// by bisection so that the retained count is the requested fraction.
std::vector<cplx> ellipse_select(const std::vector<cplx>& pts, double fraction,
                                 EllipseFilter& meta) {
  meta.total = pts.size();
  if (fraction >= 1.0 || pts.size() < 3) {
    meta.retained = pts.size();
    return pts;
  }
  cplx mean = 0;
  for (const cplx p : pts) mean += p;
  mean /= static_cast<double>(pts.size());
  double var_re = 0, var_im = 0;
  for (const cplx p : pts) {
    var_re += (p.real() - mean.real()) * (p.real() - mean.real());
    var_im += (p.imag() - mean.imag()) * (p.imag() - mean.imag());
  }
  double s_re = std::sqrt(var_re / pts.size());
  double s_im = std::sqrt(var_im / pts.size());
  if (s_re == 0) s_re = 1e-300;
  if (s_im == 0) s_im = 1e-300;

  const std::size_t target = std::max<std::size_t>(3, std::llround(fraction * pts.size()));
  auto count_inside = [&](double c) {
    std::size_t inside = 0;
    for (const cplx p : pts) {
      const double xr = (p.real() - mean.real()) / (c * s_re);
      const double xi = (p.imag() - mean.imag()) / (c * s_im);
      if (xr * xr + xi * xi <= 1.0) ++inside;
    }
    return inside;
  };
  double lo = 0, hi = 1;
  while (count_inside(hi) < target) hi *= 2;
  for (int it = 0; it < 60; ++it) {
    const double mid = (lo + hi) / 2;
    if (count_inside(mid) >= target)
      hi = mid;
    else
      lo = mid;
  }
  meta.centroid = mean;
  meta.semi_re = hi * s_re;
  meta.semi_im = hi * s_im;
  std::vector<cplx> kept;
  for (const cplx p : pts) {
    const double xr = (p.real() - mean.real()) / (hi * s_re);
    const double xi = (p.imag() - mean.imag()) / (hi * s_im);
    if (xr * xr + xi * xi <= 1.0) kept.push_back(p);
  }
  meta.retained = kept.size();
  return kept;
}

}  // namespace

ComplexSpectrum spectrum_of(const CMatrix& matrix, bool vectors, std::string source_tag,
                            std::size_t dim_cap) {
  if (matrix.rows() != matrix.cols()) throw std::invalid_argument("spectrum_of: non-square input");
  if (matrix.rows() > dim_cap) throw std::invalid_argument("spectrum_of: dimension cap exceeded");
  ComplexSpectrum spec;
  auto es = eigendecompose(matrix, vectors);
  spec.eigenvalues = std::move(es.values);
  if (vectors) spec.eigenvectors = std::move(es.right_vectors);
  spec.source_tag = std::move(source_tag);
  return spec;
}

std::vector<cplx> spacing_ratio_values(const std::vector<cplx>& centers,
                                       const std::vector<cplx>& pool) {
  std::vector<cplx> out;
  for (const cplx x : centers) {
    double d_nn = 1e300, d_nnn = 1e300;
    cplx nn = 0, nnn = 0;
    bool seen_self = false;
    for (const cplx y : pool) {
      if (!seen_self && y == x) {
        seen_self = true;
        continue;
      }
      const double d = std::abs(y - x);
      if (d < d_nn) {
        d_nnn = d_nn;
        nnn = nn;
        d_nn = d;
        nn = y;
      } else if (d < d_nnn) {
        d_nnn = d;
        nnn = y;
      }
    }
    if (d_nnn >= 1e300) throw std::invalid_argument("spacing_ratio_values: need three points");
    out.push_back((nn - x) / (nnn - x));
  }
  return out;
}

SpectrumStats spacing_ratios(const ComplexSpectrum& spec, const RatioOptions& opts) {
  SpectrumStats stats;
  const double tol = opts.real_tol_factor * max_abs_eig(spec.eigenvalues);
  std::vector<cplx> upper, lower;
  std::vector<double> reals;
  for (const cplx v : spec.eigenvalues) {
    if (std::abs(v.imag()) < tol)
      reals.push_back(v.real());
    else if (v.imag() > 0)
      upper.push_back(v);
    else
      lower.push_back(v);
  }
  stats.f_r = spec.eigenvalues.empty()
                  ? 0.0
                  : static_cast<double>(reals.size()) / spec.eigenvalues.size();

  for (int side = 0; side < 2; ++side) {
    const auto& pool = side == 0 ? upper : lower;
    auto& meta = side == 0 ? stats.upper_filter : stats.lower_filter;
    if (pool.size() < 3) {
      meta.total = pool.size();
      continue;
    }
    const auto centers = ellipse_select(pool, opts.retain_fraction, meta);
    // Exact degeneracies give 0/0 ratios; drop them.
    for (const cplx z : spacing_ratio_values(centers, pool))
      if (std::isfinite(z.real()) && std::isfinite(z.imag())) stats.complex_ratios.push_back(z);
  }

  if (reals.size() >= 3) {
    std::sort(reals.begin(), reals.end());
    std::vector<double> centers(reals);
    if (opts.retain_fraction < 1.0 && reals.size() >= 9) {
      const std::size_t keep = std::max<std::size_t>(3, std::llround(opts.retain_fraction * reals.size()));
      const std::size_t lo = (reals.size() - keep) / 2;
      centers.assign(reals.begin() + lo, reals.begin() + lo + keep);
    }
    std::vector<cplx> pool_c(reals.begin(), reals.end()), centers_c(centers.begin(), centers.end());
    for (const cplx z : spacing_ratio_values(centers_c, pool_c))
      if (std::isfinite(z.real()) && std::isfinite(z.imag()))
        stats.real_ratios.push_back(std::abs(z));
  }

  std::size_t nonreal = upper.size() + lower.size();
  if (nonreal >= 2) {
    ComplexSpectrum sub;
    sub.eigenvalues = spec.eigenvalues;
    stats.eccentricity = eccentricity(sub, tol);
  }
  return stats;
}

double real_fraction(const ComplexSpectrum& spec, double real_tol) {
  if (spec.eigenvalues.empty()) return 0;
  std::size_t reals = 0;
  for (const cplx v : spec.eigenvalues) reals += std::abs(v.imag()) < real_tol;
  return static_cast<double>(reals) / spec.eigenvalues.size();
}

double eccentricity(const ComplexSpectrum& spec, double real_tol) {
  double sum_re = 0, sum_im = 0;
  std::size_t count = 0;
  for (const cplx v : spec.eigenvalues) {
    if (std::abs(v.imag()) < real_tol) continue;
    sum_re += v.real();
    sum_im += v.imag();
    ++count;
  }
  if (count < 2) throw std::invalid_argument("eccentricity: fewer than two nonreal eigenvalues");
  const double m_re = sum_re / count, m_im = sum_im / count;
  double var_re = 0, var_im = 0;
  for (const cplx v : spec.eigenvalues) {
    if (std::abs(v.imag()) < real_tol) continue;
    var_re += (v.real() - m_re) * (v.real() - m_re);
    var_im += (v.imag() - m_im) * (v.imag() - m_im);
  }
  const double a = std::sqrt(std::max(var_re, var_im) / count);
  const double b = std::sqrt(std::min(var_re, var_im) / count);
  if (a == 0) return 0;
  return std::sqrt(1.0 - (b / a) * (b / a));
}

RmtSample rmt_sample(std::size_t n, double chi, std::uint64_t seed) {
  if (n == 0 || (n & (n - 1)) != 0)
    throw std::invalid_argument("rmt_sample: size must be a power of two");
  std::mt19937_64 rng(seed);
  auto uniform = [&] { return (static_cast<double>(rng() >> 11) + 0.5) * 0x1p-53; };
  bool have_spare = false;
  double spare = 0;
  auto normal = [&] {
    if (have_spare) {
      have_spare = false;
      return spare;
    }
    const double r = std::sqrt(-2.0 * std::log(uniform()));
    const double t = 2.0 * std::numbers::pi * uniform();
    spare = r * std::sin(t);
    have_spare = true;
    return r * std::cos(t);
  };

  RmtSample s;
  s.n = n;
  s.chi = chi;
  s.seed = seed;
  // X in row-major draw order, then H = (X + X^T)/2.
  std::vector<double> x(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) x[i * n + j] = normal();
  s.matrix = CMatrix(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const double h = 0.5 * (x[i * n + j] + x[j * n + i]);
      const int ei = std::popcount(i) % 2 == 0 ? 1 : -1;
      const int ej = std::popcount(j) % 2 == 0 ? 1 : -1;
      double a;
      if (ei == ej)
        a = chi * h;
      else if (ei > ej)
        a = h;  // PHQ block
      else
        a = -h;  // -QHP block
      s.matrix(i, j) = a;
    }
  return s;
}

}  // namespace lindfrag
