#include <doctest.h>

#include <bit>
#include <cmath>
#include <random>

#include "lindfrag/effective.hpp"
#include "lindfrag/spectra.hpp"

using namespace lindfrag;

namespace {

ComplexSpectrum from_values(std::vector<cplx> vals) {
  ComplexSpectrum s;
  s.eigenvalues = std::move(vals);
  return s;
}

double mean_abs(const std::vector<cplx>& zs) {
  double m = 0;
  for (const cplx z : zs) m += std::abs(z);
  return m / static_cast<double>(zs.size());
}

// Mean |z| and its standard error for uniformly scattered points.
std::pair<double, double> poisson_baseline(std::size_t n_points, int trials,
                                           std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0, 1);
  std::vector<double> means;
  for (int t = 0; t < trials; ++t) {
    std::vector<cplx> pts;
    for (std::size_t i = 0; i < n_points; ++i) pts.push_back({u(rng), u(rng)});
    means.push_back(mean_abs(spacing_ratio_values(pts, pts)));
  }
  double m = 0;
  for (const double x : means) m += x;
  m /= means.size();
  double var = 0;
  for (const double x : means) var += (x - m) * (x - m);
  return {m, std::sqrt(var / means.size() / means.size())};
}

}  // namespace

TEST_CASE("eigendecomposition contract") {
  CMatrix d(3, 3);
  d(0, 0) = cplx{1, 2};
  d(1, 1) = -4.0;
  d(2, 2) = cplx{0, 7};
  auto spec = spectrum_of(d, false, "diag");
  CHECK(spec.source_tag == "diag");
  std::sort(spec.eigenvalues.begin(), spec.eigenvalues.end(),
            [](cplx a, cplx b) { return a.real() < b.real(); });
  CHECK(std::abs(spec.eigenvalues[0] - cplx{-4, 0}) < 1e-12);
  CHECK(std::abs(spec.eigenvalues[1] - cplx{0, 7}) < 1e-12);
  CHECK(std::abs(spec.eigenvalues[2] - cplx{1, 2}) < 1e-12);

  CMatrix j(2, 2);
  j(0, 1) = 1;
  j(1, 0) = 1e-6;
  const auto je = spectrum_of(j).eigenvalues;
  CHECK(std::abs(std::abs(je[0]) - 1e-3) < 1e-9);
  CHECK(std::abs(je[0] + je[1]) < 1e-9);

  // Backward error of returned pairs.
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1, 1);
  CMatrix m(20, 20);
  for (std::size_t c = 0; c < 20; ++c)
    for (std::size_t r = 0; r < 20; ++r) m(r, c) = cplx{u(rng), u(rng)};
  const auto es = spectrum_of(m, true);
  for (std::size_t i = 0; i < 20; ++i) {
    std::vector<cplx> v(20);
    for (std::size_t r = 0; r < 20; ++r) v[r] = es.eigenvectors(r, i);
    const auto mv = mat_vec(m, v);
    double resid = 0;
    for (std::size_t r = 0; r < 20; ++r) resid += std::norm(mv[r] - es.eigenvalues[i] * v[r]);
    CHECK(std::sqrt(resid) / m.frobenius_norm() < 1e-10);
  }

  CMatrix rect(2, 3);
  CHECK_THROWS_AS(spectrum_of(rect), std::invalid_argument);
  CMatrix big(9, 9);
  CHECK_THROWS_AS(spectrum_of(big, false, "", 8), std::invalid_argument);
}

TEST_CASE("spacing ratios on a tiny real spectrum") {
  RatioOptions opts;
  opts.retain_fraction = 1.0;
  const auto stats = spacing_ratios(from_values({0.0, 1.0, 3.0}), opts);
  REQUIRE(stats.real_ratios.size() == 3);
  CHECK(stats.f_r == 1.0);
  // At 0: (1-0)/(3-0); at 1: |0-1|/|3-1|; at 3: |1-3|/|0-3|.
  std::vector<double> sorted = stats.real_ratios;
  std::sort(sorted.begin(), sorted.end());
  CHECK(std::abs(sorted[0] - 1. / 3) < 1e-15);
  CHECK(std::abs(sorted[1] - 1. / 2) < 1e-15);
  CHECK(std::abs(sorted[2] - 2. / 3) < 1e-15);
}

TEST_CASE("ratio moduli never exceed one and the filter keeps a third") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(-1, 1);
  std::vector<cplx> vals;
  for (int i = 0; i < 600; ++i) vals.push_back({u(rng), u(rng)});
  const auto stats = spacing_ratios(from_values(vals));
  CHECK(!stats.complex_ratios.empty());
  for (const cplx z : stats.complex_ratios) CHECK(std::abs(z) <= 1.0 + 1e-12);
  for (const double r : stats.real_ratios) CHECK(r <= 1.0 + 1e-12);
  const double upper_frac =
      static_cast<double>(stats.upper_filter.retained) / stats.upper_filter.total;
  CHECK(upper_frac > 0.25);
  CHECK(upper_frac < 0.45);
}

TEST_CASE("scale invariance of real fraction and eccentricity") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1, 1);
  std::vector<cplx> vals{1.0, -2.0, 0.5};
  for (int i = 0; i < 40; ++i) vals.push_back({u(rng), 2 * u(rng)});
  const auto spec = from_values(vals);
  const double tol = 1e-10;
  for (cplx& v : vals) v *= 37.5;
  const auto scaled = from_values(vals);
  CHECK(real_fraction(spec, tol) == real_fraction(scaled, 37.5 * tol));
  CHECK(std::abs(eccentricity(spec, tol) - eccentricity(scaled, 37.5 * tol)) < 1e-12);
}

TEST_CASE("eccentricity closed forms") {
  CHECK(eccentricity(from_values({{1, 0.1}, {-1, 0.1}, {0.1, 1}, {0.1, -1}}), 1e-12) ==
        doctest::Approx(0.0).epsilon(1e-9));
  const double e = eccentricity(from_values({{2, 0.5}, {-2, 0.5}, {0, 1}, {0, -1}}), 1e-12);
  // var_re = 2, var_im = 0.5625 about the means (0, 0.25).
  CHECK(e == doctest::Approx(std::sqrt(1 - 0.5625 / 2)).epsilon(1e-9));
  CHECK_THROWS_AS(eccentricity(from_values({1.0, 2.0, 3.0}), 1e-12), std::invalid_argument);
  CHECK(real_fraction(from_values({1.0, 2.0, {0, 3}}), 1e-9) == doctest::Approx(2. / 3));
}

TEST_CASE("random ensemble construction invariants") {
  const auto s = rmt_sample(64, 1.5, 123);
  // Real, and eta A eta = A^T exactly.
  for (std::size_t c = 0; c < 64; ++c)
    for (std::size_t r = 0; r < 64; ++r) {
      CHECK(s.matrix(r, c).imag() == 0.0);
      const int er = std::popcount(r) % 2 == 0 ? 1 : -1;
      const int ec = std::popcount(c) % 2 == 0 ? 1 : -1;
      CHECK(static_cast<double>(er * ec) * s.matrix(r, c) == s.matrix(c, r));
    }

  // chi = 0: antisymmetric, near-zero real fraction.
  const auto anti = rmt_sample(64, 0.0, 5);
  CMatrix sum = anti.matrix;
  sum += anti.matrix.transpose();
  CHECK(sum.max_abs() == 0.0);
  const auto anti_spec = spectrum_of(anti.matrix);
  double scale = 0;
  for (const cplx v : anti_spec.eigenvalues) scale = std::max(scale, std::abs(v));
  CHECK(real_fraction(anti_spec, 1e-10 * scale) <= 1. / 64);

  // Determinism and seed sensitivity.
  CMatrix diff = rmt_sample(64, 1.5, 123).matrix;
  diff -= s.matrix;
  CHECK(diff.max_abs() == 0.0);
  CMatrix other = rmt_sample(64, 1.5, 124).matrix;
  other -= s.matrix;
  CHECK(other.max_abs() > 0.0);

  // Spectrum closed under conjugation (pairs or real), chi = 2, n = 16.
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto spec = spectrum_of(rmt_sample(16, 2.0, seed).matrix);
    double sc = 0;
    for (const cplx v : spec.eigenvalues) sc = std::max(sc, std::abs(v));
    for (const cplx v : spec.eigenvalues) {
      double best = 1e300;
      for (const cplx w : spec.eigenvalues) best = std::min(best, std::abs(std::conj(v) - w));
      CHECK(best < 1e-8 * sc);
    }
  }
}

TEST_CASE("hermitian input has unit real fraction") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1, 1);
  CMatrix h(16, 16);
  for (std::size_t c = 0; c < 16; ++c)
    for (std::size_t r = 0; r <= c; ++r) {
      h(r, c) = cplx{u(rng), r == c ? 0 : u(rng)};
      h(c, r) = std::conj(h(r, c));
    }
  const auto spec = spectrum_of(h);
  double scale = 0;
  for (const cplx v : spec.eigenvalues) scale = std::max(scale, std::abs(v));
  CHECK(real_fraction(spec, 1e-10 * scale) == 1.0);
}

TEST_CASE("ginibre-like ratios show level repulsion against the Poisson baseline") {
  std::mt19937_64 rng(2026);
  std::normal_distribution<double> gauss;
  std::vector<cplx> pooled;
  for (int i = 0; i < 30; ++i) {
    CMatrix g(64, 64);
    for (std::size_t c = 0; c < 64; ++c)
      for (std::size_t r = 0; r < 64; ++r) g(r, c) = gauss(rng);
    const auto spec = spectrum_of(g);
    const auto stats = spacing_ratios(spec);
    pooled.insert(pooled.end(), stats.complex_ratios.begin(), stats.complex_ratios.end());
  }
  REQUIRE(pooled.size() > 100);
  const auto [base_mean, base_se] = poisson_baseline(40, 60, rng);
  const double se = std::max(base_se, 0.002);
  CHECK(mean_abs(pooled) > base_mean + 3 * se);
}

TEST_CASE("large Y-jump fragment spectrum repels against the Poisson baseline") {
  const auto tm = to_tilde(builtin_model("cluster_y", 13, 1.0, 1.0));
  PauliString seed(13);
  seed.set_letter(0, 'Y');
  seed.set_letter(1, 'Z');
  for (int s = 2; s <= 11; ++s) seed.set_letter(s, 'X');
  seed.set_letter(12, 'Y');
  const auto frag = fragment_of(tm, seed);
  REQUIRE(frag.dim == 1024);
  const auto gen = restrict_generator(tm, frag);
  const auto spec = spectrum_of(gen.matrix);
  const auto stats = spacing_ratios(spec);
  REQUIRE(stats.complex_ratios.size() > 50);
  std::mt19937_64 rng(31);
  const auto [base_mean, base_se] = poisson_baseline(stats.upper_filter.retained, 60, rng);
  const double se = std::max(base_se, 0.002);
  CHECK(mean_abs(stats.complex_ratios) > base_mean + 3 * se);
}
