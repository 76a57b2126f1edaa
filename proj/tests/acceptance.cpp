// Acceptance gate: one pass/fail line per criterion, desk-scale substitutes
// for the large production runs. Exit status = number of failed criteria.

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "lindfrag/dynamics.hpp"
#include "lindfrag/effective.hpp"
#include "lindfrag/fragments.hpp"
#include "lindfrag/model.hpp"
#include "lindfrag/oracle.hpp"
#include "lindfrag/spectra.hpp"
#include "lindfrag/tfim.hpp"

using namespace lindfrag;

namespace {

int g_failures = 0;
std::string g_detail;

void fail(const std::string& why) {
  if (g_detail.empty()) g_detail = why;
}

template <typename F>
void criterion(int index, const char* name, double budget_s, F&& body) {
  g_detail.clear();
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body();
  } catch (const std::exception& e) {
    fail(std::string("exception: ") + e.what());
  }
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (g_detail.empty() && elapsed > budget_s)
    fail("runtime " + std::to_string(elapsed) + " s exceeds budget");
  if (g_detail.empty()) {
    std::printf("criterion %d (%s): PASS in %.2f s\n", index, name, elapsed);
  } else {
    std::printf("criterion %d (%s): FAIL in %.2f s -- %s\n", index, name, elapsed,
                g_detail.c_str());
    ++g_failures;
  }
  std::fflush(stdout);
}

std::uint64_t binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::uint64_t r = 1;
  for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

double multiset_gap(std::vector<cplx> a, std::vector<cplx> b) {
  if (a.size() != b.size()) return 1e300;
  double worst = 0;
  for (const cplx x : a) {
    double best = 1e300;
    std::size_t arg = 0;
    for (std::size_t i = 0; i < b.size(); ++i)
      if (std::abs(b[i] - x) < best) {
        best = std::abs(b[i] - x);
        arg = i;
      }
    worst = std::max(worst, best);
    b.erase(b.begin() + arg);
  }
  return worst;
}

TfimSpec theta_spec(int n_sites, double theta, int zl = 1, int zr = 1) {
  TfimSpec s;
  s.n_sites = n_sites;
  s.J = std::cos(theta * std::numbers::pi / 2);
  s.kappa = std::sin(theta * std::numbers::pi / 2);
  s.zeta_l = zl;
  s.zeta_r = zr;
  return s;
}

Fragment all_x_fragment(const TildeModel& tm) {
  PauliString seed(tm.base.n_qubits);
  for (int s = 0; s < tm.base.n_qubits; ++s)
    if (tm.is_generator_site[s]) seed.set_letter(s, 'X');
  return fragment_of(tm, seed);
}

// Mean |z| of spacing ratios for uniformly scattered points, with its standard
// error over trials (floored at 0.002 as in the property tests).
std::pair<double, double> poisson_baseline_2d(std::size_t n_points, int trials,
                                              std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0, 1);
  std::vector<double> means;
  for (int t = 0; t < trials; ++t) {
    std::vector<cplx> pts;
    for (std::size_t i = 0; i < n_points; ++i) pts.push_back({u(rng), u(rng)});
    double m = 0;
    for (const cplx z : spacing_ratio_values(pts, pts)) m += std::abs(z);
    means.push_back(m / pts.size());
  }
  double m = 0;
  for (const double x : means) m += x;
  m /= means.size();
  double var = 0;
  for (const double x : means) var += (x - m) * (x - m);
  return {m, std::max(std::sqrt(var) / means.size(), 0.002)};
}

// Same for points scattered on a line, centers from the middle third.
std::pair<double, double> poisson_baseline_1d(std::size_t n_points, std::size_t n_centers,
                                              int trials, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0, 1);
  std::vector<double> means;
  for (int t = 0; t < trials; ++t) {
    std::vector<double> pts;
    for (std::size_t i = 0; i < n_points; ++i) pts.push_back(u(rng));
    std::sort(pts.begin(), pts.end());
    const std::size_t lo = (n_points - n_centers) / 2;
    std::vector<cplx> pool(pts.begin(), pts.end());
    std::vector<cplx> centers(pts.begin() + lo, pts.begin() + lo + n_centers);
    double m = 0;
    std::size_t n = 0;
    for (const cplx z : spacing_ratio_values(centers, pool))
      if (std::isfinite(std::abs(z))) {
        m += std::abs(z);
        ++n;
      }
    means.push_back(m / n);
  }
  double m = 0;
  for (const double x : means) m += x;
  m /= means.size();
  double var = 0;
  for (const double x : means) var += (x - m) * (x - m);
  return {m, std::max(std::sqrt(var) / means.size(), 0.002)};
}

// ---- criteria --------------------------------------------------------------

void c1_fragment_counting() {
  for (const char* name : {"cluster_y", "cluster_ziz"}) {
    for (const int n : {4, 8}) {
      const auto tm = to_tilde(builtin_model(name, n, 1.0, 0.5));
      const int m = tm.n_generators;
      const std::uint64_t expect_total =
          static_cast<std::uint64_t>(std::llround(std::pow(3.0, m) * std::pow(4.0, n - m)));
      if (total_fragment_count(tm) != expect_total)
        return fail(std::string(name) + ": total fragment count mismatch");
      if ((n == 4 && expect_total != 144) || (n == 8 && expect_total != 11664))
        return fail(std::string(name) + ": closed-form total mismatch");
      const auto counts = count_by_size(tm);
      std::uint64_t dim_sum = 0;
      for (const auto& [k, c] : counts) {
        const std::uint64_t expect =
            binom(m, k) * (std::uint64_t{1} << (m - k)) *
            static_cast<std::uint64_t>(std::llround(std::pow(4.0, n - m)));
        if (c != expect) return fail(std::string(name) + ": size-resolved count mismatch");
        dim_sum += c << k;
      }
      if (dim_sum != std::uint64_t{1} << (2 * n))
        return fail(std::string(name) + ": fragment dimensions do not sum to 4^N");
    }
  }
}

void c2_oracle_blocks() {
  for (const char* name : {"cluster_y", "cluster_ziz"}) {
    const auto tm = to_tilde(builtin_model(name, 4, 1.0, 0.7));
    const auto super = build_superoperator(tm);
    if (!verify_fragmentation(tm, super).pass())
      return fail(std::string(name) + ": fragmentation check failed");
    if (!verify_conservation(tm, super).pass())
      return fail(std::string(name) + ": conservation check failed");
  }
  std::mt19937_64 rng(20260824);
  const auto map = testing::random_map(3, rng);
  LindbladModel base;
  base.n_qubits = 3;
  std::uniform_real_distribution<double> coeff(-2.0, 2.0);
  std::uniform_real_distribution<double> rate(0.1, 1.5);
  base.hamiltonian.push_back({coeff(rng), map.apply(PauliString::single(3, 0, 'Z'))});
  for (int j = 0; j < 3; ++j)
    base.jumps.push_back({rate(rng), testing::random_string(3, rng).canonical()});
  if (!validate(base).ok()) return fail("random model failed validation");
  const auto tm = to_tilde(base);
  const auto super = build_superoperator(tm);
  if (!verify_fragmentation(tm, super).pass())
    return fail("random model: fragmentation check failed");
  if (!verify_conservation(tm, super).pass())
    return fail("random model: conservation check failed");
}

void c3_tfim_exactness() {
  const std::pair<int, int> zetas[] = {{1, 1}, {1, 0}, {0, 0}};
  for (const auto [zl, zr] : zetas) {
    for (int n = 4; n <= 12; ++n) {
      for (const double theta : {0.2, 0.45, 0.5, 0.55, 0.8}) {
        const auto spec = theta_spec(n, theta, zl, zr);
        const auto sol = obc_spectrum(spec);
        if (sol.max_residual > 1e-8) return fail("secular residual exceeds 1e-8");
        std::vector<cplx> sq;
        for (const cplx e : sol.energies) sq.push_back(e * e);
        const auto cs = eigendecompose(dense_c_matrix(spec), false).values;
        double scale = 0;
        for (const cplx v : cs) scale = std::max(scale, std::abs(v));
        if (multiset_gap(sq, cs) > 1e-8 * std::max(scale, 1.0))
          return fail("secular spectrum does not match eig(C)");
        if (zl + zr == 1) {
          // One-edge case: exact momenta alpha*pi/(M+1) plus the trivial zero.
          for (int alpha = 1; alpha <= n - 1; ++alpha) {
            const double k = alpha * std::numbers::pi / n;
            double best = 1e300;
            for (const cplx q : sol.momenta) best = std::min(best, std::abs(q - k));
            if (best > 1e-9) return fail("one-edge momentum off the exact grid");
          }
        }
      }
    }
  }
}

void c4_zero_mode() {
  double prev = 0;
  for (int m = 20; m <= 40; m += 5) {
    TfimSpec spec;
    spec.n_sites = m + 1;
    spec.J = 1.0;
    spec.kappa = 0.2;
    const auto zm = zero_mode(spec);
    if (!zm) return fail("zero mode missing at kappa/J = 0.2");
    if (m > 20 && !(zm->abs_energy < 0.5 * prev))
      return fail("zero-mode energy not decreasing geometrically");
    prev = zm->abs_energy;
    if (m == 40) {
      const double dk = std::min(std::abs(zm->k_finite - zm->k_thermo),
                                 std::abs(zm->k_finite + zm->k_thermo));
      if (dk > 1e-3) return fail("zero-mode momentum not converged at M = 40");
    }
  }
  for (int m = 20; m <= 40; m += 10) {
    TfimSpec spec;
    spec.n_sites = m + 1;
    spec.J = 1.0;
    spec.kappa = 1.5;
    if (zero_mode(spec).has_value()) return fail("spurious zero mode at kappa/J = 1.5");
  }
}

void c5_exceptional_points_and_echo() {
  std::vector<double> grid;
  for (double th = 0.05; th < 0.9501; th += 0.01) grid.push_back(th);

  const auto eps8 = exceptional_points(theta_spec(8, 0.5), grid);
  if (eps8.empty()) return fail("no EP found for the 8-site chain");
  // Finite-size EP sits below the thermodynamic transition theta = 1/2.
  const double theta_star = eps8.front();
  if (std::abs(theta_star - 0.5) > 0.1) return fail("8-site EP far from theta = 0.5");
  if (!exceptional_points(theta_spec(9, 0.5), grid).empty())
    return fail("spurious EP for the 9-site chain");

  auto extrema_scan = [](int n_sites) {
    std::vector<std::pair<double, int>> out;
    for (double th = 0.30; th <= 0.601; th += 0.01) {
      const auto spec = theta_spec(n_sites, th);
      out.push_back({th, count_echo_extrema(tfim_echo(spec, default_time_grid(spec.J)))});
    }
    return out;
  };

  const auto scan8 = extrema_scan(8);
  int best_jump = 0;
  double jump_at = 0;
  for (std::size_t i = 1; i < scan8.size(); ++i) {
    const int jump = std::abs(scan8[i].second - scan8[i - 1].second);
    if (jump > best_jump) {
      best_jump = jump;
      jump_at = scan8[i - 1].first;
    }
  }
  if (best_jump < 3) return fail("no echo extremum-count jump >= 3 for 8 sites");
  if (theta_star < jump_at - 1e-9 || theta_star > jump_at + 0.01 + 1e-9)
    return fail("echo regime jump not at the detected EP");

  const auto scan9 = extrema_scan(9);
  for (std::size_t i = 1; i < scan9.size(); ++i)
    if (std::abs(scan9[i].second - scan9[i - 1].second) >= 3)
      return fail("discontinuous echo regime change for 9 sites");
}

void c6_chaos_diagnostics() {
  const auto tm = to_tilde(builtin_model("cluster_y", 14, 1.0, 1.0));
  const auto frag = all_x_fragment(tm);
  if (frag.dim != 4096) return fail("expected a 4096-dimensional fragment");
  const auto gen = restrict_generator(tm, frag);
  const auto spec = spectrum_of(gen.matrix, false, frag.label_string());
  const auto stats = spacing_ratios(spec);

  std::mt19937_64 rng(31);
  if (stats.complex_ratios.size() < 200) return fail("too few complex ratios");
  double mc = 0;
  for (const cplx z : stats.complex_ratios) mc += std::abs(z);
  mc /= stats.complex_ratios.size();
  const auto [base2, se2] =
      poisson_baseline_2d(stats.upper_filter.retained, 60, rng);
  if (!(mc > base2 + 3 * se2)) return fail("complex ratios show no level repulsion");

  if (stats.real_ratios.size() < 30) return fail("too few real ratios");
  double mr = 0;
  for (const double r : stats.real_ratios) mr += r;
  mr /= stats.real_ratios.size();
  double scale = 0;
  for (const cplx v : spec.eigenvalues) scale = std::max(scale, std::abs(v));
  std::size_t n_reals = 0;
  for (const cplx v : spec.eigenvalues) n_reals += std::abs(v.imag()) < 1e-10 * scale;
  const auto [base1, se1] =
      poisson_baseline_1d(n_reals, stats.real_ratios.size(), 120, rng);
  if (!(mr > base1 + 3 * se1)) return fail("real ratios show no level repulsion");

  // f_r trend on the 1024-dimensional fragment family.
  double prev = -1;
  for (const double kappa : {0.1, 0.5, 1.0, 2.0, 5.0}) {
    const auto tmk = to_tilde(builtin_model("cluster_y", 12, 1.0, kappa));
    const auto genk = restrict_generator(tmk, all_x_fragment(tmk));
    const auto sp = spectrum_of(genk.matrix);
    double sc = 0;
    for (const cplx v : sp.eigenvalues) sc = std::max(sc, std::abs(v));
    const double fr = real_fraction(sp, 1e-10 * sc);
    if (fr < prev) return fail("f_r not monotone in kappa/J");
    prev = fr;
  }
  if (prev < 0.9) return fail("f_r does not approach 1 at large kappa/J");
}

void c7_rmt_ensemble() {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto s = rmt_sample(256, 1.0, seed);
    for (std::size_t c = 0; c < 256; ++c)
      for (std::size_t r = 0; r < 256; ++r) {
        const int er = std::popcount(r) % 2 == 0 ? 1 : -1;
        const int ec = std::popcount(c) % 2 == 0 ? 1 : -1;
        if (static_cast<double>(er * ec) * s.matrix(r, c) != s.matrix(c, r))
          return fail("eta A eta != A^T");
      }
  }
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto vals = eigendecompose(rmt_sample(256, 1.0, seed).matrix, false).values;
    double scale = 0;
    for (const cplx v : vals) scale = std::max(scale, std::abs(v));
    for (const cplx v : vals) {
      double best = 1e300;
      for (const cplx w : vals) best = std::min(best, std::abs(std::conj(v) - w));
      if (best > 1e-8 * scale) return fail("spectrum not conjugation-symmetric");
    }
  }

  double prev = -1;
  double ecc_min = 1e300, ecc_arg = -1;
  for (const double chi : {0.0, 0.5, 1.0, 2.0, 4.0}) {
    double fr_sum = 0, ecc_sum = 0;
    const int samples = 20;
    for (std::uint64_t seed = 0; seed < samples; ++seed) {
      const auto spec = spectrum_of(rmt_sample(256, chi, seed + 1000).matrix);
      double scale = 0;
      for (const cplx v : spec.eigenvalues) scale = std::max(scale, std::abs(v));
      fr_sum += real_fraction(spec, 1e-10 * scale);
      ecc_sum += eccentricity(spec, 1e-10 * scale);
    }
    const double fr = fr_sum / samples, ecc = ecc_sum / samples;
    if (chi == 0.0 && fr > 1.0 / 256) return fail("f_r(chi = 0) exceeds 1/n");
    if (fr < prev) return fail("f_r not monotone in chi");
    prev = fr;
    if (ecc < ecc_min) {
      ecc_min = ecc;
      ecc_arg = chi;
    }
  }
  if (ecc_arg != 1.0) return fail("eccentricity dip not at chi = 1");
}

void c8_invariant_suites() {
  std::mt19937_64 rng(424242);
  // Symplectic bilinearity of the anticommutation form.
  for (int t = 0; t < 500; ++t) {
    const auto a = testing::random_string(6, rng);
    const auto b = testing::random_string(6, rng);
    const auto c = testing::random_string(6, rng);
    if (anticommutes(a, multiply(b, c)) != (anticommutes(a, b) != anticommutes(a, c)))
      return fail("anticommutation form not bilinear");
  }

  // Fragment closure under every Lindbladian term.
  const auto tm = to_tilde(builtin_model("cluster_y", 6, 1.0, 0.8));
  const auto frag = all_x_fragment(tm);
  for (const auto& m : fragment_members(tm, frag)) {
    for (const auto& h : tm.base.hamiltonian)
      if (anticommutes(h.string, m) &&
          !fragment_contains(frag, multiply(h.string, m).canonical()))
        return fail("fragment not closed under a commutator term");
    for (const auto& j : tm.base.jumps)
      if (!fragment_contains(frag, multiply(j.string, multiply(m, j.string)).canonical()))
        return fail("fragment not closed under a dissipator");
  }

  // Pseudo-Hermitian pairing of a fragment spectrum.
  const auto gen = restrict_generator(tm, frag);
  const auto vals = eigendecompose(gen.matrix, false).values;
  double scale = 0;
  for (const cplx v : vals) scale = std::max(scale, std::abs(v));
  for (const cplx v : vals) {
    double best = 1e300;
    for (const cplx w : vals) best = std::min(best, std::abs(std::conj(v) - w));
    if (best > 1e-8 * scale) return fail("fragment spectrum not conjugation-paired");
  }

  // Spacing-ratio moduli bounded by one.
  std::uniform_real_distribution<double> u(-1, 1);
  std::vector<cplx> pts;
  for (int i = 0; i < 300; ++i) pts.push_back({u(rng), u(rng)});
  for (const cplx z : spacing_ratio_values(pts, pts))
    if (std::abs(z) > 1.0 + 1e-12) return fail("spacing ratio modulus above one");

  // Echo normalization.
  const auto echo = tfim_echo(theta_spec(6, 0.35), default_time_grid(theta_spec(6, 0.35).J));
  if (std::abs(echo.values.front() - 1.0) > 1e-12) return fail("echo does not start at one");
  for (const cplx v : echo.values)
    if (std::abs(v) > 1.0 + 1e-10) return fail("echo modulus above one");

  // The identity operator is stationary.
  const auto super = build_superoperator(to_tilde(builtin_model("cluster_ziz", 4, 1.0, 0.9)));
  for (std::size_t r = 0; r < super.matrix.rows(); ++r)
    if (std::abs(super.matrix(r, 0)) != 0.0) return fail("identity column not zero");
}

}  // namespace

int main() {
  criterion(1, "fragment counting", 1.0, c1_fragment_counting);
  criterion(2, "oracle block-diagonalization", 30.0, c2_oracle_blocks);
  criterion(3, "solvable-chain exactness", 10.0, c3_tfim_exactness);
  criterion(4, "zero mode and transition", 30.0, c4_zero_mode);
  criterion(5, "exceptional points and echo regimes", 120.0, c5_exceptional_points_and_echo);
  criterion(6, "chaos diagnostics", 300.0, c6_chaos_diagnostics);
  criterion(7, "random-matrix ensemble properties", 60.0, c7_rmt_ensemble);
  criterion(8, "invariant suites", 60.0, c8_invariant_suites);
  if (g_failures == 0) std::printf("all acceptance criteria passed\n");
  return g_failures;
}
