// Compares the serial reference kernels against their OpenMP variants and
// reports timings plus the max entrywise deviation (expected: exactly zero).

#include <chrono>
#include <cstdio>
#include <cstdlib>

#include "lindfrag/effective.hpp"
#include "lindfrag/fragments.hpp"
#include "lindfrag/model.hpp"
#include "lindfrag/oracle.hpp"

using namespace lindfrag;

namespace {

double seconds(const std::chrono::steady_clock::time_point& a,
               const std::chrono::steady_clock::time_point& b) {
  return std::chrono::duration<double>(b - a).count();
}

template <typename F>
double timed(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return seconds(t0, std::chrono::steady_clock::now());
}

}  // namespace

int main(int argc, char** argv) {
  int threads = 4;
  if (argc > 1) threads = std::atoi(argv[1]);
  if (threads < 2) threads = 2;
  std::printf("kernel,serial_s,parallel_s(threads=%d),speedup,max_diff\n", threads);

  {
    const auto tm = to_tilde(builtin_model("cluster_y", 13, 1.0, 0.8));
    PauliString seed(13);
    for (int s = 0; s < 13; ++s)
      if (tm.is_generator_site[s]) seed.set_letter(s, 'X');
    const auto frag = fragment_of(tm, seed);
    const auto gen = restrict_generator(tm, frag);
    CMatrix serial, parallel;
    const double ts = timed([&] { serial = materialize_terms(gen.terms, frag.active_sites.size(), 1); });
    const double tp =
        timed([&] { parallel = materialize_terms(gen.terms, frag.active_sites.size(), threads); });
    parallel -= serial;
    std::printf("materialize_terms(dim=%zu),%.4f,%.4f,%.2f,%g\n", (std::size_t)serial.rows(), ts,
                tp, ts / tp, parallel.max_abs());
  }

  {
    const auto tm = to_tilde(builtin_model("cluster_ziz", 5, 1.0, 0.5));
    SuperoperatorMatrix serial, parallel;
    const double ts = timed([&] { serial = build_superoperator(tm, 1); });
    const double tp = timed([&] { parallel = build_superoperator(tm, threads); });
    parallel.matrix -= serial.matrix;
    std::printf("build_superoperator(dim=%zu),%.4f,%.4f,%.2f,%g\n",
                (std::size_t)serial.matrix.rows(), ts, tp, ts / tp, parallel.matrix.max_abs());
  }
  return 0;
}
