#include <doctest.h>

#include <random>

#include "lindfrag/dense.hpp"
#include "lindfrag/linalg.hpp"
#include "lindfrag/pauli.hpp"

using namespace lindfrag;

namespace {

PauliString random_string(int n, std::mt19937_64& rng) {
  PauliString p(n);
  std::uniform_int_distribution<int> letter(0, 3), ph(0, 3);
  static const char letters[] = "IXYZ";
  for (int s = 0; s < n; ++s) p.set_letter(s, letters[letter(rng)]);
  p.set_phase_exp(ph(rng));
  return p;
}

// Random Clifford-style map from elementary symplectic moves.
SymplecticMap random_map(int n, std::mt19937_64& rng) {
  SymplecticMap m = SymplecticMap::identity(n);
  std::uniform_int_distribution<int> site(0, n - 1), move(0, 3);
  for (int step = 0; step < 30; ++step) {
    const int i = site(rng);
    switch (move(rng)) {
      case 0: std::swap(m.image_x[i], m.image_z[i]); break;
      case 1: m.image_x[i] = multiply(m.image_x[i], m.image_z[i]).canonical(); break;
      case 2: {
        int j = site(rng);
        if (j == i) break;
        m.image_x[i] = multiply(m.image_x[i], m.image_x[j]).canonical();
        m.image_z[j] = multiply(m.image_z[j], m.image_z[i]).canonical();
        break;
      }
      case 3:
        m.image_x[i].set_phase_exp(m.image_x[i].phase_exp() + 2);
        break;
    }
  }
  return m;
}

double dense_diff(const CMatrix& a, const CMatrix& b) {
  CMatrix d = a;
  d -= b;
  return d.max_abs();
}

}  // namespace

TEST_CASE("single-qubit algebra") {
  const auto X = PauliString::parse("X");
  const auto Y = PauliString::parse("Y");
  const auto Z = PauliString::parse("Z");
  CHECK(anticommutes(X, Z));
  CHECK(!anticommutes(X, X));
  CHECK(multiply(X, Z).str() == "-iY");
  CHECK(multiply(X, Y).str() == "+iZ");
  CHECK(multiply(Y, Y).str() == "I");
}

TEST_CASE("three-site examples") {
  const auto y2 = PauliString::parse("IYI");
  const auto zxz = PauliString::parse("ZXZ");
  CHECK(anticommutes(y2, zxz));
  CHECK(conjugation_sign(y2, PauliString::parse("IXI")) == -1);
  CHECK(conjugation_sign(PauliString::parse("ZIZ"), PauliString::parse("III")) == 1);
}

TEST_CASE("identity multiply and parse round trip") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const auto p = random_string(6, rng);
    const auto id = PauliString::identity(6);
    CHECK(multiply(id, p) == p);
    CHECK(PauliString::parse(p.str()) == p);
  }
}

TEST_CASE("multiply matches the dense oracle") {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 4);
    const auto a = random_string(n, rng);
    const auto b = random_string(n, rng);
    const auto prod = multiply(a, b);
    CHECK(dense_diff(dense_matrix(a) * dense_matrix(b), dense_matrix(prod)) < 1e-12);
  }
}

TEST_CASE("conjugation sign matches the dense oracle and ignores phases") {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 3);
    auto f = random_string(n, rng).canonical();
    const auto m = random_string(n, rng);
    const int eps = conjugation_sign(f, m);
    const auto fd = dense_matrix(f);
    const auto md = dense_matrix(m);
    CHECK(dense_diff(fd * md * fd, cplx{static_cast<double>(eps), 0} * md) < 1e-12);
    auto f2 = f;
    f2.set_phase_exp(f.phase_exp() + 2);
    auto m2 = m;
    m2.set_phase_exp(m.phase_exp() + 1);
    CHECK(conjugation_sign(f2, m2) == eps);
  }
}

TEST_CASE("symplectic bilinearity") {
  std::mt19937_64 rng(44);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 12);
    const auto a = random_string(n, rng);
    const auto b = random_string(n, rng);
    const auto c = random_string(n, rng);
    CHECK(anticommutes(a, multiply(b, c)) == (anticommutes(a, b) != anticommutes(a, c)));
  }
}

TEST_CASE("hermiticity and canonical form") {
  const auto y = PauliString::parse("Y");
  CHECK(y.is_hermitian());
  CHECK(y.sign_exp() == 0);
  const auto minus_y = PauliString::parse("-Y");
  CHECK(minus_y.is_hermitian());
  CHECK(minus_y.sign_exp() == 2);
  CHECK(minus_y.canonical() == y);
  const auto xz = multiply(PauliString::parse("X"), PauliString::parse("Z"));
  CHECK(xz.str() == "-iY");
  CHECK(!xz.is_hermitian());
  CHECK(xz.canonical().str() == "Y");
}

TEST_CASE("dense rendering cap") {
  CHECK_THROWS(dense_matrix(PauliString::identity(15)));
}

TEST_CASE("symplectic maps: identity, form preservation, inverse round trip") {
  std::mt19937_64 rng(55);
  const auto id = SymplecticMap::identity(4);
  CHECK(id.is_identity());
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 4);
    const auto map = random_map(n, rng);
    CHECK(map.preserves_symplectic_form());
    const auto inv = map.inverse();
    for (int k = 0; k < 10; ++k) {
      const auto p = random_string(n, rng);
      CHECK(inv.apply(map.apply(p)) == p);
      CHECK(map.apply(inv.apply(p)) == p);
      const auto q = random_string(n, rng);
      CHECK(anticommutes(map.apply(p), map.apply(q)) == anticommutes(p, q));
    }
  }
}

TEST_CASE("apply_map is multiplicative including phases") {
  std::mt19937_64 rng(66);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 3);
    const auto map = random_map(n, rng);
    const auto a = random_string(n, rng);
    const auto b = random_string(n, rng);
    CHECK(map.apply(multiply(a, b)) == multiply(map.apply(a), map.apply(b)));
  }
}
