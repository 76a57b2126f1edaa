#include "lindfrag/pauli.hpp"

#include <bit>
#include <stdexcept>

namespace lindfrag {

namespace {

int parity_of_and(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b) {
  std::uint64_t acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i) acc ^= a[i] & b[i];
  return std::popcount(acc) & 1;
}

int popcount_and(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b) {
  int c = 0;
  for (std::size_t i = 0; i < a.size(); ++i) c += std::popcount(a[i] & b[i]);
  return c;
}

}  // namespace

PauliString::PauliString(int n_qubits) : n_(n_qubits) {
  if (n_qubits <= 0) throw std::invalid_argument("PauliString: n_qubits must be positive");
  const std::size_t words = (static_cast<std::size_t>(n_qubits) + 63) / 64;
  x_.assign(words, 0);
  z_.assign(words, 0);
}

PauliString PauliString::identity(int n_qubits) { return PauliString(n_qubits); }

PauliString PauliString::single(int n_qubits, int site, char p) {
  PauliString s(n_qubits);
  s.set_letter(site, p);
  s.set_phase_exp(s.y_count());
  return s;
}

bool PauliString::x(int site) const { return (x_[site / 64] >> (site % 64)) & 1u; }
bool PauliString::z(int site) const { return (z_[site / 64] >> (site % 64)) & 1u; }

void PauliString::set_x(int site, bool v) {
  const std::uint64_t m = std::uint64_t{1} << (site % 64);
  if (v)
    x_[site / 64] |= m;
  else
    x_[site / 64] &= ~m;
}

void PauliString::set_z(int site, bool v) {
  const std::uint64_t m = std::uint64_t{1} << (site % 64);
  if (v)
    z_[site / 64] |= m;
  else
    z_[site / 64] &= ~m;
}

char PauliString::letter(int site) const {
  const bool xb = x(site), zb = z(site);
  if (xb && zb) return 'Y';
  if (xb) return 'X';
  if (zb) return 'Z';
  return 'I';
}

void PauliString::set_letter(int site, char p) {
  switch (p) {
    case 'I': set_x(site, false); set_z(site, false); break;
    case 'X': set_x(site, true); set_z(site, false); break;
    case 'Y': set_x(site, true); set_z(site, true); break;
    case 'Z': set_x(site, false); set_z(site, true); break;
    default: throw std::invalid_argument("PauliString: bad letter");
  }
}

std::complex<double> PauliString::phase() const {
  static const std::complex<double> table[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return table[phase_];
}

bool PauliString::is_identity_bits() const {
  for (std::size_t i = 0; i < x_.size(); ++i)
    if (x_[i] | z_[i]) return false;
  return true;
}

int PauliString::weight() const {
  int c = 0;
  for (std::size_t i = 0; i < x_.size(); ++i) c += std::popcount(x_[i] | z_[i]);
  return c;
}

int PauliString::y_count() const { return popcount_and(x_, z_); }

bool PauliString::is_hermitian() const { return ((phase_ - y_count()) & 1) == 0; }

int PauliString::sign_exp() const { return ((phase_ - y_count()) % 4 + 4) % 4; }

PauliString PauliString::canonical() const {
  PauliString r = *this;
  r.set_phase_exp(y_count());
  return r;
}

std::string PauliString::str() const {
  static const char* signs[4] = {"", "+i", "-", "-i"};
  std::string out = signs[sign_exp()];
  out.reserve(out.size() + static_cast<std::size_t>(n_));
  for (int s = 0; s < n_; ++s) out.push_back(letter(s));
  return out;
}

PauliString PauliString::parse(std::string_view text) {
  int sign = 0;
  std::size_t pos = 0;
  auto starts = [&](std::string_view p) { return text.substr(pos, p.size()) == p; };
  if (starts("+i")) { sign = 1; pos = 2; }
  else if (starts("-i")) { sign = 3; pos = 2; }
  else if (starts("+")) { sign = 0; pos = 1; }
  else if (starts("-")) { sign = 2; pos = 1; }
  const std::string_view body = text.substr(pos);
  if (body.empty()) throw std::invalid_argument("PauliString::parse: empty body");
  PauliString s(static_cast<int>(body.size()));
  for (std::size_t i = 0; i < body.size(); ++i) s.set_letter(static_cast<int>(i), body[i]);
  s.set_phase_exp(sign + s.y_count());
  return s;
}

bool PauliString::operator==(const PauliString& o) const {
  return n_ == o.n_ && phase_ == o.phase_ && x_ == o.x_ && z_ == o.z_;
}

bool PauliString::same_bits(const PauliString& o) const {
  return n_ == o.n_ && x_ == o.x_ && z_ == o.z_;
}

std::uint64_t PauliString::lex_key() const {
  if (n_ > 32) throw std::invalid_argument("PauliString::lex_key: n_qubits > 32");
  std::uint64_t key = 0;
  for (int s = 0; s < n_; ++s) {
    // I<X<Y<Z
    static const int ord[2][2] = {{0, 3}, {1, 2}};  // [x][z]
    key = key * 4 + static_cast<std::uint64_t>(ord[x(s)][z(s)]);
  }
  return key;
}

bool anticommutes(const PauliString& a, const PauliString& b) {
  if (a.n_ != b.n_) throw std::invalid_argument("anticommutes: length mismatch");
  return (parity_of_and(a.x_, b.z_) ^ parity_of_and(a.z_, b.x_)) != 0;
}

PauliString multiply(const PauliString& a, const PauliString& b) {
  if (a.n_ != b.n_) throw std::invalid_argument("multiply: length mismatch");
  PauliString r(a.n_);
  // X^{xa}Z^{za} X^{xb}Z^{zb} = (-1)^{za.xb} X^{xa^xb} Z^{za^zb}
  const int swap_parity = parity_of_and(a.z_, b.x_);
  for (std::size_t i = 0; i < r.x_.size(); ++i) {
    r.x_[i] = a.x_[i] ^ b.x_[i];
    r.z_[i] = a.z_[i] ^ b.z_[i];
  }
  r.set_phase_exp(a.phase_ + b.phase_ + 2 * swap_parity);
  return r;
}

int conjugation_sign(const PauliString& f, const PauliString& m) {
  if (f.n_qubits() != m.n_qubits()) throw std::invalid_argument("conjugation_sign: length mismatch");
  if (!f.is_hermitian()) throw std::invalid_argument("conjugation_sign: f must be Hermitian (then f^2 = 1)");
  return anticommutes(f, m) ? -1 : 1;
}

SymplecticMap SymplecticMap::identity(int n_qubits) {
  SymplecticMap m;
  m.n_qubits = n_qubits;
  m.image_x.reserve(n_qubits);
  m.image_z.reserve(n_qubits);
  for (int s = 0; s < n_qubits; ++s) {
    m.image_x.push_back(PauliString::single(n_qubits, s, 'X'));
    m.image_z.push_back(PauliString::single(n_qubits, s, 'Z'));
  }
  return m;
}

PauliString SymplecticMap::apply(const PauliString& p) const {
  if (p.n_qubits() != n_qubits) throw std::invalid_argument("SymplecticMap::apply: dimension mismatch");
  PauliString r = PauliString::identity(n_qubits);
  r.set_phase_exp(p.phase_exp());
  for (int s = 0; s < n_qubits; ++s)
    if (p.x(s)) r = multiply(r, image_x[s]);
  for (int s = 0; s < n_qubits; ++s)
    if (p.z(s)) r = multiply(r, image_z[s]);
  return r;
}

bool SymplecticMap::is_identity() const {
  for (int s = 0; s < n_qubits; ++s) {
    if (image_x[s] != PauliString::single(n_qubits, s, 'X')) return false;
    if (image_z[s] != PauliString::single(n_qubits, s, 'Z')) return false;
  }
  return true;
}

bool SymplecticMap::preserves_symplectic_form() const {
  auto basis = [&](int i) {
    return i < n_qubits ? PauliString::single(n_qubits, i, 'X')
                        : PauliString::single(n_qubits, i - n_qubits, 'Z');
  };
  auto image = [&](int i) { return i < n_qubits ? image_x[i] : image_z[i - n_qubits]; };
  for (int i = 0; i < 2 * n_qubits; ++i)
    for (int j = i + 1; j < 2 * n_qubits; ++j)
      if (anticommutes(basis(i), basis(j)) != anticommutes(image(i), image(j))) return false;
  return true;
}

SymplecticMap SymplecticMap::inverse() const {
  const int n = n_qubits;
  const int dim = 2 * n;
  // Columns of the binary matrix are the (x|z) vectors of the images.
  std::vector<std::vector<std::uint8_t>> mat(dim, std::vector<std::uint8_t>(2 * dim, 0));
  for (int j = 0; j < dim; ++j) {
    const PauliString& img = j < n ? image_x[j] : image_z[j - n];
    for (int s = 0; s < n; ++s) {
      mat[s][j] = img.x(s);
      mat[n + s][j] = img.z(s);
    }
  }
  // Augment with the identity and row-reduce over GF(2).
  for (int i = 0; i < dim; ++i) mat[i][dim + i] = 1;
  int row = 0;
  for (int col = 0; col < dim && row < dim; ++col) {
    int pivot = -1;
    for (int r = row; r < dim; ++r)
      if (mat[r][col]) { pivot = r; break; }
    if (pivot < 0) continue;
    std::swap(mat[row], mat[pivot]);
    for (int r = 0; r < dim; ++r) {
      if (r == row || !mat[r][col]) continue;
      for (int c = 0; c < 2 * dim; ++c) mat[r][c] ^= mat[row][c];
    }
    ++row;
  }
  if (row != dim) throw std::runtime_error("SymplecticMap::inverse: singular matrix");

  SymplecticMap inv;
  inv.n_qubits = n;
  inv.image_x.reserve(n);
  inv.image_z.reserve(n);
  auto preimage = [&](int j) {
    PauliString q(n);
    for (int s = 0; s < n; ++s) {
      q.set_x(s, mat[s][dim + j]);
      q.set_z(s, mat[n + s][dim + j]);
    }
    // Fix the phase so that apply(q) is exactly the basis string.
    PauliString round_trip = apply(q.canonical());
    q.set_phase_exp(q.canonical().phase_exp() - round_trip.phase_exp());
    return q;
  };
  for (int j = 0; j < n; ++j) inv.image_x.push_back(preimage(j));
  for (int j = 0; j < n; ++j) inv.image_z.push_back(preimage(n + j));
  return inv;
}

}  // namespace lindfrag
