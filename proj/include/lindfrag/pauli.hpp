#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace lindfrag {

// Signed N-qubit Pauli string in the symplectic (X|Z) binary representation.
// The operator is i^phase_exp * X^{x} Z^{z}, site-wise; bits are packed into
// 64-bit words so that commutation checks reduce to popcounts.
class PauliString {
 public:
  explicit PauliString(int n_qubits);

  static PauliString identity(int n_qubits);
  // Single-site operator, p one of 'I', 'X', 'Y', 'Z'.
  static PauliString single(int n_qubits, int site, char p);
  // Parses "[sign]P1P2...PN" where sign is one of "+", "-", "+i", "-i"
  // and each Pi is in {I,X,Y,Z}. Inverse of str().
  static PauliString parse(std::string_view text);

  int n_qubits() const { return n_; }
  bool x(int site) const;
  bool z(int site) const;
  void set_x(int site, bool v);
  void set_z(int site, bool v);
  // Pauli letter at a site, one of 'I', 'X', 'Y', 'Z' (sign ignored).
  char letter(int site) const;
  void set_letter(int site, char p);

  // Exponent e of the global phase i^e, e in {0,1,2,3}.
  int phase_exp() const { return phase_; }
  void set_phase_exp(int e) { phase_ = static_cast<std::uint8_t>(((e % 4) + 4) % 4); }
  std::complex<double> phase() const;

  // True when all bits are zero (sign may still be nontrivial).
  bool is_identity_bits() const;
  // Number of non-identity sites.
  int weight() const;
  // Number of Y sites (x and z bit both set).
  int y_count() const;

  bool is_hermitian() const;
  // Leading sign in IXYZ notation: i^{phase_exp - y_count}. 0..3 as power of i.
  int sign_exp() const;
  // Resets the phase so the string is Hermitian with leading sign +1.
  PauliString canonical() const;

  std::string str() const;

  bool operator==(const PauliString& o) const;
  bool operator!=(const PauliString& o) const { return !(*this == o); }
  // Same letters at every site, phases ignored.
  bool same_bits(const PauliString& o) const;

  // Lexicographic key over per-site letters with I < X < Y < Z; ignores phase.
  std::uint64_t lex_key() const;

  const std::vector<std::uint64_t>& x_words() const { return x_; }
  const std::vector<std::uint64_t>& z_words() const { return z_; }

 private:
  int n_;
  std::vector<std::uint64_t> x_, z_;
  std::uint8_t phase_ = 0;

  friend bool anticommutes(const PauliString&, const PauliString&);
  friend PauliString multiply(const PauliString&, const PauliString&);
};

// True iff the symplectic inner product a.x*b.z + a.z*b.x is odd.
bool anticommutes(const PauliString& a, const PauliString& b);

// Operator product a*b with the phase tracked exactly.
PauliString multiply(const PauliString& a, const PauliString& b);

// Sign eps with f m f = eps m, for Hermitian involutory f. Equals
// (-1)^{<f,m>} and depends only on the symplectic inner product.
int conjugation_sign(const PauliString& f, const PauliString& m);

// Basis map acting on Pauli strings: images of the 2N generators X_j, Z_j.
// Preserves the symplectic form, so commutation relations are preserved.
struct SymplecticMap {
  int n_qubits = 0;
  std::vector<PauliString> image_x;  // image of X_j
  std::vector<PauliString> image_z;  // image of Z_j

  static SymplecticMap identity(int n_qubits);
  PauliString apply(const PauliString& p) const;
  SymplecticMap inverse() const;
  bool is_identity() const;
  // Checks image pairs anticommute exactly where the preimages do.
  bool preserves_symplectic_form() const;
};

}  // namespace lindfrag
