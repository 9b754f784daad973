// Copyright 2026 The vqos Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace vqos {

using Complex = std::complex<double>;
using DenseMatrix = Eigen::MatrixXcd;
using StateVector = Eigen::VectorXcd;

/// Largest qubit count for which dense 2^n x 2^n materialization is allowed.
inline constexpr int kDenseQubitLimit = 12;

/// Largest qubit count representable by the symplectic bit masks.
inline constexpr int kMaxQubits = 64;

/**
 * An n-qubit Pauli string: phase * (W_0 tensor W_1 tensor ... tensor W_{n-1})
 * with letters W_q in {I, X, Y, Z} and phase in {+1, +i, -1, -i}.
 *
 * Letters are stored as a symplectic (x, z) bit-mask pair, bit q describing
 * qubit q: (0,0)=I, (1,0)=X, (1,1)=Y, (0,1)=Z. Products cost O(n) and
 * commutation queries O(1) popcounts. The phase is a base-i exponent.
 *
 * In dense form qubit 0 is the leftmost tensor factor, i.e. the most
 * significant bit of the matrix index. Instances are immutable values.
 */
class PauliString {
 public:
  /// Identity string on `n_qubits` qubits, phase +1.
  explicit PauliString(int n_qubits);

  /// Builds a phase-free string from letters, e.g. "XXI" (letter q = qubit q).
  static PauliString from_letters(std::string_view letters);

  static PauliString identity(int n_qubits) { return PauliString(n_qubits); }

  int n_qubits() const { return n_qubits_; }
  std::uint64_t x_mask() const { return x_; }
  std::uint64_t z_mask() const { return z_; }

  /// Phase exponent e, the string carrying an overall factor i^e.
  int phase_exponent() const { return phase_exp_; }
  Complex phase() const;
  bool is_phase_free() const { return phase_exp_ == 0; }

  /// True when every letter is I (the phase may still be nontrivial).
  bool is_identity_letters() const { return x_ == 0 && z_ == 0; }

  char letter(int qubit) const;
  std::string letters() const;

  /// Same letters, phase reset to +1.
  PauliString without_phase() const;

  /// Copy multiplied by i^k.
  PauliString with_extra_phase(int i_exponent) const;

  /// Same letters acting on the first n_qubits of a wider register
  /// (dense form: this tensor identity on the appended qubits).
  PauliString embedded(int new_n_qubits) const;

  /// Letter-wise commutation: two Pauli strings either commute or
  /// anticommute; decided by the symplectic form, phases irrelevant.
  bool commutes_with(const PauliString& other) const;

  /// Exact product with accumulated phase. Associative.
  friend PauliString operator*(const PauliString& a, const PauliString& b);

  bool operator==(const PauliString& other) const = default;

  /// Canonical sort key: letters only, lexicographic on the (x, z) bits.
  friend bool letters_less(const PauliString& a, const PauliString& b) {
    return std::pair(a.x_, a.z_) < std::pair(b.x_, b.z_);
  }

  /// Dense 2^n x 2^n materialization. Throws when n exceeds the dense limit.
  DenseMatrix to_dense() const;

  /// this * v without materializing the matrix (signed permutation of v).
  StateVector apply(const StateVector& v) const;

  /// this * m, applied row-wise in O(4^n).
  DenseMatrix apply_left(const DenseMatrix& m) const;

  /// m * this, applied column-wise in O(4^n).
  DenseMatrix apply_right(const DenseMatrix& m) const;

  /// Tr(m * this) in O(2^n): one gathered entry per row of m.
  Complex trace_with(const DenseMatrix& m) const;

  /// E.g. "+XXI", "-iZY".
  std::string to_string() const;

 private:
  PauliString(int n_qubits, std::uint64_t x, std::uint64_t z, int phase_exp)
      : n_qubits_(n_qubits), x_(x), z_(z), phase_exp_(phase_exp) {}

  // Index-space flip mask and the i-exponent of the entry in column `col`:
  // P|col> = i^exp |col ^ flip>.
  std::uint64_t index_flip_mask() const;
  int column_phase_exponent(std::uint64_t col_index) const;

  int n_qubits_;
  std::uint64_t x_ = 0;
  std::uint64_t z_ = 0;
  int phase_exp_ = 0;  // 0..3
};

struct PauliTerm {
  double coefficient;
  PauliString string;  // always phase-free
};

/**
 * Real-weighted linear combination of phase-free Pauli strings; Hermitian by
 * construction. Terms are kept canonical: sorted lexicographically on the
 * (x, z) bits, duplicates merged by coefficient addition, exact zeros dropped.
 */
class PauliSum {
 public:
  explicit PauliSum(int n_qubits);

  /// Adds coefficient * string. A +-1 phase on the string folds into the
  /// coefficient; imaginary phases are rejected (they would break Hermiticity).
  void add(double coefficient, const PauliString& string);

  int n_qubits() const { return n_qubits_; }
  const std::vector<PauliTerm>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }

  /// True when no identity term is present, i.e. the dense form is traceless.
  bool is_traceless() const;

  /// Copy with any identity term removed; returns the removed coefficient.
  std::pair<PauliSum, double> split_identity() const;

  /// All strings extended to a wider register (dense form: H tensor I).
  PauliSum embedded(int new_n_qubits) const;

  /// Dense Hermitian 2^n x 2^n matrix, sum of coefficient * dense(string).
  DenseMatrix to_dense() const;

  /// sum * v without dense materialization.
  StateVector apply(const StateVector& v) const;

 private:
  int n_qubits_;
  std::vector<PauliTerm> terms_;
};

/**
 * Parses the one-term-per-line text format `<coefficient> <letters>`,
 * e.g. `-0.5 XXI`. Blank lines and lines starting with '#' are skipped.
 * All letter strings must share one length, which fixes n_qubits.
 */
PauliSum parse_pauli_sum(std::istream& in);
PauliSum parse_pauli_sum(const std::string& text);

/// Inverse of parse_pauli_sum, one term per line in canonical order.
std::string format_pauli_sum(const PauliSum& sum);

}  // namespace vqos
