// Copyright 2026 The vqos Authors
// SPDX-License-Identifier: Apache-2.0

#include "vqos/pauli.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <istream>
#include <sstream>
#include <stdexcept>

namespace vqos {

namespace {

void check_qubit_count(int n_qubits) {
  if (n_qubits < 1 || n_qubits > kMaxQubits) {
    throw std::invalid_argument("PauliString: n_qubits must be in [1, " +
                                std::to_string(kMaxQubits) + "], got " +
                                std::to_string(n_qubits));
  }
}

void check_dense_limit(int n_qubits) {
  if (n_qubits > kDenseQubitLimit) {
    throw std::invalid_argument(
        "dense materialization limited to " +
        std::to_string(kDenseQubitLimit) + " qubits, got " +
        std::to_string(n_qubits));
  }
}

Complex i_power(int e) {
  switch (e & 3) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

}  // namespace

PauliString::PauliString(int n_qubits) : n_qubits_(n_qubits) {
  check_qubit_count(n_qubits);
}

PauliString PauliString::from_letters(std::string_view letters) {
  check_qubit_count(static_cast<int>(letters.size()));
  std::uint64_t x = 0;
  std::uint64_t z = 0;
  for (std::size_t q = 0; q < letters.size(); ++q) {
    const std::uint64_t bit = std::uint64_t{1} << q;
    switch (letters[q]) {
      case 'I': break;
      case 'X': x |= bit; break;
      case 'Y': x |= bit; z |= bit; break;
      case 'Z': z |= bit; break;
      default:
        throw std::invalid_argument(
            std::string("PauliString: invalid letter '") + letters[q] +
            "', expected one of I, X, Y, Z");
    }
  }
  return PauliString(static_cast<int>(letters.size()), x, z, 0);
}

Complex PauliString::phase() const { return i_power(phase_exp_); }

char PauliString::letter(int qubit) const {
  if (qubit < 0 || qubit >= n_qubits_) {
    throw std::out_of_range("PauliString: qubit index out of range");
  }
  const bool x = (x_ >> qubit) & 1;
  const bool z = (z_ >> qubit) & 1;
  if (x && z) return 'Y';
  if (x) return 'X';
  if (z) return 'Z';
  return 'I';
}

std::string PauliString::letters() const {
  std::string out(static_cast<std::size_t>(n_qubits_), 'I');
  for (int q = 0; q < n_qubits_; ++q) out[static_cast<std::size_t>(q)] = letter(q);
  return out;
}

PauliString PauliString::without_phase() const {
  return PauliString(n_qubits_, x_, z_, 0);
}

PauliString PauliString::with_extra_phase(int i_exponent) const {
  return PauliString(n_qubits_, x_, z_, (phase_exp_ + i_exponent) & 3);
}

PauliString PauliString::embedded(int new_n_qubits) const {
  if (new_n_qubits < n_qubits_) {
    throw std::invalid_argument("PauliString: cannot embed into fewer qubits");
  }
  check_qubit_count(new_n_qubits);
  return PauliString(new_n_qubits, x_, z_, phase_exp_);
}

bool PauliString::commutes_with(const PauliString& other) const {
  if (n_qubits_ != other.n_qubits_) {
    throw std::invalid_argument("PauliString: qubit count mismatch");
  }
  const int anti = std::popcount(x_ & other.z_) + std::popcount(z_ & other.x_);
  return (anti & 1) == 0;
}

PauliString operator*(const PauliString& a, const PauliString& b) {
  if (a.n_qubits_ != b.n_qubits_) {
    throw std::invalid_argument("PauliString: qubit count mismatch in product");
  }
  const std::uint64_t x3 = a.x_ ^ b.x_;
  const std::uint64_t z3 = a.z_ ^ b.z_;
  // Per qubit, with W(x,z) = i^{xz} X^x Z^z:
  //   W(x1,z1) W(x2,z2) = i^{x1 z1 + x2 z2 + 2 z1 x2 - x3 z3} W(x3,z3).
  int e = a.phase_exp_ + b.phase_exp_;
  e += std::popcount(a.x_ & a.z_) + std::popcount(b.x_ & b.z_);
  e += 2 * std::popcount(a.z_ & b.x_);
  e += 4 * kMaxQubits - std::popcount(x3 & z3);
  return PauliString(a.n_qubits_, x3, z3, e & 3);
}

std::uint64_t PauliString::index_flip_mask() const {
  std::uint64_t flip = 0;
  for (int q = 0; q < n_qubits_; ++q) {
    if ((x_ >> q) & 1) flip |= std::uint64_t{1} << (n_qubits_ - 1 - q);
  }
  return flip;
}

int PauliString::column_phase_exponent(std::uint64_t col_index) const {
  // P|b> = i^{e + #Y} (-1)^{z.b} |b ^ flip>, with b read MSB-first.
  std::uint64_t z_index = 0;
  for (int q = 0; q < n_qubits_; ++q) {
    if ((z_ >> q) & 1) z_index |= std::uint64_t{1} << (n_qubits_ - 1 - q);
  }
  int e = phase_exp_ + std::popcount(x_ & z_);
  e += 2 * std::popcount(z_index & col_index);
  return e & 3;
}

DenseMatrix PauliString::to_dense() const {
  check_dense_limit(n_qubits_);
  const std::int64_t dim = std::int64_t{1} << n_qubits_;
  const std::uint64_t flip = index_flip_mask();
  DenseMatrix m = DenseMatrix::Zero(dim, dim);
  for (std::int64_t col = 0; col < dim; ++col) {
    const auto row = static_cast<std::int64_t>(
        static_cast<std::uint64_t>(col) ^ flip);
    m(row, col) = i_power(column_phase_exponent(static_cast<std::uint64_t>(col)));
  }
  return m;
}

StateVector PauliString::apply(const StateVector& v) const {
  check_dense_limit(n_qubits_);
  const std::int64_t dim = std::int64_t{1} << n_qubits_;
  if (v.size() != dim) {
    throw std::invalid_argument("PauliString::apply: state dimension mismatch");
  }
  const std::uint64_t flip = index_flip_mask();
  StateVector out(dim);
  for (std::int64_t row = 0; row < dim; ++row) {
    const std::uint64_t col = static_cast<std::uint64_t>(row) ^ flip;
    out(row) = i_power(column_phase_exponent(col)) *
               v(static_cast<std::int64_t>(col));
  }
  return out;
}

DenseMatrix PauliString::apply_left(const DenseMatrix& m) const {
  check_dense_limit(n_qubits_);
  const std::int64_t dim = std::int64_t{1} << n_qubits_;
  if (m.rows() != dim) {
    throw std::invalid_argument("PauliString::apply_left: dimension mismatch");
  }
  const std::uint64_t flip = index_flip_mask();
  DenseMatrix out(dim, m.cols());
  for (std::int64_t row = 0; row < dim; ++row) {
    const std::uint64_t col = static_cast<std::uint64_t>(row) ^ flip;
    out.row(row) = i_power(column_phase_exponent(col)) *
                   m.row(static_cast<std::int64_t>(col));
  }
  return out;
}

DenseMatrix PauliString::apply_right(const DenseMatrix& m) const {
  check_dense_limit(n_qubits_);
  const std::int64_t dim = std::int64_t{1} << n_qubits_;
  if (m.cols() != dim) {
    throw std::invalid_argument("PauliString::apply_right: dimension mismatch");
  }
  const std::uint64_t flip = index_flip_mask();
  DenseMatrix out(m.rows(), dim);
  for (std::int64_t col = 0; col < dim; ++col) {
    const auto row = static_cast<std::int64_t>(
        static_cast<std::uint64_t>(col) ^ flip);
    out.col(col) = i_power(column_phase_exponent(static_cast<std::uint64_t>(col))) *
                   m.col(row);
  }
  return out;
}

Complex PauliString::trace_with(const DenseMatrix& m) const {
  check_dense_limit(n_qubits_);
  const std::int64_t dim = std::int64_t{1} << n_qubits_;
  if (m.rows() != dim || m.cols() != dim) {
    throw std::invalid_argument("PauliString::trace_with: dimension mismatch");
  }
  const std::uint64_t flip = index_flip_mask();
  Complex tr = 0.0;
  for (std::int64_t col = 0; col < dim; ++col) {
    const auto row = static_cast<std::int64_t>(
        static_cast<std::uint64_t>(col) ^ flip);
    tr += m(col, row) * i_power(column_phase_exponent(static_cast<std::uint64_t>(col)));
  }
  return tr;
}

std::string PauliString::to_string() const {
  static constexpr const char* kPrefix[4] = {"+", "+i", "-", "-i"};
  return std::string(kPrefix[phase_exp_ & 3]) + letters();
}

PauliSum::PauliSum(int n_qubits) : n_qubits_(n_qubits) {
  check_qubit_count(n_qubits);
}

void PauliSum::add(double coefficient, const PauliString& string) {
  if (string.n_qubits() != n_qubits_) {
    throw std::invalid_argument("PauliSum: qubit count mismatch");
  }
  if (!std::isfinite(coefficient)) {
    throw std::invalid_argument("PauliSum: non-finite coefficient");
  }
  double coeff = coefficient;
  switch (string.phase_exponent() & 3) {
    case 0: break;
    case 2: coeff = -coeff; break;
    default:
      throw std::invalid_argument(
          "PauliSum: imaginary phase on term would break Hermiticity");
  }
  const PauliString key = string.without_phase();
  auto it = std::lower_bound(
      terms_.begin(), terms_.end(), key,
      [](const PauliTerm& t, const PauliString& s) { return letters_less(t.string, s); });
  if (it != terms_.end() && it->string == key) {
    it->coefficient += coeff;
    if (it->coefficient == 0.0) terms_.erase(it);
  } else if (coeff != 0.0) {
    terms_.insert(it, PauliTerm{coeff, key});
  }
}

bool PauliSum::is_traceless() const {
  for (const auto& t : terms_) {
    if (t.string.is_identity_letters()) return false;
  }
  return true;
}

std::pair<PauliSum, double> PauliSum::split_identity() const {
  PauliSum rest(n_qubits_);
  double identity_coeff = 0.0;
  for (const auto& t : terms_) {
    if (t.string.is_identity_letters()) {
      identity_coeff += t.coefficient;
    } else {
      rest.add(t.coefficient, t.string);
    }
  }
  return {rest, identity_coeff};
}

PauliSum PauliSum::embedded(int new_n_qubits) const {
  PauliSum out(new_n_qubits);
  for (const auto& t : terms_) out.add(t.coefficient, t.string.embedded(new_n_qubits));
  return out;
}

DenseMatrix PauliSum::to_dense() const {
  check_dense_limit(n_qubits_);
  const std::int64_t dim = std::int64_t{1} << n_qubits_;
  DenseMatrix m = DenseMatrix::Zero(dim, dim);
  for (const auto& t : terms_) m += t.coefficient * t.string.to_dense();
  return m;
}

StateVector PauliSum::apply(const StateVector& v) const {
  check_dense_limit(n_qubits_);
  StateVector out = StateVector::Zero(v.size());
  for (const auto& t : terms_) out += t.coefficient * t.string.apply(v);
  return out;
}

PauliSum parse_pauli_sum(std::istream& in) {
  std::vector<std::pair<double, std::string>> rows;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    double coeff = 0.0;
    std::string letters;
    if (!(ls >> coeff >> letters)) {
      throw std::invalid_argument("pauli sum line " + std::to_string(line_no) +
                                  ": expected `<coefficient> <letters>`");
    }
    std::string trailing;
    if (ls >> trailing) {
      throw std::invalid_argument("pauli sum line " + std::to_string(line_no) +
                                  ": unexpected trailing token `" + trailing + "`");
    }
    rows.emplace_back(coeff, letters);
  }
  if (rows.empty()) {
    throw std::invalid_argument("pauli sum: no terms found");
  }
  const std::size_t width = rows.front().second.size();
  for (const auto& [coeff, letters] : rows) {
    if (letters.size() != width) {
      throw std::invalid_argument("pauli sum: inconsistent string lengths (" +
                                  std::to_string(width) + " vs " +
                                  std::to_string(letters.size()) + ")");
    }
  }
  PauliSum sum(static_cast<int>(width));
  for (const auto& [coeff, letters] : rows) {
    sum.add(coeff, PauliString::from_letters(letters));
  }
  return sum;
}

PauliSum parse_pauli_sum(const std::string& text) {
  std::istringstream in(text);
  return parse_pauli_sum(in);
}

std::string format_pauli_sum(const PauliSum& sum) {
  std::string out;
  char buf[64];
  for (const auto& t : sum.terms()) {
    std::snprintf(buf, sizeof(buf), "%.17g ", t.coefficient);
    out += buf;
    out += t.string.letters();
    out += '\n';
  }
  return out;
}

}  // namespace vqos
