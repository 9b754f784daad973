// Copyright 2026 The vqos Authors
// SPDX-License-Identifier: Apache-2.0

#include "vqos/ansatz.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace vqos {

namespace {

constexpr Complex kImag{0.0, 1.0};

void check_theta(const Ansatz& a, const ParameterVector& theta) {
  if (theta.size() != a.num_parameters()) {
    throw std::invalid_argument(
        "parameter vector length " + std::to_string(theta.size()) +
        " does not match ansatz with " + std::to_string(a.num_parameters()) +
        " gates");
  }
}

// m <- R m with R = cos(t) I + i sin(t) G; the G m part is a signed row
// permutation, so one gate costs O(4^n).
void rotate_left_inplace(const PauliString& g, double t, DenseMatrix& m) {
  m = std::cos(t) * m + kImag * std::sin(t) * g.apply_left(m);
}

void rotate_state_inplace(const PauliString& g, double t, StateVector& v) {
  v = std::cos(t) * v + kImag * std::sin(t) * g.apply(v);
}

}  // namespace

Ansatz::Ansatz(int n_qubits, std::vector<PauliString> generators,
               int layer_size)
    : n_qubits_(n_qubits),
      layer_size_(layer_size == 0 ? static_cast<int>(generators.size())
                                  : layer_size) {
  if (generators.empty()) {
    throw std::invalid_argument("Ansatz: needs at least one gate");
  }
  if (layer_size_ < 1 ||
      static_cast<int>(generators.size()) % layer_size_ != 0) {
    throw std::invalid_argument(
        "Ansatz: layer_size must divide the gate count");
  }
  gates_.reserve(generators.size());
  for (std::size_t i = 0; i < generators.size(); ++i) {
    if (generators[i].n_qubits() != n_qubits_) {
      throw std::invalid_argument("Ansatz: generator qubit count mismatch");
    }
    if (!generators[i].is_phase_free()) {
      throw std::invalid_argument("Ansatz: generators must be phase-free");
    }
    gates_.push_back(RotationGate{std::move(generators[i]),
                                  static_cast<int>(i)});
  }
}

const PauliString& Ansatz::generator(int position) const {
  if (position < 1 || position > num_parameters()) {
    throw std::out_of_range("Ansatz: gate position out of range");
  }
  return gates_[static_cast<std::size_t>(position - 1)].generator;
}

Ansatz Ansatz::embedded(int new_n_qubits) const {
  std::vector<PauliString> generators;
  generators.reserve(gates_.size());
  for (const auto& gate : gates_) {
    generators.push_back(gate.generator.embedded(new_n_qubits));
  }
  return Ansatz(new_n_qubits, std::move(generators), layer_size_);
}

DenseUnitary ansatz_unitary(const Ansatz& a, const ParameterVector& theta) {
  check_theta(a, theta);
  return partial_unitary(a, theta, 1, a.num_parameters());
}

DenseUnitary partial_unitary(const Ansatz& a, const ParameterVector& theta,
                             int j, int k) {
  check_theta(a, theta);
  const int num_params = a.num_parameters();
  if (j < 1 || j > num_params + 1 || k < 0 || k > num_params) {
    throw std::out_of_range("partial_unitary: slice [" + std::to_string(j) +
                            ", " + std::to_string(k) + "] out of range");
  }
  const std::int64_t dim = std::int64_t{1} << a.n_qubits();
  DenseMatrix u = DenseMatrix::Identity(dim, dim);
  for (int pos = j; pos <= k; ++pos) {
    const auto& gate = a.gates()[static_cast<std::size_t>(pos - 1)];
    rotate_left_inplace(gate.generator, theta(gate.parameter_index), u);
  }
  return u;
}

std::vector<DenseMatrix> derivative_stack(const Ansatz& a,
                                          const ParameterVector& theta) {
  check_theta(a, theta);
  const int num_params = a.num_parameters();
  const std::int64_t dim = std::int64_t{1} << a.n_qubits();

  // prefix[j] = U_{j:1}; suffix[j] = U_{L:j+1}.
  std::vector<DenseMatrix> prefix(static_cast<std::size_t>(num_params) + 1);
  prefix[0] = DenseMatrix::Identity(dim, dim);
  for (int pos = 1; pos <= num_params; ++pos) {
    const auto& gate = a.gates()[static_cast<std::size_t>(pos - 1)];
    DenseMatrix u = prefix[static_cast<std::size_t>(pos - 1)];
    rotate_left_inplace(gate.generator, theta(gate.parameter_index), u);
    prefix[static_cast<std::size_t>(pos)] = std::move(u);
  }
  std::vector<DenseMatrix> suffix(static_cast<std::size_t>(num_params) + 1);
  suffix[static_cast<std::size_t>(num_params)] =
      DenseMatrix::Identity(dim, dim);
  for (int pos = num_params; pos >= 1; --pos) {
    const auto& gate = a.gates()[static_cast<std::size_t>(pos - 1)];
    const double t = theta(gate.parameter_index);
    // U_{L:j} = U_{L:j+1} R_j, appended on the right.
    const DenseMatrix& s = suffix[static_cast<std::size_t>(pos)];
    suffix[static_cast<std::size_t>(pos - 1)] =
        std::cos(t) * s + kImag * std::sin(t) * gate.generator.apply_right(s);
  }

  std::vector<DenseMatrix> derivatives;
  derivatives.reserve(static_cast<std::size_t>(num_params));
  for (int pos = 1; pos <= num_params; ++pos) {
    const auto& gate = a.gates()[static_cast<std::size_t>(pos - 1)];
    derivatives.push_back(
        suffix[static_cast<std::size_t>(pos)] *
        (kImag *
         gate.generator.apply_left(prefix[static_cast<std::size_t>(pos)])));
  }
  return derivatives;
}

StateVector apply_slice(const Ansatz& a, const ParameterVector& theta,
                        int j, int k, StateVector v) {
  check_theta(a, theta);
  const int num_params = a.num_parameters();
  if (j < 1 || j > num_params + 1 || k < 0 || k > num_params) {
    throw std::out_of_range("apply_slice: slice out of range");
  }
  if (v.size() != (std::int64_t{1} << a.n_qubits())) {
    throw std::invalid_argument("apply_slice: state dimension mismatch");
  }
  for (int pos = j; pos <= k; ++pos) {
    const auto& gate = a.gates()[static_cast<std::size_t>(pos - 1)];
    rotate_state_inplace(gate.generator, theta(gate.parameter_index), v);
  }
  return v;
}

Ansatz build_heisenberg_ansatz(int n_sites, int n_layers) {
  if (n_sites < 3) {
    throw std::invalid_argument(
        "build_heisenberg_ansatz: needs at least 3 sites");
  }
  if (n_layers < 1) {
    throw std::invalid_argument(
        "build_heisenberg_ansatz: needs at least 1 layer");
  }
  std::vector<PauliString> generators;
  generators.reserve(static_cast<std::size_t>(4 * n_sites * n_layers));
  const auto bond = [n_sites](char letter, int site) {
    std::string s(static_cast<std::size_t>(n_sites), 'I');
    s[static_cast<std::size_t>(site)] = letter;
    s[static_cast<std::size_t>((site + 1) % n_sites)] = letter;
    return PauliString::from_letters(s);
  };
  for (int layer = 0; layer < n_layers; ++layer) {
    for (int q = 0; q < n_sites; ++q) {
      std::string s(static_cast<std::size_t>(n_sites), 'I');
      s[static_cast<std::size_t>(q)] = 'X';
      generators.push_back(PauliString::from_letters(s));
    }
    for (const char letter : {'X', 'Y', 'Z'}) {
      for (int q = 0; q < n_sites; ++q) generators.push_back(bond(letter, q));
    }
  }
  return Ansatz(n_sites, std::move(generators), 4 * n_sites);
}

}  // namespace vqos
