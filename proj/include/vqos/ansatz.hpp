// Copyright 2026 The vqos Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "vqos/pauli.hpp"

#include <vector>

namespace vqos {

using ParameterVector = Eigen::VectorXd;
using DenseUnitary = Eigen::MatrixXcd;

/**
 * One Pauli rotation R(theta) = exp(i * generator * theta). The generator is
 * a phase-free Pauli string, so R(theta) = cos(theta) I + i sin(theta) G and
 * dR/dtheta = i G R.
 */
struct RotationGate {
  PauliString generator;
  int parameter_index;  // position in the parameter vector, 0-based
};

/**
 * Parameterized circuit U(theta) = R_L(theta_L) ... R_1(theta_1), gates
 * applied right to left. Every gate owns its own parameter; at theta = 0 the
 * unitary is exactly the identity. Immutable after construction.
 *
 * Gate positions are 1-based in the slice APIs below, matching the algebra
 * U_{k:j} = R_k ... R_j.
 */
class Ansatz {
 public:
  /// Gates from an ordered generator list; parameters are assigned in order.
  /// layer_size (gates per layer, for depth accounting) defaults to all gates.
  Ansatz(int n_qubits, std::vector<PauliString> generators, int layer_size = 0);

  int n_qubits() const { return n_qubits_; }
  int num_parameters() const { return static_cast<int>(gates_.size()); }
  int layer_size() const { return layer_size_; }
  int num_layers() const { return num_parameters() / layer_size_; }
  const std::vector<RotationGate>& gates() const { return gates_; }
  const PauliString& generator(int position) const;  // 1-based

  /// All generators embedded on a wider register (dense form: U tensor I).
  Ansatz embedded(int new_n_qubits) const;

 private:
  int n_qubits_;
  std::vector<RotationGate> gates_;
  int layer_size_;
};

/// Full unitary U_{L:1}(theta).
DenseUnitary ansatz_unitary(const Ansatz& a, const ParameterVector& theta);

/// Partial product U_{k:j} = R_k ... R_j (1-based, inclusive); the empty
/// product k < j is the identity. Indices outside [1, L] (beyond the empty
/// conventions j = L+1 or k = 0) are rejected.
DenseUnitary partial_unitary(const Ansatz& a, const ParameterVector& theta,
                             int j, int k);

/// All parameter derivatives D_j = dU/dtheta_j = U_{L:j+1} (i G_j) U_{j:1},
/// assembled from one prefix and one suffix product sweep (O(L) matrix
/// multiplications in total).
std::vector<DenseMatrix> derivative_stack(const Ansatz& a,
                                          const ParameterVector& theta);

/// Applies the slice U_{k:j} to a state without building matrices.
StateVector apply_slice(const Ansatz& a, const ParameterVector& theta,
                        int j, int k, StateVector v);

/**
 * Hardware-matched ansatz for the periodic transverse-field Heisenberg chain:
 * each layer is n X-rotations followed by n XX-, n YY- and n ZZ-rotations on
 * periodic nearest-neighbor bonds ordered by first site, L = 4 n layers.
 * Requires n_sites >= 3 (periodic two-site chains double-count bonds).
 */
Ansatz build_heisenberg_ansatz(int n_sites, int n_layers);

}  // namespace vqos
