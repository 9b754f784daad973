// Copyright 2026 The vqos Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "vqos/pauli.hpp"

#include <vector>

namespace vqos {

/**
 * Exact time evolution e^{-iHt} from a Hermitian eigendecomposition
 * H = V diag(lambda) V^dag, computed once and reused for any t.
 */
class ExactPropagator {
 public:
  explicit ExactPropagator(const DenseMatrix& hamiltonian);
  static ExactPropagator from_pauli_sum(const PauliSum& h);

  /// V diag(e^{-i lambda t}) V^dag.
  DenseMatrix unitary(double t) const;

  const Eigen::VectorXd& eigenvalues() const { return eigenvalues_; }
  const DenseMatrix& eigenvectors() const { return eigenvectors_; }
  int n_qubits() const { return n_qubits_; }

 private:
  Eigen::VectorXd eigenvalues_;
  DenseMatrix eigenvectors_;
  int n_qubits_;
};

/**
 * First-order product formula: (e^{-iG_1 t/L} ... e^{-iG_m t/L})^L over the
 * given groups, in order. Every group must consist of mutually commuting
 * terms; each group exponential is then the exact term-by-term product
 * e^{-i c P t/L} = cos(ct/L) I - i sin(ct/L) P. A non-commuting pair inside
 * a group is rejected.
 */
DenseMatrix trotter_unitary(const std::vector<PauliSum>& groups, double t,
                            int layers);

/// 1 - |Tr(V^dag U)| / dim, clamped to [0, 1]. Invariant under a global
/// phase on either argument and symmetric in its arguments.
double process_infidelity(const DenseMatrix& u, const DenseMatrix& v);

/// Greedy first-fit partition of a Pauli sum into internally commuting
/// groups, in canonical term order. Used to Trotterize arbitrary inputs.
std::vector<PauliSum> commuting_partition(const PauliSum& h);

}  // namespace vqos
