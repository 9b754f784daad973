// Copyright 2026 The vqos Authors
// SPDX-License-Identifier: Apache-2.0

#include "vqos/baselines.hpp"

#include <cmath>
#include <stdexcept>

namespace vqos {

namespace {

constexpr Complex kImag{0.0, 1.0};

int qubits_for_dim(std::int64_t dim) {
  int n = 0;
  while ((std::int64_t{1} << n) < dim) ++n;
  if ((std::int64_t{1} << n) != dim) {
    throw std::invalid_argument("matrix dimension is not a power of two");
  }
  return n;
}

}  // namespace

ExactPropagator::ExactPropagator(const DenseMatrix& hamiltonian) {
  if (hamiltonian.rows() != hamiltonian.cols()) {
    throw std::invalid_argument("ExactPropagator: matrix must be square");
  }
  n_qubits_ = qubits_for_dim(hamiltonian.rows());
  const double herm_residue =
      (hamiltonian - hamiltonian.adjoint()).cwiseAbs().maxCoeff();
  if (herm_residue > 1e-10 * std::max(1.0, hamiltonian.cwiseAbs().maxCoeff())) {
    throw std::invalid_argument("ExactPropagator: matrix is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<DenseMatrix> solver(hamiltonian);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("ExactPropagator: eigendecomposition failed");
  }
  eigenvalues_ = solver.eigenvalues();
  eigenvectors_ = solver.eigenvectors();
}

ExactPropagator ExactPropagator::from_pauli_sum(const PauliSum& h) {
  return ExactPropagator(h.to_dense());
}

DenseMatrix ExactPropagator::unitary(double t) const {
  if (!std::isfinite(t)) {
    throw std::invalid_argument("ExactPropagator: time must be finite");
  }
  const Eigen::VectorXcd phases =
      (-kImag * t * eigenvalues_.cast<Complex>().array()).exp();
  return eigenvectors_ * phases.asDiagonal() * eigenvectors_.adjoint();
}

DenseMatrix trotter_unitary(const std::vector<PauliSum>& groups, double t,
                            int layers) {
  if (groups.empty()) {
    throw std::invalid_argument("trotter_unitary: no groups given");
  }
  if (layers < 1) {
    throw std::invalid_argument("trotter_unitary: layers must be >= 1");
  }
  const int n = groups.front().n_qubits();
  for (const auto& g : groups) {
    if (g.n_qubits() != n) {
      throw std::invalid_argument("trotter_unitary: group qubit mismatch");
    }
    const auto& terms = g.terms();
    for (std::size_t i = 0; i < terms.size(); ++i) {
      for (std::size_t k = i + 1; k < terms.size(); ++k) {
        if (!terms[i].string.commutes_with(terms[k].string)) {
          throw std::invalid_argument(
              "trotter_unitary: non-commuting terms within one group (" +
              terms[i].string.to_string() + " vs " +
              terms[k].string.to_string() + ")");
        }
      }
    }
  }

  const std::int64_t dim = std::int64_t{1} << n;
  const double step = t / layers;
  DenseMatrix cycle = DenseMatrix::Identity(dim, dim);
  for (const auto& group : groups) {
    // e^{-i c P s} applied to the accumulated product, term by term.
    for (const auto& term : group.terms()) {
      const double angle = term.coefficient * step;
      cycle = std::cos(angle) * cycle -
              kImag * std::sin(angle) * term.string.apply_left(cycle);
    }
  }
  DenseMatrix u = DenseMatrix::Identity(dim, dim);
  for (int rep = 0; rep < layers; ++rep) u = cycle * u;
  return u;
}

double process_infidelity(const DenseMatrix& u, const DenseMatrix& v) {
  if (u.rows() != u.cols() || v.rows() != v.cols() || u.rows() != v.rows()) {
    throw std::invalid_argument("process_infidelity: dimension mismatch");
  }
  const double dim = static_cast<double>(u.rows());
  const double fidelity = std::abs((v.adjoint() * u).trace()) / dim;
  return std::min(1.0, std::max(0.0, 1.0 - fidelity));
}

std::vector<PauliSum> commuting_partition(const PauliSum& h) {
  std::vector<PauliSum> groups;
  for (const auto& term : h.terms()) {
    bool placed = false;
    for (auto& group : groups) {
      bool fits = true;
      for (const auto& member : group.terms()) {
        if (!member.string.commutes_with(term.string)) {
          fits = false;
          break;
        }
      }
      if (fits) {
        group.add(term.coefficient, term.string);
        placed = true;
        break;
      }
    }
    if (!placed) {
      PauliSum group(h.n_qubits());
      group.add(term.coefficient, term.string);
      groups.push_back(std::move(group));
    }
  }
  return groups;
}

}  // namespace vqos
