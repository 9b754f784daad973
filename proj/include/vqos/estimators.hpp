// Copyright 2026 The vqos Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "vqos/ansatz.hpp"
#include "vqos/engine.hpp"
#include "vqos/pauli.hpp"

#include <cstdint>
#include <utility>

namespace vqos {

enum class Method { indirect, direct };

/// Shot budget and RNG seed for one estimate. Identical plan + spec gives a
/// bit-exact identical estimate.
struct ShotPlan {
  long long shots = 10000;
  std::uint64_t seed = 0;
  Method method = Method::direct;
};

/**
 * One g quantity to estimate: g = Re Tr(P_j U_{l:j+1}^dag P_k U_{l:j+1})/2^n
 * with the circuit slice taken from a referenced ansatz. Both Paulis must be
 * phase-free. The spec only views the ansatz and parameters; keep them alive
 * for its lifetime.
 */
struct GSpec {
  const Ansatz& ansatz;
  const ParameterVector& theta;
  PauliString p_j;
  PauliString p_k;
  int l;
  int j;
};

/**
 * Shot-level emulation of the ancilla (Hadamard-test) circuit on n+1 qubits:
 * per shot the system register starts in a uniformly random computational
 * basis state (realizing the maximally mixed input), the ancilla interferes
 * controlled-P_j and controlled-P_k around U_{l:j+1}, and its X-basis
 * measurement gives a +-1 outcome. Returns the empirical ancilla <Z>;
 * unbiased for g.
 */
double estimate_g_indirect(const GSpec& spec, const ShotPlan& plan);

/**
 * Shot-level emulation of the ancilla-free circuit on n qubits: per shot a
 * uniformly random eigenstate of P_j is prepared (a random basis state
 * rotated by the single-qubit Cliffords that diagonalize P_j), U_{l:j+1} is
 * applied and P_k measured. Returns (<P_k>_+ - <P_k>_-)/2 over the two
 * eigenvalue branches; unbiased for g. Throws if either branch ends up with
 * zero shots (including the structural case of an identity P_j).
 */
double estimate_g_direct(const GSpec& spec, const ShotPlan& plan);

/**
 * State-mode g spec: prepare U_{j-1:1}|phi_in>, projectively measure P_j,
 * apply U_{l:j}, measure P_k. Requires 1 <= j and j-1 <= l <= L.
 */
struct VqssGSpec {
  const Ansatz& ansatz;
  const ParameterVector& theta;
  PauliString p_j;
  PauliString p_k;
  int l;
  int j;
  const StateVector& phi_in;
};

/// Shot-level emulation of the state-mode circuit with a mid-circuit
/// measurement; returns p(+1)<P_k>_{+1} - p(-1)<P_k>_{-1}.
double vqss_estimate_g(const VqssGSpec& spec, const ShotPlan& plan);

/// Circuits needed per assembly: (L(L+1)/2 for the Gram matrix, L*n_H for
/// the driving vector).
std::pair<long long, long long> circuit_count(long long num_parameters,
                                              long long num_hamiltonian_terms);

/// Operator-mode system assembled entirely from shot estimates; entry seeds
/// are derived deterministically from plan.seed.
UpdateSystem assemble_vqos_shots(const Ansatz& a, const ParameterVector& theta,
                                 const PauliSum& h, const ShotPlan& plan);

/// Deterministic seed derivation for sub-streams (counter splitting).
std::uint64_t split_seed(std::uint64_t seed, std::uint64_t counter);

}  // namespace vqos
