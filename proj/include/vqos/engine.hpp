// Copyright 2026 The vqos Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "vqos/ansatz.hpp"
#include "vqos/pauli.hpp"

#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace vqos {

/**
 * The linear system N thetadot = W produced by McLachlan's variational
 * principle: N is the real symmetric Gram matrix of ansatz derivatives and W
 * the real driving vector. The same container carries the state-mode system
 * M thetadot = V.
 */
struct UpdateSystem {
  Eigen::MatrixXd n_matrix;
  Eigen::VectorXd w_vector;
};

/// Fixed-step fourth-order Runge-Kutta configuration for the parameter ODE.
struct IntegratorConfig {
  double dt = 0.05;
  double t_final = 1.0;
  double regularization = 1e-8;  // added to the diagonal before solving
};

struct StepDiagnostics {
  double t;                   // time at the end of the step
  double solve_residual;      // max over the four stage solves
  double condition_estimate;  // max estimated condition over the stages
  bool fallback_used;         // any stage fell back to least squares
};

/// Time series theta(t) produced by the integrator, theta(0) = 0. When the
/// right-hand side turns non-finite the trajectory is returned truncated with
/// `aborted` set instead of throwing, so partial results stay usable.
struct ParameterTrajectory {
  std::vector<double> times;
  std::vector<Eigen::VectorXd> thetas;
  std::vector<StepDiagnostics> diagnostics;  // one per completed step
  bool aborted = false;
  std::string abort_reason;
};

/**
 * The elementary trace quantity both N and W reduce to:
 *   g = Re Tr(P_j U_{l:j+1}^dag P_k U_{l:j+1}) / 2^n,
 * evaluated densely. Requires 0 <= j <= l <= L; l == j means the empty
 * circuit.
 */
double g_exact(const Ansatz& a, const ParameterVector& theta,
               const PauliString& p_j, const PauliString& p_k, int l, int j);

/**
 * Operator-mode McLachlan system for a traceless Hamiltonian:
 *   N_jk = Re Tr(D_j^dag D_k) / 2^n,   W_j = Im Tr(D_j^dag H U) / 2^n,
 * with D_j the ansatz derivative stack. N is symmetrized before return.
 * A Hamiltonian with an identity component is rejected; strip it first
 * (it only contributes a global phase).
 */
UpdateSystem assemble_vqos(const Ansatz& a, const ParameterVector& theta,
                           const PauliSum& h);

/// Evaluates one g quantity for given Pauli pair and circuit slice U_{l:j+1}.
using GEvaluator = std::function<double(const PauliString& p_j,
                                        const PauliString& p_k, int l, int j)>;

/**
 * Same system assembled entry by entry from g evaluations:
 *   N_jk = g(G_j, G_k, l=k, j=j) for j <= k (mirrored),
 *   W_j  = -sum_k c_k g(G_j, H_k, l=L, j=j).
 * With g_exact this is an independent route to assemble_vqos; with a
 * shot-based evaluator it emulates the measured algorithm.
 */
UpdateSystem assemble_vqos_via_g(const Ansatz& a, const PauliSum& h,
                                 const GEvaluator& g);

/**
 * State-mode McLachlan system for ansatz state U(theta)|phi_in>, including
 * the global-phase correction terms:
 *   M_jk = Re<d_j phi|d_k phi> + <d_j phi|phi><d_k phi|phi>,
 *   V_j  = Im<d_j phi|H|phi> + i <d_j phi|phi><phi|H|phi>.
 * phi_in must be normalized.
 */
UpdateSystem assemble_vqss(const Ansatz& a, const ParameterVector& theta,
                           const PauliSum& h, const StateVector& phi_in);

struct SolveResult {
  Eigen::VectorXd theta_dot;
  double residual;            // ||(N + reg I) x - W||_2
  double condition_estimate;  // estimated condition of the shifted matrix
  bool fallback_used;         // least-squares fallback engaged
};

/// Solves (N + reg I) thetadot = W by Cholesky; on factorization failure
/// falls back to an SVD least-squares solve and flags it.
SolveResult solve_update(const UpdateSystem& sys, double regularization);

/// Produces N thetadot = W at a given theta; lets the integrator run on
/// either the dense assembly or a shot-based one.
using SystemAssembler = std::function<UpdateSystem(const ParameterVector&)>;

/// Fixed-step RK4 on thetadot = solve(assemble(theta)) from theta(0) = 0,
/// re-assembling the system at every stage. The final step is shortened to
/// land exactly on t_final.
ParameterTrajectory integrate_with(const SystemAssembler& assemble,
                                   int num_parameters,
                                   const IntegratorConfig& cfg);

/// integrate_with over the dense operator-mode assembly.
ParameterTrajectory integrate(const Ansatz& a, const PauliSum& h,
                              const IntegratorConfig& cfg);

/// |Phi> = sum_j |j>|j> / sqrt(dim) on a doubled register.
StateVector maximally_entangled_state(std::int64_t dim);

/// Both sides of the duality <Phi|(A tensor I)|Phi> = Tr(A)/d, each computed
/// by its own route, for test harness consumption. Complex so that arbitrary
/// (non-Hermitian) inputs are compared without losing the imaginary parts.
std::pair<Complex, Complex> choi_trace_identity(const DenseMatrix& a);

/// Writes `t,theta_1,...,theta_L` rows with 17 significant digits.
std::string trajectory_csv(const ParameterTrajectory& traj);

/// Sidecar per-step record: `t,solve_residual,fallback_used`.
std::string trajectory_diagnostics_csv(const ParameterTrajectory& traj);

}  // namespace vqos
