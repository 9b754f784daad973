// Copyright 2026 The vqos Authors
// SPDX-License-Identifier: Apache-2.0

#include "vqos/engine.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace vqos {

namespace {

constexpr Complex kImag{0.0, 1.0};

void check_g_indices(int l, int j, int num_params) {
  if (j < 0 || j > l || l > num_params) {
    throw std::invalid_argument("g indices must satisfy 0 <= j <= l <= L, got j=" +
                                std::to_string(j) + ", l=" + std::to_string(l) +
                                ", L=" + std::to_string(num_params));
  }
}

Eigen::Map<const StateVector> flattened(const DenseMatrix& m) {
  return {m.data(), m.size()};
}

void append_float(std::string& out, double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  out += buf;
}

}  // namespace

double g_exact(const Ansatz& a, const ParameterVector& theta,
               const PauliString& p_j, const PauliString& p_k, int l, int j) {
  check_g_indices(l, j, a.num_parameters());
  if (p_j.n_qubits() != a.n_qubits() || p_k.n_qubits() != a.n_qubits()) {
    throw std::invalid_argument("g_exact: Pauli qubit count mismatch");
  }
  const DenseMatrix u = partial_unitary(a, theta, j + 1, l);
  // Tr(P_j U^dag P_k U) = Tr((U^dag (P_k U)) P_j).
  const DenseMatrix inner = u.adjoint() * p_k.apply_left(u);
  const double dim = static_cast<double>(u.rows());
  return p_j.trace_with(inner).real() / dim;
}

UpdateSystem assemble_vqos(const Ansatz& a, const ParameterVector& theta,
                           const PauliSum& h) {
  if (h.n_qubits() != a.n_qubits()) {
    throw std::invalid_argument("assemble_vqos: Hamiltonian qubit mismatch");
  }
  if (!h.is_traceless()) {
    throw std::invalid_argument(
        "assemble_vqos: Hamiltonian has an identity component; strip it first "
        "(it only contributes a global phase)");
  }
  const int num_params = a.num_parameters();
  const std::int64_t dim = std::int64_t{1} << a.n_qubits();

  const std::vector<DenseMatrix> derivs = derivative_stack(a, theta);
  // Column j holds vec(D_j); the Gram matrix is then one adjoint product.
  DenseMatrix stacked(dim * dim, num_params);
  for (int j = 0; j < num_params; ++j) {
    stacked.col(j) = flattened(derivs[static_cast<std::size_t>(j)]);
  }
  const DenseMatrix gram = stacked.adjoint() * stacked;

  const DenseMatrix u = ansatz_unitary(a, theta);
  DenseMatrix hu = DenseMatrix::Zero(dim, dim);
  for (const auto& term : h.terms()) {
    hu += term.coefficient * term.string.apply_left(u);
  }
  const Eigen::VectorXcd overlaps = stacked.adjoint() * flattened(hu);

  UpdateSystem sys;
  sys.n_matrix = gram.real() / static_cast<double>(dim);
  sys.n_matrix = ((sys.n_matrix + sys.n_matrix.transpose()) / 2.0).eval();
  sys.w_vector = overlaps.imag() / static_cast<double>(dim);
  return sys;
}

UpdateSystem assemble_vqos_via_g(const Ansatz& a, const PauliSum& h,
                                 const GEvaluator& g) {
  if (h.n_qubits() != a.n_qubits()) {
    throw std::invalid_argument("assemble_vqos_via_g: qubit mismatch");
  }
  if (!h.is_traceless()) {
    throw std::invalid_argument(
        "assemble_vqos_via_g: Hamiltonian has an identity component; strip it "
        "first (it only contributes a global phase)");
  }
  const int num_params = a.num_parameters();
  UpdateSystem sys;
  sys.n_matrix.resize(num_params, num_params);
  sys.w_vector.resize(num_params);
  for (int j = 1; j <= num_params; ++j) {
    for (int k = j; k <= num_params; ++k) {
      const double value = g(a.generator(j), a.generator(k), k, j);
      sys.n_matrix(j - 1, k - 1) = value;
      sys.n_matrix(k - 1, j - 1) = value;
    }
  }
  for (int j = 1; j <= num_params; ++j) {
    double w = 0.0;
    for (const auto& term : h.terms()) {
      w -= term.coefficient * g(a.generator(j), term.string, num_params, j);
    }
    sys.w_vector(j - 1) = w;
  }
  return sys;
}

UpdateSystem assemble_vqss(const Ansatz& a, const ParameterVector& theta,
                           const PauliSum& h, const StateVector& phi_in) {
  if (h.n_qubits() != a.n_qubits()) {
    throw std::invalid_argument("assemble_vqss: Hamiltonian qubit mismatch");
  }
  if (phi_in.size() != (std::int64_t{1} << a.n_qubits())) {
    throw std::invalid_argument("assemble_vqss: state dimension mismatch");
  }
  if (std::abs(phi_in.norm() - 1.0) > 1e-10) {
    throw std::invalid_argument("assemble_vqss: input state must be normalized");
  }
  const int num_params = a.num_parameters();

  // Prefix states |p_j> = U_{j:1}|phi_in>, then each derivative
  // |d_j> = U_{L:j+1} i G_j |p_j> finished by the remaining gates.
  std::vector<StateVector> derivs;
  derivs.reserve(static_cast<std::size_t>(num_params));
  StateVector prefix = phi_in;
  for (int j = 1; j <= num_params; ++j) {
    prefix = apply_slice(a, theta, j, j, std::move(prefix));
    StateVector d = kImag * a.generator(j).apply(prefix);
    derivs.push_back(apply_slice(a, theta, j + 1, num_params, std::move(d)));
  }
  const StateVector phi = apply_slice(a, theta, 1, num_params, phi_in);
  const StateVector h_phi = h.apply(phi);
  const Complex energy = phi.dot(h_phi);

  Eigen::VectorXcd deriv_overlap(num_params);  // <d_j phi | phi>
  for (int j = 0; j < num_params; ++j) {
    deriv_overlap(j) = derivs[static_cast<std::size_t>(j)].dot(phi);
  }

  UpdateSystem sys;
  sys.n_matrix.resize(num_params, num_params);
  sys.w_vector.resize(num_params);
  for (int j = 0; j < num_params; ++j) {
    for (int k = j; k < num_params; ++k) {
      const Complex overlap =
          derivs[static_cast<std::size_t>(j)].dot(derivs[static_cast<std::size_t>(k)]);
      const double value =
          overlap.real() + (deriv_overlap(j) * deriv_overlap(k)).real();
      sys.n_matrix(j, k) = value;
      sys.n_matrix(k, j) = value;
    }
    const Complex hv = derivs[static_cast<std::size_t>(j)].dot(h_phi);
    sys.w_vector(j) = hv.imag() + (kImag * deriv_overlap(j) * energy).real();
  }
  return sys;
}

SolveResult solve_update(const UpdateSystem& sys, double regularization) {
  const auto num_params = sys.n_matrix.rows();
  if (sys.n_matrix.cols() != num_params || sys.w_vector.size() != num_params) {
    throw std::invalid_argument("solve_update: inconsistent system shape");
  }
  if (!sys.n_matrix.allFinite() || !sys.w_vector.allFinite()) {
    throw std::invalid_argument("solve_update: non-finite entries");
  }
  if (regularization < 0.0) {
    throw std::invalid_argument("solve_update: negative regularization");
  }
  const Eigen::MatrixXd shifted =
      sys.n_matrix +
      regularization * Eigen::MatrixXd::Identity(num_params, num_params);

  SolveResult result;
  result.fallback_used = false;
  Eigen::LLT<Eigen::MatrixXd> llt(shifted);
  if (llt.info() == Eigen::Success) {
    result.theta_dot = llt.solve(sys.w_vector);
    result.condition_estimate = 1.0 / std::max(llt.rcond(), 1e-300);
  } else {
    Eigen::BDCSVD<Eigen::MatrixXd> svd(shifted,
                                       Eigen::ComputeThinU | Eigen::ComputeThinV);
    result.theta_dot = svd.solve(sys.w_vector);
    const double smin = svd.singularValues().minCoeff();
    const double smax = svd.singularValues().maxCoeff();
    result.condition_estimate = smax / std::max(smin, 1e-300);
    result.fallback_used = true;
  }
  result.residual = (shifted * result.theta_dot - sys.w_vector).norm();
  return result;
}

ParameterTrajectory integrate_with(const SystemAssembler& assemble,
                                   int num_parameters,
                                   const IntegratorConfig& cfg) {
  if (!(cfg.dt > 0.0) || !std::isfinite(cfg.dt)) {
    throw std::invalid_argument("integrate: dt must be positive and finite");
  }
  if (cfg.t_final < 0.0 || !std::isfinite(cfg.t_final)) {
    throw std::invalid_argument("integrate: t_final must be finite and >= 0");
  }
  if (cfg.regularization < 0.0) {
    throw std::invalid_argument("integrate: regularization must be >= 0");
  }

  ParameterTrajectory traj;
  traj.times.push_back(0.0);
  traj.thetas.push_back(Eigen::VectorXd::Zero(num_parameters));

  Eigen::VectorXd theta = Eigen::VectorXd::Zero(num_parameters);
  double t = 0.0;
  int step_index = 0;
  const double eps = 1e-12 * std::max(1.0, cfg.t_final);
  while (t < cfg.t_final - eps) {
    const double h = std::min(cfg.dt, cfg.t_final - t);
    StepDiagnostics diag{t + h, 0.0, 0.0, false};

    bool stage_failed = false;
    std::string failure;
    const auto rhs = [&](const Eigen::VectorXd& point) -> Eigen::VectorXd {
      if (stage_failed) return Eigen::VectorXd::Zero(num_parameters);
      if (!point.allFinite()) {
        stage_failed = true;
        failure = "non-finite parameters entering a stage";
        return Eigen::VectorXd::Zero(num_parameters);
      }
      const UpdateSystem sys = assemble(point);
      if (!sys.n_matrix.allFinite() || !sys.w_vector.allFinite()) {
        stage_failed = true;
        failure = "non-finite assembled system";
        return Eigen::VectorXd::Zero(num_parameters);
      }
      const SolveResult solved = solve_update(sys, cfg.regularization);
      diag.solve_residual = std::max(diag.solve_residual, solved.residual);
      diag.condition_estimate =
          std::max(diag.condition_estimate, solved.condition_estimate);
      diag.fallback_used = diag.fallback_used || solved.fallback_used;
      return solved.theta_dot;
    };

    const Eigen::VectorXd k1 = rhs(theta);
    const Eigen::VectorXd k2 = rhs(theta + (h / 2.0) * k1);
    const Eigen::VectorXd k3 = rhs(theta + (h / 2.0) * k2);
    const Eigen::VectorXd k4 = rhs(theta + h * k3);
    Eigen::VectorXd next =
        theta + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

    if (stage_failed || !next.allFinite()) {
      traj.aborted = true;
      traj.abort_reason = stage_failed
                              ? failure
                              : "non-finite parameters after RK4 update";
      traj.diagnostics.push_back(diag);
      return traj;
    }

    theta = std::move(next);
    ++step_index;
    t = std::min(cfg.t_final, step_index * cfg.dt);
    traj.times.push_back(t);
    traj.thetas.push_back(theta);
    traj.diagnostics.push_back(diag);
  }
  return traj;
}

ParameterTrajectory integrate(const Ansatz& a, const PauliSum& h,
                              const IntegratorConfig& cfg) {
  const auto assemble = [&a, &h](const ParameterVector& theta) {
    return assemble_vqos(a, theta, h);
  };
  return integrate_with(assemble, a.num_parameters(), cfg);
}

StateVector maximally_entangled_state(std::int64_t dim) {
  if (dim < 1) {
    throw std::invalid_argument("maximally_entangled_state: dim must be >= 1");
  }
  StateVector phi = StateVector::Zero(dim * dim);
  const double amp = 1.0 / std::sqrt(static_cast<double>(dim));
  for (std::int64_t j = 0; j < dim; ++j) phi(j * dim + j) = amp;
  return phi;
}

std::pair<Complex, Complex> choi_trace_identity(const DenseMatrix& a) {
  if (a.rows() != a.cols()) {
    throw std::invalid_argument("choi_trace_identity: matrix must be square");
  }
  const std::int64_t dim = a.rows();
  const StateVector phi = maximally_entangled_state(dim);
  // (A tensor I)|Phi>, A applied to the leading register.
  StateVector applied = StateVector::Zero(dim * dim);
  for (std::int64_t j = 0; j < dim; ++j) {
    for (std::int64_t k = 0; k < dim; ++k) {
      for (std::int64_t j2 = 0; j2 < dim; ++j2) {
        applied(j * dim + k) += a(j, j2) * phi(j2 * dim + k);
      }
    }
  }
  const Complex lhs = phi.dot(applied);
  const Complex rhs = a.trace() / static_cast<double>(dim);
  return {lhs, rhs};
}

std::string trajectory_csv(const ParameterTrajectory& traj) {
  std::string out = "t";
  const auto num_params =
      traj.thetas.empty() ? 0 : traj.thetas.front().size();
  for (Eigen::Index j = 1; j <= num_params; ++j) {
    out += ",theta_" + std::to_string(j);
  }
  out += '\n';
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    append_float(out, traj.times[i]);
    for (Eigen::Index j = 0; j < num_params; ++j) {
      out += ',';
      append_float(out, traj.thetas[i](j));
    }
    out += '\n';
  }
  return out;
}

std::string trajectory_diagnostics_csv(const ParameterTrajectory& traj) {
  std::string out = "t,solve_residual,fallback_used\n";
  for (const auto& d : traj.diagnostics) {
    append_float(out, d.t);
    out += ',';
    append_float(out, d.solve_residual);
    out += ',';
    out += d.fallback_used ? '1' : '0';
    out += '\n';
  }
  return out;
}

}  // namespace vqos
