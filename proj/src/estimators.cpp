// Copyright 2026 The vqos Authors
// SPDX-License-Identifier: Apache-2.0

#include "vqos/estimators.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

namespace vqos {

namespace {

constexpr Complex kImag{0.0, 1.0};

void check_spec(const GSpec& spec) {
  const int num_params = spec.ansatz.num_parameters();
  if (spec.j < 0 || spec.j > spec.l || spec.l > num_params) {
    throw std::invalid_argument("g spec indices must satisfy 0 <= j <= l <= L");
  }
  if (spec.p_j.n_qubits() != spec.ansatz.n_qubits() ||
      spec.p_k.n_qubits() != spec.ansatz.n_qubits()) {
    throw std::invalid_argument("g spec Pauli qubit count mismatch");
  }
  if (!spec.p_j.is_phase_free() || !spec.p_k.is_phase_free()) {
    throw std::invalid_argument("g spec Paulis must be phase-free");
  }
  if (spec.theta.size() != num_params) {
    throw std::invalid_argument("g spec parameter length mismatch");
  }
}

void check_plan(const ShotPlan& plan, Method expected) {
  if (plan.shots < 1) {
    throw std::invalid_argument("shot plan needs at least one shot");
  }
  if (plan.method != expected) {
    throw std::invalid_argument("shot plan method does not match estimator");
  }
}

long long draw_binomial(std::mt19937_64& rng, long long n, double p) {
  if (n <= 0 || p <= 0.0) return 0;
  if (p >= 1.0) return n;
  std::binomial_distribution<long long> dist(n, p);
  return dist(rng);
}

/// Uniform occupancy of `cells` cells by `shots` shots, drawn cell by cell
/// from the marginal binomials (equivalent to per-shot uniform sampling).
std::vector<long long> draw_uniform_counts(std::mt19937_64& rng,
                                           long long shots,
                                           std::int64_t cells) {
  std::vector<long long> counts(static_cast<std::size_t>(cells), 0);
  long long remaining = shots;
  for (std::int64_t b = 0; b < cells && remaining > 0; ++b) {
    const long long c =
        (b == cells - 1)
            ? remaining
            : draw_binomial(rng, remaining, 1.0 / static_cast<double>(cells - b));
    counts[static_cast<std::size_t>(b)] = c;
    remaining -= c;
  }
  return counts;
}

double clamp_probability(double p) { return std::min(1.0, std::max(0.0, p)); }

// Single-qubit basis change whose columns are the +1/-1 eigenvectors of the
// given letter: H for X, SH for Y, identity for Z and I.
Eigen::Matrix2cd eigenbasis_for_letter(char letter) {
  const double s = 1.0 / std::sqrt(2.0);
  Eigen::Matrix2cd m;
  switch (letter) {
    case 'X':
      m << s, s, s, -s;
      return m;
    case 'Y':
      m << s, s, kImag * s, -kImag * s;
      return m;
    default:
      return Eigen::Matrix2cd::Identity();
  }
}

DenseMatrix eigenbasis_rotation(const PauliString& p) {
  DenseMatrix v = DenseMatrix::Identity(1, 1);
  for (int q = 0; q < p.n_qubits(); ++q) {
    const Eigen::Matrix2cd factor = eigenbasis_for_letter(p.letter(q));
    DenseMatrix next(v.rows() * 2, v.cols() * 2);
    for (int r = 0; r < 2; ++r) {
      for (int c = 0; c < 2; ++c) {
        next.block(r * v.rows(), c * v.cols(), v.rows(), v.cols()) =
            factor(r, c) * v;
      }
    }
    v = std::move(next);
  }
  return v;
}

// Index-space mask of the qubits where p acts nontrivially.
std::uint64_t support_index_mask(const PauliString& p) {
  std::uint64_t mask = 0;
  const int n = p.n_qubits();
  for (int q = 0; q < n; ++q) {
    if (p.letter(q) != 'I') mask |= std::uint64_t{1} << (n - 1 - q);
  }
  return mask;
}

}  // namespace

double estimate_g_indirect(const GSpec& spec, const ShotPlan& plan) {
  check_spec(spec);
  check_plan(plan, Method::indirect);

  const DenseMatrix u =
      partial_unitary(spec.ansatz, spec.theta, spec.j + 1, spec.l);
  const std::int64_t dim = u.rows();
  // Ancilla <Z> conditioned on basis input |b> is Re (U^dag P_k U P_j)_{bb}.
  const DenseMatrix right = spec.p_j.apply_right(spec.p_k.apply_left(u));
  Eigen::VectorXd conditional(dim);
  for (std::int64_t b = 0; b < dim; ++b) {
    conditional(b) = u.col(b).dot(right.col(b)).real();
  }

  std::mt19937_64 rng(plan.seed);
  const std::vector<long long> counts =
      draw_uniform_counts(rng, plan.shots, dim);
  long long z_sum = 0;
  for (std::int64_t b = 0; b < dim; ++b) {
    const long long n_b = counts[static_cast<std::size_t>(b)];
    if (n_b == 0) continue;
    const long long ups =
        draw_binomial(rng, n_b, clamp_probability((1.0 + conditional(b)) / 2.0));
    z_sum += 2 * ups - n_b;
  }
  return static_cast<double>(z_sum) / static_cast<double>(plan.shots);
}

double estimate_g_direct(const GSpec& spec, const ShotPlan& plan) {
  check_spec(spec);
  check_plan(plan, Method::direct);
  if (spec.p_j.is_identity_letters()) {
    throw std::invalid_argument(
        "direct method needs a non-identity P_j: the -1 eigenvalue branch is "
        "empty for the identity");
  }

  const DenseMatrix u =
      partial_unitary(spec.ansatz, spec.theta, spec.j + 1, spec.l);
  const std::int64_t dim = u.rows();
  // Column b of U V is U applied to the b-th eigenstate of P_j.
  const DenseMatrix evolved = u * eigenbasis_rotation(spec.p_j);
  const std::uint64_t parity_mask = support_index_mask(spec.p_j);
  Eigen::VectorXd conditional(dim);
  for (std::int64_t b = 0; b < dim; ++b) {
    conditional(b) =
        evolved.col(b).dot(spec.p_k.apply(evolved.col(b))).real();
  }

  std::mt19937_64 rng(plan.seed);
  const std::vector<long long> counts =
      draw_uniform_counts(rng, plan.shots, dim);
  long long shots_plus = 0, shots_minus = 0;
  long long sum_plus = 0, sum_minus = 0;
  for (std::int64_t b = 0; b < dim; ++b) {
    const long long n_b = counts[static_cast<std::size_t>(b)];
    if (n_b == 0) continue;
    const long long ups =
        draw_binomial(rng, n_b, clamp_probability((1.0 + conditional(b)) / 2.0));
    const long long outcome_sum = 2 * ups - n_b;
    const bool plus_branch =
        (std::popcount(static_cast<std::uint64_t>(b) & parity_mask) & 1) == 0;
    if (plus_branch) {
      shots_plus += n_b;
      sum_plus += outcome_sum;
    } else {
      shots_minus += n_b;
      sum_minus += outcome_sum;
    }
  }
  if (shots_plus == 0 || shots_minus == 0) {
    throw std::runtime_error(
        "direct method: one eigenvalue branch received zero shots; increase "
        "the shot budget");
  }
  const double mean_plus =
      static_cast<double>(sum_plus) / static_cast<double>(shots_plus);
  const double mean_minus =
      static_cast<double>(sum_minus) / static_cast<double>(shots_minus);
  return (mean_plus - mean_minus) / 2.0;
}

double vqss_estimate_g(const VqssGSpec& spec, const ShotPlan& plan) {
  if (plan.shots < 1) {
    throw std::invalid_argument("shot plan needs at least one shot");
  }
  const int num_params = spec.ansatz.num_parameters();
  if (spec.j < 1 || spec.l < spec.j - 1 || spec.l > num_params) {
    throw std::invalid_argument(
        "vqss g spec indices must satisfy 1 <= j, j-1 <= l <= L");
  }
  if (!spec.p_j.is_phase_free() || !spec.p_k.is_phase_free()) {
    throw std::invalid_argument("vqss g spec Paulis must be phase-free");
  }
  if (std::abs(spec.phi_in.norm() - 1.0) > 1e-10) {
    throw std::invalid_argument("vqss g spec input state must be normalized");
  }

  const StateVector mid =
      apply_slice(spec.ansatz, spec.theta, 1, spec.j - 1, spec.phi_in);
  const StateVector p_j_mid = spec.p_j.apply(mid);
  const StateVector branch_plus = (mid + p_j_mid) / 2.0;
  const StateVector branch_minus = (mid - p_j_mid) / 2.0;
  const double p_plus = clamp_probability(branch_plus.squaredNorm());

  // <P_k> after the remaining gates, conditioned on each mid-outcome.
  const auto conditional_mean = [&](const StateVector& branch,
                                    double prob) -> double {
    if (prob < 1e-300) return 0.0;
    const StateVector final_state = apply_slice(
        spec.ansatz, spec.theta, spec.j, spec.l, branch / std::sqrt(prob));
    return final_state.dot(spec.p_k.apply(final_state)).real();
  };
  const double mean_plus = conditional_mean(branch_plus, p_plus);
  const double mean_minus =
      conditional_mean(branch_minus, 1.0 - p_plus);

  std::mt19937_64 rng(plan.seed);
  const long long n_plus = draw_binomial(rng, plan.shots, p_plus);
  const long long n_minus = plan.shots - n_plus;
  const long long k_plus =
      draw_binomial(rng, n_plus, clamp_probability((1.0 + mean_plus) / 2.0));
  const long long k_minus =
      draw_binomial(rng, n_minus, clamp_probability((1.0 + mean_minus) / 2.0));
  const long long weighted =
      (2 * k_plus - n_plus) - (2 * k_minus - n_minus);
  return static_cast<double>(weighted) / static_cast<double>(plan.shots);
}

std::pair<long long, long long> circuit_count(long long num_parameters,
                                              long long num_hamiltonian_terms) {
  if (num_parameters < 1 || num_hamiltonian_terms < 1) {
    throw std::invalid_argument("circuit_count: arguments must be >= 1");
  }
  return {num_parameters * (num_parameters + 1) / 2,
          num_parameters * num_hamiltonian_terms};
}

UpdateSystem assemble_vqos_shots(const Ansatz& a, const ParameterVector& theta,
                                 const PauliSum& h, const ShotPlan& plan) {
  std::uint64_t counter = 0;
  const GEvaluator evaluator = [&](const PauliString& p_j,
                                   const PauliString& p_k, int l,
                                   int j) -> double {
    const GSpec spec{a, theta, p_j, p_k, l, j};
    ShotPlan entry_plan = plan;
    entry_plan.seed = split_seed(plan.seed, counter++);
    return plan.method == Method::direct
               ? estimate_g_direct(spec, entry_plan)
               : estimate_g_indirect(spec, entry_plan);
  };
  return assemble_vqos_via_g(a, h, evaluator);
}

std::uint64_t split_seed(std::uint64_t seed, std::uint64_t counter) {
  // splitmix64 over the combined value; decorrelates the sub-streams.
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (counter + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace vqos
