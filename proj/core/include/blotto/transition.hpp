#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "blotto/graph.hpp"

namespace blotto {

inline constexpr std::uint64_t kDefaultPowerCap = 10'000'000;

// Row-stochastic random-walk matrix M(v,u) = 1/|N(v)| for u in N(v).
// A dense copy is materialized only up to kDenseLimit nodes; products with the
// all-ones row vector go through the adjacency lists in both modes, so results
// do not depend on the storage policy.
class TransitionMatrix {
 public:
  static constexpr std::size_t kDenseLimit = 2048;

  explicit TransitionMatrix(const SocialGraph& g);

  std::size_t size() const { return neighbors_.size(); }
  bool is_dense() const { return dense_.size() > 0; }

  double entry(NodeId v, NodeId u) const;
  const Eigen::MatrixXd& dense() const;  // SizeError unless is_dense()

  // w' = w M for a row vector w (sequential, hence bitwise reproducible).
  void left_apply(std::span<const double> w, std::span<double> out) const;
  std::vector<double> left_apply(std::span<const double> w) const;

  std::vector<double> row_sums() const;

 private:
  std::vector<std::vector<NodeId>> neighbors_;
  std::vector<double> inv_degree_;  // 1/|N(v)|
  Eigen::MatrixXd dense_;           // empty when above kDenseLimit
};

TransitionMatrix transition_matrix(const SocialGraph& g);

// Column sums of M^t, computed as t iterated vector-matrix products of the
// all-ones row vector; M^t itself is never materialized. Throws
// IterationCapError when t exceeds cap (use the stationary form instead).
std::vector<double> matrix_power_column_weights(
    const TransitionMatrix& m, std::uint64_t t,
    std::uint64_t cap = kDefaultPowerCap);

// M^t by exponentiation by squaring on the dense form (small n only).
Eigen::MatrixXd dense_power(const TransitionMatrix& m, std::uint64_t t);

struct StationaryResult {
  std::vector<double> pi;  // left fixed point of M, sums to 1

  // Closed-form degree-share candidates under the two self-loop conventions.
  // degree_share uses degree(v) (self-loop = +2, i.e. d/2|E|); neighbor_share
  // uses |N(v)| (self-loop = +1). Reported for comparison, never asserted.
  std::vector<double> degree_share;
  std::vector<double> neighbor_share;
  double max_dev_degree_share = 0.0;
  double max_dev_neighbor_share = 0.0;

  double residual = 0.0;  // ||pi M - pi||_inf
  std::uint64_t iterations = 0;
};

// Power iteration of the normalized column weights from the all-ones start.
// Self-loops keep the chain aperiodic; without them a bipartite component can
// oscillate, which surfaces as a ConvergenceError carrying the residual.
StationaryResult stationary_distribution(const SocialGraph& g,
                                         const TransitionMatrix& m,
                                         double tol = 1e-10,
                                         std::uint64_t cap = 2'000'000);

}  // namespace blotto
