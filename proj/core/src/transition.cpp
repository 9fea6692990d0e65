#include "blotto/transition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "blotto/errors.hpp"

namespace blotto {

TransitionMatrix::TransitionMatrix(const SocialGraph& g) {
  const std::size_t n = g.node_count();
  neighbors_.reserve(n);
  inv_degree_.reserve(n);
  for (std::size_t v = 0; v < n; ++v) {
    const auto& nb = g.neighbors(static_cast<NodeId>(v));
    neighbors_.push_back(nb);
    inv_degree_.push_back(1.0 / static_cast<double>(nb.size()));
  }
  if (n <= kDenseLimit) {
    dense_ = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n),
                                   static_cast<Eigen::Index>(n));
    for (std::size_t v = 0; v < n; ++v) {
      for (NodeId u : neighbors_[v]) {
        dense_(static_cast<Eigen::Index>(v), u) = inv_degree_[v];
      }
    }
  }
}

double TransitionMatrix::entry(NodeId v, NodeId u) const {
  const auto& nb = neighbors_[v];
  return std::binary_search(nb.begin(), nb.end(), u) ? inv_degree_[v] : 0.0;
}

const Eigen::MatrixXd& TransitionMatrix::dense() const {
  if (!is_dense()) {
    throw SizeError("dense form is only kept for n <= " +
                    std::to_string(kDenseLimit));
  }
  return dense_;
}

void TransitionMatrix::left_apply(std::span<const double> w,
                                  std::span<double> out) const {
  const std::size_t n = size();
  if (w.size() != n || out.size() != n) {
    throw ContractError("vector length does not match matrix size");
  }
  // (wM)(u) = sum_{v in N(u)} w(v)/|N(v)|; undirected, so column u's support
  // is exactly N(u).
  for (std::size_t u = 0; u < n; ++u) {
    double acc = 0.0;
    for (NodeId v : neighbors_[u]) {
      acc += w[v] * inv_degree_[v];
    }
    out[u] = acc;
  }
}

std::vector<double> TransitionMatrix::left_apply(
    std::span<const double> w) const {
  std::vector<double> out(size());
  left_apply(w, out);
  return out;
}

std::vector<double> TransitionMatrix::row_sums() const {
  std::vector<double> sums(size());
  for (std::size_t v = 0; v < size(); ++v) {
    double acc = 0.0;
    for (std::size_t i = 0; i < neighbors_[v].size(); ++i) {
      acc += inv_degree_[v];
    }
    sums[v] = acc;
  }
  return sums;
}

TransitionMatrix transition_matrix(const SocialGraph& g) {
  return TransitionMatrix(g);
}

std::vector<double> matrix_power_column_weights(const TransitionMatrix& m,
                                                std::uint64_t t,
                                                std::uint64_t cap) {
  if (t > cap) {
    throw IterationCapError(
        "matrix power step count " + std::to_string(t) +
            " exceeds the iteration cap; use the stationary form",
        cap);
  }
  std::vector<double> w(m.size(), 1.0);
  std::vector<double> buf(m.size());
  for (std::uint64_t s = 0; s < t; ++s) {
    m.left_apply(w, buf);
    w.swap(buf);
  }
  return w;
}

Eigen::MatrixXd dense_power(const TransitionMatrix& m, std::uint64_t t) {
  const auto n = static_cast<Eigen::Index>(m.size());
  Eigen::MatrixXd result = Eigen::MatrixXd::Identity(n, n);
  Eigen::MatrixXd base = m.dense();
  while (t > 0) {
    if (t & 1) result = result * base;
    base = base * base;
    t >>= 1;
  }
  return result;
}

StationaryResult stationary_distribution(const SocialGraph& g,
                                         const TransitionMatrix& m,
                                         double tol, std::uint64_t cap) {
  const std::size_t n = m.size();
  const double dn = static_cast<double>(n);
  std::vector<double> w(n, 1.0);
  std::vector<double> buf(n);

  double residual = std::numeric_limits<double>::infinity();
  std::uint64_t it = 0;
  while (it < cap) {
    m.left_apply(w, buf);
    ++it;
    residual = 0.0;
    for (std::size_t u = 0; u < n; ++u) {
      residual = std::max(residual, std::abs(buf[u] - w[u]) / dn);
    }
    // mass is conserved analytically; renormalize against drift
    double mass = 0.0;
    for (double x : buf) mass += x;
    const double scale = dn / mass;
    for (double& x : buf) x *= scale;
    w.swap(buf);
    if (residual < tol) break;
  }
  if (residual >= tol) {
    throw ConvergenceError("stationary power iteration did not converge", residual);
  }

  StationaryResult r;
  r.iterations = it;
  r.pi.resize(n);
  double mass = 0.0;
  for (double x : w) mass += x;
  for (std::size_t u = 0; u < n; ++u) r.pi[u] = w[u] / mass;

  m.left_apply(r.pi, buf);
  r.residual = 0.0;
  for (std::size_t u = 0; u < n; ++u) {
    r.residual = std::max(r.residual, std::abs(buf[u] - r.pi[u]));
  }

  const DegreeProfile deg = g.degree_profile();
  const double two_e = 2.0 * static_cast<double>(deg.edge_count);
  double neighbor_total = 0.0;
  for (std::size_t u = 0; u < n; ++u) {
    neighbor_total += static_cast<double>(g.neighbors(static_cast<NodeId>(u)).size());
  }
  r.degree_share.resize(n);
  r.neighbor_share.resize(n);
  for (std::size_t u = 0; u < n; ++u) {
    r.degree_share[u] = static_cast<double>(deg.degree[u]) / two_e;
    r.neighbor_share[u] =
        static_cast<double>(g.neighbors(static_cast<NodeId>(u)).size()) /
        neighbor_total;
    r.max_dev_degree_share =
        std::max(r.max_dev_degree_share, std::abs(r.pi[u] - r.degree_share[u]));
    r.max_dev_neighbor_share = std::max(
        r.max_dev_neighbor_share, std::abs(r.pi[u] - r.neighbor_share[u]));
  }
  return r;
}

}  // namespace blotto
