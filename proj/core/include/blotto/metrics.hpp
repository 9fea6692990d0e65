#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "blotto/graph.hpp"

namespace blotto {

// Density of the per-node allocation gap between the two optimal marginals at
// budget 1: the network-aware draw U(0, d/|E|) minus the intrinsic draw
// U(0, 2/n). Piecewise linear with a flat middle (a trapezoid).
struct TrapezoidDensity {
  double intrinsic_top = 0.0;  // 2/n
  double network_top = 0.0;    // d/|E|
  double z0 = 0.0, z1 = 0.0, z2 = 0.0, z3 = 0.0;  // support [z0,z3], flat [z1,z2]
  double flat_height = 0.0;
  double mean = 0.0;      // (d/|E| - 2/n) / 2
  double variance = 0.0;  // ((2/n)^2 + (d/|E|)^2) / 12
  bool network_below = true;  // d/|E| <= 2/n

  double pdf(double z) const;
  double cdf(double z) const;
  const char* case_tag() const { return network_below ? "d_le_2n" : "d_ge_2n"; }
};

TrapezoidDensity difference_density(std::size_t n, std::size_t degree,
                                    std::size_t edges);

// "z,f_z" rows covering the support; plotting aid.
std::string density_csv(const TrapezoidDensity& d, std::size_t points = 201);

// Total variation distance between U(0,a) and U(0,b): 1 - min/max.
double uniform_tv(double a, double b);

// Per-node distance between the intrinsic and network-aware strategies.
// Exactly zero when n * d == 2|E| (every k-regular graph).
double tv_distance(std::size_t n, std::size_t degree, std::size_t edges);

struct NodeTV {
  NodeId node = 0;
  std::size_t degree = 0;
  double delta = 0.0;
  const char* case_tag = "";
};

struct TVReport {
  std::vector<NodeTV> per_node;
  double average = 0.0;

  nlohmann::json to_json() const;
};

TVReport average_tv(const SocialGraph& g);

// Histogram estimate (1/2) sum_k |p_k - q_k| over shared equal-width bins.
// Requires at least 10^4 draws per side.
double empirical_tv(std::span<const double> a, std::span<const double> b,
                    std::size_t bins = 200);

}  // namespace blotto
