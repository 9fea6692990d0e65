#include "blotto/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include <nlohmann/json.hpp>

#include "blotto/errors.hpp"

namespace blotto {

namespace {

void check_params(std::size_t n, std::size_t degree, std::size_t edges) {
  if (n < 2) throw ContractError("n >= 2 required");
  if (degree < 1 || edges < 1) {
    throw ContractError("degree and edge count must be positive");
  }
}

}  // namespace

TrapezoidDensity difference_density(std::size_t n, std::size_t degree,
                                    std::size_t edges) {
  check_params(n, degree, edges);
  TrapezoidDensity d;
  d.intrinsic_top = 2.0 / static_cast<double>(n);
  d.network_top = static_cast<double>(degree) / static_cast<double>(edges);
  d.network_below =
      static_cast<unsigned long long>(degree) * n <= 2ULL * edges;
  const double a = d.intrinsic_top;
  const double b = d.network_top;
  d.z0 = -a;
  d.z1 = std::min(b - a, 0.0);
  d.z2 = std::max(b - a, 0.0);
  d.z3 = b;
  d.flat_height = 1.0 / std::max(a, b);
  d.mean = 0.5 * (b - a);
  d.variance = (a * a + b * b) / 12.0;
  return d;
}

double TrapezoidDensity::pdf(double z) const {
  if (z < z0 || z > z3) return 0.0;
  const double a = intrinsic_top, b = network_top;
  const double overlap = std::min(b, z + a) - std::max(0.0, z);
  return overlap > 0.0 ? overlap / (a * b) : 0.0;
}

double TrapezoidDensity::cdf(double z) const {
  if (z <= z0) return 0.0;
  if (z >= z3) return 1.0;
  const double ab2 = 2.0 * intrinsic_top * network_top;
  if (z <= z1) {
    const double w = z - z0;
    return w * w / ab2;
  }
  if (z >= z2) {
    const double w = z3 - z;
    return 1.0 - w * w / ab2;
  }
  const double w1 = z1 - z0;
  return w1 * w1 / ab2 + flat_height * (z - z1);
}

std::string density_csv(const TrapezoidDensity& d, std::size_t points) {
  if (points < 2) throw ContractError("need at least two rows");
  std::string out = "z,f_z\n";
  char buf[80];
  for (std::size_t i = 0; i < points; ++i) {
    const double z =
        d.z0 + (d.z3 - d.z0) * static_cast<double>(i) / (points - 1);
    std::snprintf(buf, sizeof buf, "%.12g,%.12g\n", z, d.pdf(z));
    out += buf;
  }
  return out;
}

double uniform_tv(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) throw ContractError("supports must be positive");
  if (a == b) return 0.0;
  return 1.0 - std::min(a, b) / std::max(a, b);
}

double tv_distance(std::size_t n, std::size_t degree, std::size_t edges) {
  check_params(n, degree, edges);
  const unsigned long long lhs = static_cast<unsigned long long>(degree) * n;
  const unsigned long long rhs = 2ULL * edges;
  if (lhs == rhs) return 0.0;  // identical supports, exactly zero
  double delta;
  if (lhs < rhs) {
    delta = 1.0 - 0.5 * static_cast<double>(n) *
                      (static_cast<double>(degree) / edges);
  } else {
    delta = 1.0 - (static_cast<double>(edges) / degree) *
                      (2.0 / static_cast<double>(n));
  }
  return std::clamp(delta, 0.0, 1.0);
}

TVReport average_tv(const SocialGraph& g) {
  const std::size_t n = g.node_count();
  if (n < 2) throw ContractError("n >= 2 required");
  const std::size_t edges = g.edge_count();

  TVReport rep;
  rep.per_node.reserve(n);
  double sum = 0.0, comp = 0.0;
  for (std::size_t v = 0; v < n; ++v) {
    const std::size_t deg = g.degree(static_cast<NodeId>(v));
    const double delta = tv_distance(n, deg, edges);
    const bool below = static_cast<unsigned long long>(deg) * n <= 2ULL * edges;
    rep.per_node.push_back(NodeTV{static_cast<NodeId>(v), deg, delta,
                                  below ? "d_le_2n" : "d_ge_2n"});
    const double y = delta - comp;  // Kahan: n can reach 10^6
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  rep.average = sum / static_cast<double>(n);
  return rep;
}

double empirical_tv(std::span<const double> a, std::span<const double> b,
                    std::size_t bins) {
  if (a.size() < 10'000 || b.size() < 10'000) {
    throw ContractError("need at least 10^4 draws per side");
  }
  if (bins < 1) throw ContractError("bins >= 1 required");

  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (double x : a) {
    lo = std::min(lo, x);
    hi = std::max(hi, x);
  }
  for (double x : b) {
    lo = std::min(lo, x);
    hi = std::max(hi, x);
  }
  if (!(hi > lo)) return 0.0;  // all mass at one point on both sides

  const double width = (hi - lo) / static_cast<double>(bins);
  std::vector<std::size_t> ca(bins, 0), cb(bins, 0);
  auto slot = [&](double x) {
    auto k = static_cast<std::size_t>((x - lo) / width);
    return std::min(k, bins - 1);
  };
  for (double x : a) ++ca[slot(x)];
  for (double x : b) ++cb[slot(x)];

  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  double tv = 0.0;
  for (std::size_t k = 0; k < bins; ++k) {
    tv += std::abs(static_cast<double>(ca[k]) / na -
                   static_cast<double>(cb[k]) / nb);
  }
  return 0.5 * tv;
}

nlohmann::json TVReport::to_json() const {
  nlohmann::json nodes = nlohmann::json::array();
  for (const NodeTV& nv : per_node) {
    nodes.push_back({{"node", nv.node},
                     {"degree", nv.degree},
                     {"delta", nv.delta},
                     {"case", nv.case_tag}});
  }
  return nlohmann::json{{"per_node", nodes}, {"average_delta", average}};
}

}  // namespace blotto
