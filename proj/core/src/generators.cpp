#include "blotto/generators.hpp"

#include <utility>
#include <vector>

#include "blotto/errors.hpp"
#include "blotto/rng.hpp"

namespace blotto {

namespace {
using EdgeList = std::vector<std::pair<NodeId, NodeId>>;

constexpr std::uint64_t kGnpTag = 0x21;
}  // namespace

SocialGraph make_star(std::size_t n, bool self_loops) {
  if (n < 2) throw ContractError("star needs n >= 2");
  EdgeList edges;
  edges.reserve(n - 1);
  for (std::size_t leaf = 1; leaf < n; ++leaf) {
    edges.emplace_back(0, static_cast<NodeId>(leaf));
  }
  return SocialGraph(n, edges, self_loops);
}

SocialGraph make_complete(std::size_t n, bool self_loops) {
  if (n < 1) throw ContractError("complete graph needs n >= 1");
  EdgeList edges;
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      edges.emplace_back(static_cast<NodeId>(u), static_cast<NodeId>(v));
    }
  }
  return SocialGraph(n, edges, self_loops);
}

SocialGraph make_cycle(std::size_t n, bool self_loops) {
  if (n < 3) throw ContractError("cycle needs n >= 3");
  EdgeList edges;
  edges.reserve(n);
  for (std::size_t v = 0; v < n; ++v) {
    edges.emplace_back(static_cast<NodeId>(v),
                       static_cast<NodeId>((v + 1) % n));
  }
  return SocialGraph(n, edges, self_loops);
}

SocialGraph make_ring_lattice(std::size_t n, std::size_t half_width,
                              bool self_loops) {
  if (n < 3) throw ContractError("ring lattice needs n >= 3");
  if (half_width < 1 || 2 * half_width >= n) {
    throw ContractError("ring lattice needs 1 <= half_width < n/2");
  }
  EdgeList edges;
  edges.reserve(n * half_width);
  for (std::size_t v = 0; v < n; ++v) {
    for (std::size_t o = 1; o <= half_width; ++o) {
      edges.emplace_back(static_cast<NodeId>(v),
                         static_cast<NodeId>((v + o) % n));
    }
  }
  return SocialGraph(n, edges, self_loops);
}

SocialGraph make_edgeless(std::size_t n) {
  if (n < 1) throw ContractError("graph needs at least one node");
  return SocialGraph(n, {}, /*auto_loop=*/true);
}

SocialGraph make_random(std::size_t n, double p, std::uint64_t seed) {
  if (n < 1) throw ContractError("graph needs at least one node");
  if (p < 0.0 || p > 1.0) throw ContractError("edge probability outside [0,1]");
  const rng::Key key = rng::derive(seed, kGnpTag);
  EdgeList edges;
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      if (rng::unit(key, u, v) < p) {
        edges.emplace_back(static_cast<NodeId>(u), static_cast<NodeId>(v));
      }
    }
  }
  return SocialGraph(n, edges, /*auto_loop=*/true);
}

}  // namespace blotto
