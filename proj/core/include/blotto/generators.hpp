#pragma once

#include <cstdint>

#include "blotto/graph.hpp"

namespace blotto {

// Node 0 is the hub.
SocialGraph make_star(std::size_t n, bool self_loops = true);
SocialGraph make_complete(std::size_t n, bool self_loops = true);
SocialGraph make_cycle(std::size_t n, bool self_loops = true);

// Circulant ring: each node is joined to the half_width nearest nodes on both
// sides, giving a (2*half_width + self-loop)-regular graph.
SocialGraph make_ring_lattice(std::size_t n, std::size_t half_width,
                              bool self_loops = true);

// Self-loops only; the voter dynamics reduce to each node keeping its opinion.
SocialGraph make_edgeless(std::size_t n);

// G(n, p) with a seeded RNG, plus a self-loop on every node.
SocialGraph make_random(std::size_t n, double p, std::uint64_t seed);

}  // namespace blotto
