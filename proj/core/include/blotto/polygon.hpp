#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace blotto {

// Unique solution of the cyclic system t_i + t_{i+1} = side_i for an odd
// number of sides: t_i = (1/2) sum_j (-1)^j side_{i+j}. Returns nullopt when
// some t_i < -1e-12 (tiny negatives inside the tolerance are clamped to 0).
// An even side count is a contract error: the even system is singular, use
// solve_tangent_family.
std::optional<std::vector<double>> solve_tangent_lengths(
    std::span<const double> sides);

// Even-count system. Consistent only when the alternating side sums balance
// (the Pitot condition); the solutions then form a one-parameter family and
// the midpoint of the feasible interval is returned, or nullopt when the
// condition fails or the interval is empty.
std::optional<std::vector<double>> solve_tangent_family(
    std::span<const double> sides, double pitot_tol = 1e-12);

// Convex polygon circumscribing the unit circle. side_values are the input
// sides rescaled by `scale` so the incircle radius is exactly 1;
// normal_angles[i] is the angle of side i's tangent point, which is also the
// direction of its outward normal.
struct TangentialPolygon {
  std::vector<double> side_values;
  std::vector<double> tangent_lengths;
  std::vector<double> normal_angles;
  double scale = 1.0;
  static constexpr double radius = 1.0;

  std::size_t side_count() const { return side_values.size(); }
  double semiperimeter() const;
  double area() const { return radius * semiperimeter(); }

  // max |t_i + t_{i+1} - side_i|
  double side_defect() const;
  // |sum_i side_i * normal_i|; zero for a closed polygon
  double closure_defect() const;
};

// Solves the tangent lengths for the given cyclic ordering, then the closure
// scale c with sum_i atan(c t_i) = pi. Needs at least three strictly positive
// tangent lengths, otherwise the polygon degenerates and nullopt is returned.
std::optional<TangentialPolygon> build_tangential_polygon(
    std::span<const double> sides);

struct OrderingSearch {
  TangentialPolygon polygon;
  std::vector<std::size_t> order;  // order[position] = index into input sides
  std::size_t attempts = 0;
};

// Feasibility depends on the cyclic ordering of the sides. Tries a few
// deterministic arrangements (as given, sorted, large/small interleave), then
// up to max_attempts seeded random permutations.
std::optional<OrderingSearch> search_tangential_ordering(
    std::span<const double> sides, std::uint64_t seed,
    std::size_t max_attempts = 10'000);

struct SideNormal {
  double nx, ny;
};

// Unit normals of a closed polygon chain with the given side lengths, in the
// given order. The polygon need not be convex or circumscribe anything; the
// sampler only needs the closure identity sum_i side_i * normal_i = 0, which
// any closed chain provides. Exists whenever the largest side is shorter than
// the other sides combined (ContractError otherwise), so it covers profiles
// that admit no tangential ordering at all.
std::vector<SideNormal> chain_normals(std::span<const double> sides);

}  // namespace blotto
