#include "blotto/polygon.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "blotto/errors.hpp"
#include "blotto/rng.hpp"

namespace blotto {

namespace {

constexpr double kNegativeTol = 1e-12;
constexpr std::uint64_t kOrderSearchTag = 0x03;

// The closure equation sum_i atan(c t_i) = pi saturates at (pi/2) * #positives,
// so fewer than three positive tangent lengths cannot reach pi.
constexpr int kMinPositive = 3;

void check_sides(std::span<const double> sides) {
  for (double s : sides) {
    if (!(s >= 0.0) || !std::isfinite(s)) {
      throw ContractError("sides must be finite and non-negative");
    }
  }
}

}  // namespace

std::optional<std::vector<double>> solve_tangent_lengths(
    std::span<const double> sides) {
  const std::size_t m = sides.size();
  if (m < 3) throw ContractError("need at least 3 sides");
  if (m % 2 == 0) {
    throw ContractError(
        "even side counts make the cyclic system singular; use "
        "solve_tangent_family");
  }
  check_sides(sides);

  double alternating = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    alternating += (j % 2 == 0) ? sides[j] : -sides[j];
  }
  std::vector<double> t(m);
  t[0] = 0.5 * alternating;
  for (std::size_t i = 0; i + 1 < m; ++i) t[i + 1] = sides[i] - t[i];

  for (double& ti : t) {
    if (ti < -kNegativeTol) return std::nullopt;
    if (ti < 0.0) ti = 0.0;
  }
  return t;
}

std::optional<std::vector<double>> solve_tangent_family(
    std::span<const double> sides, double pitot_tol) {
  const std::size_t m = sides.size();
  if (m < 4 || m % 2 != 0) {
    throw ContractError("family solve needs an even side count >= 4");
  }
  check_sides(sides);

  double alternating = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    alternating += (j % 2 == 0) ? sides[j] : -sides[j];
  }
  if (std::abs(alternating) > pitot_tol) return std::nullopt;

  // t_i(c) = base_i + c for even i, base_i - c for odd i
  std::vector<double> base(m);
  base[0] = 0.0;
  for (std::size_t i = 0; i + 1 < m; ++i) base[i + 1] = sides[i] - base[i];

  double lo = 0.0, hi = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < m; ++i) {
    if (i % 2 == 0) {
      lo = std::max(lo, -base[i]);
    } else {
      hi = std::min(hi, base[i]);
    }
  }
  if (lo > hi) return std::nullopt;

  const double c = 0.5 * (lo + hi);
  std::vector<double> t(m);
  for (std::size_t i = 0; i < m; ++i) {
    t[i] = (i % 2 == 0) ? base[i] + c : base[i] - c;
    if (t[i] < 0.0) t[i] = 0.0;
  }
  return t;
}

double TangentialPolygon::semiperimeter() const {
  return 0.5 * std::accumulate(side_values.begin(), side_values.end(), 0.0);
}

double TangentialPolygon::side_defect() const {
  const std::size_t m = side_values.size();
  double worst = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double got = tangent_lengths[i] + tangent_lengths[(i + 1) % m];
    worst = std::max(worst, std::abs(got - side_values[i]));
  }
  return worst;
}

double TangentialPolygon::closure_defect() const {
  double sx = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < side_values.size(); ++i) {
    sx += side_values[i] * std::cos(normal_angles[i]);
    sy += side_values[i] * std::sin(normal_angles[i]);
  }
  return std::hypot(sx, sy);
}

std::optional<TangentialPolygon> build_tangential_polygon(
    std::span<const double> sides) {
  const std::size_t m = sides.size();
  if (m < 3) throw ContractError("polygon needs at least 3 sides");

  std::optional<std::vector<double>> t = (m % 2 == 1)
                                             ? solve_tangent_lengths(sides)
                                             : solve_tangent_family(sides);
  if (!t) return std::nullopt;

  int positives = 0;
  for (double ti : *t) {
    if (ti > 0.0) ++positives;
  }
  if (positives < kMinPositive) return std::nullopt;

  const double pi = std::numbers::pi;
  auto angle_sum = [&](double c) {
    double acc = 0.0;
    for (double ti : *t) acc += std::atan(c * ti);
    return acc;
  };

  double hi = 1.0;
  while (angle_sum(hi) < pi) {
    hi *= 2.0;
    if (hi > 1e300) return std::nullopt;
  }
  double lo = 0.0;
  for (int iter = 0; iter < 200 && (hi - lo) > 1e-16 * hi; ++iter) {
    const double mid = 0.5 * (lo + hi);
    (angle_sum(mid) < pi ? lo : hi) = mid;
  }
  const double c = 0.5 * (lo + hi);

  TangentialPolygon poly;
  poly.scale = c;
  poly.side_values.resize(m);
  poly.tangent_lengths.resize(m);
  poly.normal_angles.resize(m);
  double phi = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    poly.side_values[i] = c * sides[i];
    poly.tangent_lengths[i] = c * (*t)[i];
    if (i > 0) phi += 2.0 * std::atan(poly.tangent_lengths[i]);
    poly.normal_angles[i] = phi;
  }
  return poly;
}

std::optional<OrderingSearch> search_tangential_ordering(
    std::span<const double> sides, std::uint64_t seed,
    std::size_t max_attempts) {
  const std::size_t m = sides.size();
  if (m < 3) throw ContractError("polygon needs at least 3 sides");
  check_sides(sides);

  std::size_t attempts = 0;
  auto try_order =
      [&](const std::vector<std::size_t>& order) -> std::optional<OrderingSearch> {
    ++attempts;
    std::vector<double> arranged(m);
    for (std::size_t pos = 0; pos < m; ++pos) arranged[pos] = sides[order[pos]];
    if (auto poly = build_tangential_polygon(arranged)) {
      return OrderingSearch{std::move(*poly), order, attempts};
    }
    return std::nullopt;
  };

  std::vector<std::size_t> identity(m);
  std::iota(identity.begin(), identity.end(), std::size_t{0});
  std::vector<std::size_t> descending = identity;
  std::sort(descending.begin(), descending.end(),
            [&](std::size_t a, std::size_t b) { return sides[a] > sides[b]; });
  std::vector<std::size_t> ascending(descending.rbegin(), descending.rend());
  std::vector<std::size_t> zigzag;  // largest, smallest, 2nd largest, ...
  zigzag.reserve(m);
  for (std::size_t lo = 0, hi = m; lo < hi;) {
    zigzag.push_back(descending[lo++]);
    if (lo < hi) zigzag.push_back(descending[--hi]);
  }

  for (const auto& order : {identity, descending, ascending, zigzag}) {
    if (auto r = try_order(order)) return r;
  }

  // pinned Fisher-Yates so orderings do not depend on the standard library
  const rng::Key key = rng::derive(seed, kOrderSearchTag);
  std::uint64_t ctr = 0;
  std::vector<std::size_t> order = identity;
  while (attempts < max_attempts) {
    for (std::size_t i = m; i > 1; --i) {
      const std::uint32_t j =
          rng::below(rng::word(key, ctr++), static_cast<std::uint32_t>(i));
      std::swap(order[i - 1], order[j]);
    }
    if (auto r = try_order(order)) return r;
  }
  return std::nullopt;
}

std::vector<SideNormal> chain_normals(std::span<const double> sides) {
  const std::size_t m = sides.size();
  if (m < 3) throw ContractError("polygon needs at least 3 sides");
  check_sides(sides);

  std::size_t longest = 0;
  double perimeter = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    if (sides[i] > sides[longest]) longest = i;
    perimeter += sides[i];
  }
  if (!(sides[longest] < perimeter - sides[longest])) {
    throw ContractError("no polygon closes: one side is at least half the "
                        "perimeter");
  }

  // Build the chain with the longest side as the base and the remaining links
  // folded back from its far end to the origin, clamping each intermediate
  // distance into the interval the leftover links can still reach.
  std::vector<std::size_t> rest;
  for (std::size_t i = 0; i < m; ++i) {
    if (i != longest) rest.push_back(i);
  }
  std::vector<double> reach_hi(rest.size() + 1, 0.0);  // suffix sums
  std::vector<double> reach_max(rest.size() + 1, 0.0);
  for (std::size_t i = rest.size(); i-- > 0;) {
    reach_hi[i] = reach_hi[i + 1] + sides[rest[i]];
    reach_max[i] = std::max(reach_max[i + 1], sides[rest[i]]);
  }

  std::vector<double> ex(m), ey(m);  // edge vectors
  ex[longest] = sides[longest];
  ey[longest] = 0.0;
  double px = sides[longest], py = 0.0;  // chain tip, walking back to (0,0)
  for (std::size_t i = 0; i < rest.size(); ++i) {
    const double len = sides[rest[i]];
    const double dist = std::hypot(px, py);
    const double lo = std::max(2.0 * reach_max[i + 1] - reach_hi[i + 1], 0.0);
    const double hi = reach_hi[i + 1];
    const double next = std::clamp(std::abs(dist - len), lo, hi);

    double qx, qy;
    if (dist <= 0.0) {
      qx = px + len;  // tip sits on the target; any direction closes
      qy = py;
    } else {
      const double tx = -px / dist, ty = -py / dist;  // toward the origin
      double cosg =
          (dist * dist + len * len - next * next) / (2.0 * dist * len);
      cosg = std::clamp(cosg, -1.0, 1.0);
      const double sing = std::sqrt(std::max(0.0, 1.0 - cosg * cosg));
      qx = px + len * (tx * cosg - ty * sing);
      qy = py + len * (tx * sing + ty * cosg);
    }
    ex[rest[i]] = qx - px;
    ey[rest[i]] = qy - py;
    px = qx;
    py = qy;
  }

  std::vector<SideNormal> normals(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double len = std::hypot(ex[i], ey[i]);
    normals[i] = SideNormal{ey[i] / len, -ex[i] / len};
  }
  return normals;
}

}  // namespace blotto
