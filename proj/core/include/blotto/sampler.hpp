#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "blotto/allocation.hpp"
#include "blotto/polygon.hpp"
#include "blotto/rng.hpp"
#include "blotto/valuation.hpp"

namespace blotto {

enum class Construction { all_in, triangle, polygon, approximate };
const char* to_string(Construction c);

struct PolygonSearchOptions {
  std::size_t max_attempts = 10'000;
  // Some general profiles admit no tangential ordering at all (a value close
  // to 1/2 overweights every cyclic pairing). A closed non-convex chain still
  // delivers exact uniform marginals and the exact sum, so it is tried before
  // degrading to the approximate projection sampler.
  bool enable_chain_fallback = true;
};

// Mixed-strategy generator for the budget game: coordinate i of a draw is
// uniform on [0, 2 a_i B] and the coordinates sum to B exactly. The triangle
// and polygon constructions project a uniform hemisphere point onto the
// incircle plane; all_in covers the degenerate profiles where a pure strategy
// is already optimal; approximate is the fallback when no tangential ordering
// exists (marginals then hold only approximately and reports must say so).
//
// draw(k) is a pure function of (construction, seed, k), so trials can be
// partitioned across workers and replayed exactly.
class EquilibriumSampler {
 public:
  static EquilibriumSampler make(const ValuationProfile& profile, double budget,
                                 std::uint64_t seed,
                                 const PolygonSearchOptions& options = {});
  static EquilibriumSampler triangle(const ValuationProfile& profile,
                                     double budget, std::uint64_t seed);
  static EquilibriumSampler polygon(const ValuationProfile& profile,
                                    double budget, std::uint64_t seed,
                                    const PolygonSearchOptions& options = {});
  static EquilibriumSampler all_in(const ValuationProfile& profile,
                                   double budget);

  Allocation draw(std::uint64_t index) const;
  void draw_into(std::uint64_t index, std::span<double> out) const;

  // The deterministic map behind draw() for the projection constructions:
  // height in [0, 1] and angle in [0, 2pi) locate the hemisphere point.
  Allocation at_hemisphere(double height, double angle) const;

  std::size_t size() const { return values_.size(); }
  const std::vector<double>& values() const { return values_; }
  double budget() const { return budget_; }
  std::uint64_t seed() const { return seed_; }
  Construction construction() const { return construction_; }
  bool exact() const { return construction_ != Construction::approximate; }
  const std::optional<TangentialPolygon>& polygon_geometry() const {
    return geometry_;
  }
  // "tangential" or "chain" for polygon constructions
  const char* polygon_method() const { return polygon_method_; }
  std::size_t search_attempts() const { return search_attempts_; }

  // {values, budget, seed, construction, details}
  nlohmann::json spec_json() const;

 private:
  EquilibriumSampler() = default;
  void project_into(double height, double angle, std::span<double> out) const;
  void approximate_into(std::uint64_t index, std::span<double> out) const;

  struct Side {
    std::uint32_t coord;  // original battlefield index
    double value;
    double nx, ny;  // outward unit normal of the side line
  };

  std::vector<double> values_;
  double budget_ = 1.0;
  std::uint64_t seed_ = 0;
  rng::Key key_{0};
  Construction construction_ = Construction::all_in;

  std::vector<Side> sides_;
  std::vector<std::uint32_t> zero_coords_;  // null-valued battlefields, always 0
  std::size_t all_in_index_ = 0;
  std::optional<TangentialPolygon> geometry_;
  const char* polygon_method_ = "";
  std::size_t search_attempts_ = 0;
  std::vector<double> approx_supports_;  // unit-budget supports 2 a_i
};

// B on the argmax-value object, ties broken by the lowest index. Only valid
// for pair or dominant profiles; general profiles need the mixed sampler.
Allocation all_in_strategy(const ValuationProfile& profile, double budget);

}  // namespace blotto
