#include "blotto/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <nlohmann/json.hpp>

#include "blotto/errors.hpp"

namespace blotto {

namespace {

constexpr std::uint64_t kDrawTag = 0x01;
constexpr int kProjectionIterations = 50;
constexpr double kProjectionTol = 1e-12;

struct ActiveSplit {
  std::vector<std::uint32_t> active;
  std::vector<std::uint32_t> zeros;
  std::vector<double> active_values;  // renormalized to sum 1
};

ActiveSplit split_nulls(const std::vector<double>& values) {
  ActiveSplit s;
  double sum = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] > kNullTolerance) {
      s.active.push_back(static_cast<std::uint32_t>(i));
      s.active_values.push_back(values[i]);
      sum += values[i];
    } else {
      s.zeros.push_back(static_cast<std::uint32_t>(i));
    }
  }
  for (double& v : s.active_values) v /= sum;
  return s;
}

void check_budget(double budget) {
  if (!(budget > 0.0) || !std::isfinite(budget)) {
    throw ContractError("budget must be positive and finite");
  }
}

struct Vec2 {
  double x, y;
};

}  // namespace

const char* to_string(Construction c) {
  switch (c) {
    case Construction::all_in:
      return "all_in";
    case Construction::triangle:
      return "triangle";
    case Construction::polygon:
      return "polygon";
    case Construction::approximate:
      return "approximate";
  }
  return "";
}

Allocation all_in_strategy(const ValuationProfile& profile, double budget) {
  check_budget(budget);
  const Classification& c = profile.classification;
  if (!(c.pair || c.has_dominant)) {
    throw ContractError(
        "all-in is only optimal for pair or dominant profiles; use the mixed "
        "sampler");
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < profile.size(); ++i) {
    if (profile.values[i] > profile.values[best]) best = i;  // ties keep lowest
  }
  return simplex_vertex(profile.size(), best, budget);
}

EquilibriumSampler EquilibriumSampler::all_in(const ValuationProfile& profile,
                                              double budget) {
  check_budget(budget);
  EquilibriumSampler s;
  s.values_ = profile.values;
  s.budget_ = budget;
  s.construction_ = Construction::all_in;
  std::size_t best = 0;
  for (std::size_t i = 1; i < profile.size(); ++i) {
    if (profile.values[i] > profile.values[best]) best = i;
  }
  s.all_in_index_ = best;
  return s;
}

EquilibriumSampler EquilibriumSampler::triangle(const ValuationProfile& profile,
                                                double budget,
                                                std::uint64_t seed) {
  check_budget(budget);
  ActiveSplit sp = split_nulls(profile.values);
  if (sp.active.size() != 3 ||
      *std::max_element(sp.active_values.begin(), sp.active_values.end()) >=
          0.5) {
    throw ContractError(
        "triangle sampler needs a general three-value profile; classify() the "
        "values first");
  }
  const double a = sp.active_values[0];
  const double b = sp.active_values[1];
  const double c = sp.active_values[2];

  // Explicit triangle with side i of length value i: V0->V1 has length a,
  // V1->V2 length b, V2->V0 length c. General values keep it non-degenerate.
  const double x2 = (a * a + c * c - b * b) / (2.0 * a);
  const double y2sq = c * c - x2 * x2;
  if (!(y2sq > 0.0)) throw ContractError("degenerate triangle");
  const Vec2 v0{0.0, 0.0}, v1{a, 0.0}, v2{x2, std::sqrt(y2sq)};

  // incenter weights are the side lengths opposite each vertex
  const double perim = a + b + c;
  const Vec2 incenter{(b * v0.x + c * v1.x + a * v2.x) / perim,
                      (b * v0.y + c * v1.y + a * v2.y) / perim};

  EquilibriumSampler s;
  s.values_ = profile.values;
  s.budget_ = budget;
  s.seed_ = seed;
  s.key_ = rng::derive(seed, kDrawTag);
  s.construction_ = Construction::triangle;
  s.zero_coords_ = sp.zeros;

  const Vec2 verts[3] = {v0, v1, v2};
  for (int i = 0; i < 3; ++i) {
    const Vec2 p = verts[i];
    const Vec2 q = verts[(i + 1) % 3];
    const double ex = q.x - p.x, ey = q.y - p.y;
    const double len = std::hypot(ex, ey);
    double nx = ey / len, ny = -ex / len;
    if ((incenter.x - p.x) * nx + (incenter.y - p.y) * ny > 0.0) {
      nx = -nx;  // outward means the incenter sits on the negative side
      ny = -ny;
    }
    s.sides_.push_back(Side{sp.active[i], sp.active_values[i], nx, ny});
  }
  return s;
}

EquilibriumSampler EquilibriumSampler::polygon(const ValuationProfile& profile,
                                               double budget,
                                               std::uint64_t seed,
                                               const PolygonSearchOptions& options) {
  check_budget(budget);
  ActiveSplit sp = split_nulls(profile.values);
  if (sp.active.size() < 3 ||
      *std::max_element(sp.active_values.begin(), sp.active_values.end()) >=
          0.5) {
    throw ContractError(
        "polygon sampler needs a general profile; classify() the values "
        "first");
  }

  EquilibriumSampler s;
  s.values_ = profile.values;
  s.budget_ = budget;
  s.seed_ = seed;
  s.key_ = rng::derive(seed, kDrawTag);
  s.zero_coords_ = sp.zeros;

  auto found =
      search_tangential_ordering(sp.active_values, seed, options.max_attempts);
  if (found) {
    s.construction_ = Construction::polygon;
    s.polygon_method_ = "tangential";
    s.search_attempts_ = found->attempts;
    for (std::size_t pos = 0; pos < found->order.size(); ++pos) {
      const std::size_t ai = found->order[pos];
      const double phi = found->polygon.normal_angles[pos];
      s.sides_.push_back(Side{sp.active[ai], sp.active_values[ai],
                              std::cos(phi), std::sin(phi)});
    }
    s.geometry_ = std::move(found->polygon);
    return s;
  }

  if (options.enable_chain_fallback) {
    // No inscribed-circle ordering exists, but any closed chain keeps the
    // marginals exactly uniform and the sum exact.
    const auto normals = chain_normals(sp.active_values);
    s.construction_ = Construction::polygon;
    s.polygon_method_ = "chain";
    s.search_attempts_ = options.max_attempts;
    for (std::size_t i = 0; i < sp.active.size(); ++i) {
      s.sides_.push_back(Side{sp.active[i], sp.active_values[i], normals[i].nx,
                              normals[i].ny});
    }
    return s;
  }

  // Last resort, honest degradation: draw the marginals independently and
  // project onto the budget polytope; reports carry the construction tag so
  // downstream checks can relax.
  s.construction_ = Construction::approximate;
  s.search_attempts_ = options.max_attempts;
  for (std::size_t i = 0; i < sp.active.size(); ++i) {
    s.sides_.push_back(Side{sp.active[i], sp.active_values[i], 0.0, 0.0});
    s.approx_supports_.push_back(2.0 * sp.active_values[i]);
  }
  return s;
}

EquilibriumSampler EquilibriumSampler::make(const ValuationProfile& profile,
                                            double budget, std::uint64_t seed,
                                            const PolygonSearchOptions& options) {
  check_budget(budget);
  ActiveSplit sp = split_nulls(profile.values);
  if (sp.active.empty()) throw ContractError("all battlefield values are zero");
  const double top =
      *std::max_element(sp.active_values.begin(), sp.active_values.end());
  if (sp.active.size() <= 2 || top >= 0.5) return all_in(profile, budget);
  if (sp.active.size() == 3) return triangle(profile, budget, seed);
  return polygon(profile, budget, seed, options);
}

void EquilibriumSampler::project_into(double height, double angle,
                                      std::span<double> out) const {
  const double rho = std::sqrt(std::max(0.0, 1.0 - height * height));
  const double px = rho * std::cos(angle);
  const double py = rho * std::sin(angle);
  for (std::uint32_t c : zero_coords_) out[c] = 0.0;
  double total = 0.0;
  for (const Side& s : sides_) {
    const double h = 1.0 - (px * s.nx + py * s.ny);  // uniform on (0, 2)
    const double u = s.value * h;
    out[s.coord] = u;
    total += u;
  }
  // unit-budget shares first, then one multiply: draws scale exactly with B
  for (const Side& s : sides_) {
    out[s.coord] = budget_ * (out[s.coord] / total);
  }
}

void EquilibriumSampler::approximate_into(std::uint64_t index,
                                          std::span<double> out) const {
  for (std::uint32_t c : zero_coords_) out[c] = 0.0;
  const std::size_t k = sides_.size();
  for (std::size_t i = 0; i < k; ++i) {
    out[sides_[i].coord] = approx_supports_[i] * rng::unit(key_, index, i);
  }
  for (int iter = 0; iter < kProjectionIterations; ++iter) {
    double sum = 0.0;
    for (const Side& s : sides_) sum += out[s.coord];
    const double residual = 1.0 - sum;
    if (std::abs(residual) <= kProjectionTol) break;
    const double shift = residual / static_cast<double>(k);
    for (std::size_t i = 0; i < k; ++i) {
      const double v = out[sides_[i].coord] + shift;
      out[sides_[i].coord] = std::clamp(v, 0.0, approx_supports_[i]);
    }
  }
  for (const Side& s : sides_) out[s.coord] *= budget_;
}

void EquilibriumSampler::draw_into(std::uint64_t index,
                                   std::span<double> out) const {
  if (out.size() != values_.size()) {
    throw ContractError("output length does not match the profile");
  }
  switch (construction_) {
    case Construction::all_in:
      std::fill(out.begin(), out.end(), 0.0);
      out[all_in_index_] = budget_;
      return;
    case Construction::approximate:
      approximate_into(index, out);
      return;
    case Construction::triangle:
    case Construction::polygon: {
      const double z = rng::unit(key_, index, 0);
      const double angle = 2.0 * std::numbers::pi * rng::unit(key_, index, 1);
      project_into(z, angle, out);
      return;
    }
  }
}

Allocation EquilibriumSampler::draw(std::uint64_t index) const {
  Allocation a;
  a.budget = budget_;
  a.amounts.resize(values_.size());
  draw_into(index, a.amounts);
  return a;
}

Allocation EquilibriumSampler::at_hemisphere(double height,
                                             double angle) const {
  if (construction_ != Construction::triangle &&
      construction_ != Construction::polygon) {
    throw ContractError("hemisphere map exists only for projection samplers");
  }
  if (!(height >= 0.0 && height <= 1.0)) {
    throw ContractError("height must lie in [0, 1]");
  }
  Allocation a;
  a.budget = budget_;
  a.amounts.resize(values_.size());
  project_into(height, angle, a.amounts);
  return a;
}

nlohmann::json EquilibriumSampler::spec_json() const {
  nlohmann::json details = nlohmann::json::object();
  switch (construction_) {
    case Construction::all_in:
      details["index"] = all_in_index_;
      break;
    case Construction::triangle:
      break;
    case Construction::polygon: {
      std::vector<std::uint32_t> order;
      for (const Side& s : sides_) order.push_back(s.coord);
      details["order"] = order;
      details["method"] = polygon_method_;
      if (geometry_) {
        details["tangent_lengths"] = geometry_->tangent_lengths;
        details["scale"] = geometry_->scale;
      }
      details["search_attempts"] = search_attempts_;
      break;
    }
    case Construction::approximate:
      details["search_attempts"] = search_attempts_;
      details["projection_iterations"] = kProjectionIterations;
      break;
  }
  return nlohmann::json{{"values", values_},
                        {"budget", budget_},
                        {"seed", seed_},
                        {"construction", to_string(construction_)},
                        {"details", details}};
}

}  // namespace blotto
