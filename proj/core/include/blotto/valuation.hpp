#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "blotto/graph.hpp"
#include "blotto/transition.hpp"

namespace blotto {

// Flags, not an enum: a profile can be dominant and null-carrying at once.
// general() means every value sits strictly inside (0, 1/2) and n > 2, the
// regime where only mixed strategies survive.
struct Classification {
  bool has_dominant = false;  // some a_i >= 1/2
  bool has_nulls = false;     // some a_i = 0 (within kNullTolerance)
  bool pair = false;          // n == 2

  bool general() const { return !has_dominant && !has_nulls && !pair; }
  std::vector<std::string> tags() const;
};

inline constexpr double kNullTolerance = 1e-12;

enum class HorizonKind { intrinsic, finite, longterm };

struct Horizon {
  HorizonKind kind = HorizonKind::intrinsic;
  std::uint64_t tau = 0;

  // "intrinsic" | "tau:<k>" | "longterm"
  static Horizon parse(const std::string& text);
  std::string str() const;
};

struct ClosedFormComparison {
  std::vector<double> degree_share;    // d_i / 2|E|, self-loop counted twice
  std::vector<double> neighbor_share;  // |N(i)| / sum|N|, self-loop counted once
  double max_dev_degree_share = 0.0;
  double max_dev_neighbor_share = 0.0;
  double residual = 0.0;
};

// Relative battlefield values a_i: the worth of winning node i, normalized to
// sum 1. Horizon picks which influence weighting produced them.
struct ValuationProfile {
  std::vector<double> values;
  Horizon horizon;
  Classification classification;
  std::optional<ClosedFormComparison> closed_form;  // longterm only

  std::size_t size() const { return values.size(); }

  // {horizon, values, classification, closed_form_comparison?}
  nlohmann::json report_json() const;
};

// a_i = 1/n: every node weighted by itself alone. Requires n >= 2 (a single
// battlefield always ties).
ValuationProfile intrinsic_values(std::size_t n);

// a_u proportional to the column sums of M^tau: the weight of node u's initial
// opinion on the expected score after tau voter rounds.
ValuationProfile horizon_values(const SocialGraph& g, std::uint64_t tau,
                                std::uint64_t cap = kDefaultPowerCap);
ValuationProfile horizon_values(const SocialGraph& g, const TransitionMatrix& m,
                                std::uint64_t tau,
                                std::uint64_t cap = kDefaultPowerCap);

// a_u = pi(u), the stationary fixed point of M, with the closed-form
// degree-share candidates attached for reporting.
ValuationProfile longterm_values(const SocialGraph& g);

ValuationProfile values_for(const SocialGraph& g, const Horizon& horizon);

// Normalizes internally; throws ContractError on an all-zero vector.
Classification classify(std::span<const double> values);

}  // namespace blotto
