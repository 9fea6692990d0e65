#include "blotto/valuation.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

#include "blotto/errors.hpp"

namespace blotto {

namespace {

void normalize_exact(std::vector<double>& values) {
  double sum = 0.0;
  for (double v : values) sum += v;
  for (double& v : values) v /= sum;
}

}  // namespace

std::vector<std::string> Classification::tags() const {
  if (general()) return {"general"};
  std::vector<std::string> t;
  if (has_dominant) t.push_back("has_dominant");
  if (has_nulls) t.push_back("has_nulls");
  if (pair) t.push_back("pair");
  return t;
}

Horizon Horizon::parse(const std::string& text) {
  if (text == "intrinsic") return {HorizonKind::intrinsic, 0};
  if (text == "longterm") return {HorizonKind::longterm, 0};
  if (text.rfind("tau:", 0) == 0) {
    const std::string digits = text.substr(4);
    if (digits.empty() ||
        digits.find_first_not_of("0123456789") != std::string::npos) {
      throw ContractError("bad horizon '" + text + "'");
    }
    return {HorizonKind::finite, std::stoull(digits)};
  }
  throw ContractError("bad horizon '" + text +
                      "' (expected intrinsic, tau:<int> or longterm)");
}

std::string Horizon::str() const {
  switch (kind) {
    case HorizonKind::intrinsic:
      return "intrinsic";
    case HorizonKind::finite:
      return "tau:" + std::to_string(tau);
    case HorizonKind::longterm:
      return "longterm";
  }
  return "";
}

Classification classify(std::span<const double> values) {
  if (values.empty()) throw ContractError("empty value vector");
  double sum = 0.0;
  for (double v : values) {
    if (v < 0.0 || !std::isfinite(v)) {
      throw ContractError("values must be finite and non-negative");
    }
    sum += v;
  }
  if (sum <= 0.0) throw ContractError("all-zero value vector");

  Classification c;
  c.pair = values.size() == 2;
  for (double v : values) {
    const double a = v / sum;
    if (a >= 0.5) c.has_dominant = true;
    if (a <= kNullTolerance) c.has_nulls = true;
  }
  return c;
}

nlohmann::json ValuationProfile::report_json() const {
  nlohmann::json j{{"horizon", horizon.str()},
                   {"values", values},
                   {"classification", classification.tags()}};
  if (closed_form) {
    j["closed_form_comparison"] = {
        {"degree_share", closed_form->degree_share},
        {"neighbor_share", closed_form->neighbor_share},
        {"max_dev_degree_share", closed_form->max_dev_degree_share},
        {"max_dev_neighbor_share", closed_form->max_dev_neighbor_share},
        {"fixed_point_residual", closed_form->residual}};
  }
  return j;
}

ValuationProfile intrinsic_values(std::size_t n) {
  if (n < 2) {
    throw ContractError("n >= 2 required: a single battlefield always ties");
  }
  ValuationProfile p;
  p.values.assign(n, 1.0 / static_cast<double>(n));
  normalize_exact(p.values);
  p.horizon = {HorizonKind::intrinsic, 0};
  p.classification = classify(p.values);
  return p;
}

ValuationProfile horizon_values(const SocialGraph& g, const TransitionMatrix& m,
                                std::uint64_t tau, std::uint64_t cap) {
  if (g.node_count() < 2) {
    throw ContractError("n >= 2 required: a single battlefield always ties");
  }
  ValuationProfile p;
  p.values = matrix_power_column_weights(m, tau, cap);
  const double dn = static_cast<double>(p.values.size());
  for (double& v : p.values) v /= dn;
  normalize_exact(p.values);
  p.horizon = {HorizonKind::finite, tau};
  p.classification = classify(p.values);
  return p;
}

ValuationProfile horizon_values(const SocialGraph& g, std::uint64_t tau,
                                std::uint64_t cap) {
  return horizon_values(g, transition_matrix(g), tau, cap);
}

ValuationProfile longterm_values(const SocialGraph& g) {
  if (g.node_count() < 2) {
    throw ContractError("n >= 2 required: a single battlefield always ties");
  }
  const TransitionMatrix m(g);
  StationaryResult s = stationary_distribution(g, m);
  ValuationProfile p;
  p.values = s.pi;
  normalize_exact(p.values);
  p.horizon = {HorizonKind::longterm, 0};
  p.classification = classify(p.values);
  p.closed_form = ClosedFormComparison{
      std::move(s.degree_share), std::move(s.neighbor_share),
      s.max_dev_degree_share, s.max_dev_neighbor_share, s.residual};
  return p;
}

ValuationProfile values_for(const SocialGraph& g, const Horizon& horizon) {
  switch (horizon.kind) {
    case HorizonKind::intrinsic:
      return intrinsic_values(g.node_count());
    case HorizonKind::finite:
      return horizon_values(g, horizon.tau);
    case HorizonKind::longterm:
      return longterm_values(g);
  }
  throw ContractError("bad horizon");
}

}  // namespace blotto
