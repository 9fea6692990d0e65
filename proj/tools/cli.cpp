#include "cli.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <utility>
#include <vector>

#include "blotto/allocation.hpp"
#include "blotto/errors.hpp"
#include "blotto/graph.hpp"
#include "blotto/metrics.hpp"
#include "blotto/payoff.hpp"
#include "blotto/rng.hpp"
#include "blotto/sampler.hpp"
#include "blotto/valuation.hpp"
#include "blotto/version.hpp"
#include "blotto/voter.hpp"

namespace blotto::cli {

namespace {

using nlohmann::json;

constexpr std::uint64_t kOpponentTag = 0x31;
constexpr std::size_t kRandomOpponents = 100;

// Fixed schedule for the price-of-competition table; ratios are computed from
// the exact powers of ten, not by dividing by the rounded epsilons.
constexpr double kPow10[] = {1.0, 1e1, 1e2, 1e3, 1e4, 1e5, 1e6, 1e7, 1e8, 1e9};

json config_echo(const RunConfig& cfg) {
  return json{{"command", cfg.command},
              {"graph", cfg.graph.string()},
              {"horizon", cfg.horizon},
              {"budget", cfg.budget},
              {"seed", cfg.seed},
              {"trials", cfg.trials},
              {"out", cfg.out.string()},
              {"format", cfg.format},
              {"auto_loop", cfg.auto_loop},
              {"threads", cfg.threads},
              {"deterministic", cfg.deterministic},
              {"sample_count", cfg.sample_count},
              {"opponent", cfg.opponent},
              {"x", cfg.x_file.string()},
              {"y", cfg.y_file.string()},
              {"epsilon", cfg.epsilon},
              {"density_out", cfg.density_out.string()},
              {"bins", cfg.bins}};
}

json envelope(const RunConfig& cfg) {
  return json{{"version", kVersion},
              {"command", cfg.command},
              {"seed", cfg.seed},
              {"config", config_echo(cfg)}};
}

struct Checks {
  json list = json::array();
  bool ok = true;

  void add(const std::string& name, bool pass, json observed = nullptr) {
    json item{{"name", name}, {"pass", pass}};
    if (!observed.is_null()) item["observed"] = std::move(observed);
    list.push_back(std::move(item));
    ok = ok && pass;
  }
};

CommandResult seal(const RunConfig& cfg, json payload, Checks checks) {
  json report = envelope(cfg);
  report.update(payload);
  report["checks"] = std::move(checks.list);
  report["ok"] = checks.ok;
  return CommandResult{std::move(report), checks.ok};
}

SocialGraph load_graph(const RunConfig& cfg) {
  if (cfg.graph.empty()) throw ContractError("--graph is required");
  return load_edge_list_file(cfg.graph, cfg.auto_loop);
}

std::vector<double> supports(const ValuationProfile& p, double budget) {
  std::vector<double> s;
  s.reserve(p.size());
  for (double a : p.values) s.push_back(2.0 * a * budget);
  return s;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Allocation single_allocation_from(const std::filesystem::path& path,
                                  std::size_t expected_n) {
  auto rows = parse_allocation_rows(read_file(path));
  if (rows.size() != 1) {
    throw ContractError(path.string() + ": expected a single allocation row, got " +
                        std::to_string(rows.size()));
  }
  if (rows[0].size() != expected_n) {
    throw ContractError(path.string() + ": allocation width " +
                        std::to_string(rows[0].size()) + " does not match n = " +
                        std::to_string(expected_n));
  }
  Allocation a;
  a.amounts = std::move(rows[0]);
  a.budget = a.sum();
  return a;
}

Allocation random_simplex_point(rng::Key key, std::uint64_t index,
                                std::size_t n, double budget) {
  Allocation a;
  a.budget = budget;
  a.amounts.resize(n);
  double sum = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    // exponential spacings give a uniform Dirichlet point
    const double u = rng::unit(key, index, j);
    a.amounts[j] = -std::log1p(-u);
    sum += a.amounts[j];
  }
  for (double& v : a.amounts) v = budget * (v / sum);
  return a;
}

struct NamedOpponent {
  std::string name;
  Allocation allocation;
};

std::vector<NamedOpponent> build_opponents(const RunConfig& cfg,
                                           const ValuationProfile& profile,
                                           bool* beat_pure_included) {
  const std::size_t n = profile.size();
  const rng::Key key = rng::derive(cfg.seed, kOpponentTag);
  *beat_pure_included = false;

  auto base = [&] {
    std::vector<NamedOpponent> ops;
    for (std::size_t i = 0; i < n; ++i) {
      ops.push_back({"vertex:" + std::to_string(i),
                     simplex_vertex(n, i, cfg.budget)});
    }
    ops.push_back({"uniform", uniform_split(n, cfg.budget)});
    for (std::size_t i = 0; i < kRandomOpponents; ++i) {
      ops.push_back({"random:" + std::to_string(i),
                     random_simplex_point(key, i, n, cfg.budget)});
    }
    return ops;
  };
  auto with_beaten = [&](std::vector<NamedOpponent> ops) {
    if (!profile.classification.general()) return ops;
    *beat_pure_included = true;
    const std::size_t count = ops.size();
    for (std::size_t i = 0; i < count; ++i) {
      ops.push_back({"beat_pure(" + ops[i].name + ")",
                     beat_pure(ops[i].allocation, profile)});
    }
    return ops;
  };

  if (cfg.opponent == "uniform") {
    return {{"uniform", uniform_split(n, cfg.budget)}};
  }
  if (cfg.opponent == "vertices") {
    std::vector<NamedOpponent> ops;
    for (std::size_t i = 0; i < n; ++i) {
      ops.push_back({"vertex:" + std::to_string(i),
                     simplex_vertex(n, i, cfg.budget)});
    }
    return ops;
  }
  if (cfg.opponent == "random") {
    std::vector<NamedOpponent> ops;
    for (std::size_t i = 0; i < kRandomOpponents; ++i) {
      ops.push_back({"random:" + std::to_string(i),
                     random_simplex_point(key, i, n, cfg.budget)});
    }
    return ops;
  }
  if (cfg.opponent == "beat-pure") {
    if (!profile.classification.general()) {
      throw ContractError("beat-pure opponents need a general profile");
    }
    std::vector<NamedOpponent> ops;
    for (auto& op : base()) {
      ops.push_back({"beat_pure(" + op.name + ")",
                     beat_pure(op.allocation, profile)});
    }
    *beat_pure_included = true;
    return ops;
  }
  if (cfg.opponent == "corpus") {
    return with_beaten(base());
  }

  // anything else is an allocation file: one opponent per row
  auto rows = parse_allocation_rows(read_file(cfg.opponent));
  if (rows.empty()) throw ContractError(cfg.opponent + ": no allocation rows");
  std::vector<NamedOpponent> ops;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != n) {
      throw ContractError(cfg.opponent + ": row width does not match n");
    }
    Allocation a;
    a.amounts = rows[r];
    a.budget = a.sum();
    ops.push_back({"file:" + cfg.opponent + "[" + std::to_string(r) + "]",
                   std::move(a)});
  }
  return ops;
}

}  // namespace

CommandResult cmd_value(const RunConfig& cfg) {
  const SocialGraph g = load_graph(cfg);
  const ValuationProfile profile = values_for(g, Horizon::parse(cfg.horizon));

  json payload = profile.report_json();
  payload["supports"] = supports(profile, cfg.budget);
  payload["labels"] = g.labels();

  double sum = 0.0;
  for (double v : profile.values) sum += v;
  Checks checks;
  checks.add("values_sum_to_one", std::abs(sum - 1.0) <= 1e-9, sum);
  return seal(cfg, std::move(payload), std::move(checks));
}

CommandResult cmd_sample(const RunConfig& cfg) {
  if (cfg.out.empty()) {
    throw ContractError("sample needs --out for the allocation dump");
  }
  const SocialGraph g = load_graph(cfg);
  const ValuationProfile profile = values_for(g, Horizon::parse(cfg.horizon));
  const EquilibriumSampler sampler =
      EquilibriumSampler::make(profile, cfg.budget, cfg.seed);

  const std::size_t n = profile.size();
  double max_sum_err = 0.0;
  std::vector<double> x(n);

  if (cfg.format == "csv") {
    std::string text;
    text += "# blotto sample dump\n";
    {
      std::ostringstream head;
      head << "# construction=" << to_string(sampler.construction())
           << " seed=" << cfg.seed << " budget=" << cfg.budget << " n=" << n
           << "\n";
      text += head.str();
    }
    std::string header;
    for (std::size_t j = 0; j < n; ++j) {
      header += (j ? ",x" : "x") + std::to_string(j);
    }
    text += header + "\n";
    for (std::uint64_t i = 0; i < cfg.sample_count; ++i) {
      sampler.draw_into(i, x);
      double s = 0.0;
      for (double v : x) s += v;
      max_sum_err = std::max(max_sum_err, std::abs(s - cfg.budget));
      text += format_csv_row(x) + "\n";
    }
    write_file(cfg.out, text);
  } else {
    json samples = json::array();
    for (std::uint64_t i = 0; i < cfg.sample_count; ++i) {
      sampler.draw_into(i, x);
      double s = 0.0;
      for (double v : x) s += v;
      max_sum_err = std::max(max_sum_err, std::abs(s - cfg.budget));
      samples.push_back(x);
    }
    json dump{{"sampler", sampler.spec_json()}, {"samples", std::move(samples)}};
    write_file(cfg.out, dump.dump(2) + "\n");
  }

  json payload{{"sampler", sampler.spec_json()},
               {"samples_path", cfg.out.string()},
               {"count", cfg.sample_count},
               {"max_sum_error", max_sum_err}};
  Checks checks;
  const double tol =
      (sampler.exact() ? 1e-12 : 1e-9) * cfg.budget;
  checks.add("draw_sums_match_budget", max_sum_err <= tol, max_sum_err);
  return seal(cfg, std::move(payload), std::move(checks));
}

CommandResult cmd_evaluate(const RunConfig& cfg) {
  const SocialGraph g = load_graph(cfg);
  const ValuationProfile profile = values_for(g, Horizon::parse(cfg.horizon));
  const EquilibriumSampler sampler =
      EquilibriumSampler::make(profile, cfg.budget, cfg.seed);

  bool beat_pure_included = false;
  const auto opponents = build_opponents(cfg, profile, &beat_pure_included);

  Checks checks;
  json rows = json::array();
  double min_mean = std::numeric_limits<double>::infinity();
  std::string worst;
  for (const auto& op : opponents) {
    const PayoffEstimate est =
        payoff_vs_pure(sampler, op.allocation, cfg.trials, cfg.threads);
    const double floor =
        sampler.exact() ? -3.0 * est.std_error : -0.02;
    const bool pass = est.mean >= floor;
    rows.push_back({{"opponent", op.name},
                    {"mean", est.mean},
                    {"std_error", est.std_error},
                    {"trials", est.trials},
                    {"floor", floor},
                    {"pass", pass}});
    checks.ok = checks.ok && pass;
    if (est.mean < min_mean) {
      min_mean = est.mean;
      worst = op.name;
    }
  }
  checks.add("payoff_floor", checks.ok, min_mean);

  json payload{{"sampler", sampler.spec_json()},
               {"construction", to_string(sampler.construction())},
               {"opponents", std::move(rows)},
               {"beat_pure_included", beat_pure_included},
               {"min_mean", min_mean},
               {"worst_opponent", worst}};
  return seal(cfg, std::move(payload), std::move(checks));
}

CommandResult cmd_simulate(const RunConfig& cfg) {
  const SocialGraph g = load_graph(cfg);
  const Horizon h = Horizon::parse(cfg.horizon);
  if (h.kind == HorizonKind::longterm) {
    throw ContractError("simulate needs a finite horizon (intrinsic or tau:<k>)");
  }
  const std::uint64_t tau = h.kind == HorizonKind::finite ? h.tau : 0;

  // unequal totals are allowed here: the dynamics only see per-node signs
  const Allocation x = single_allocation_from(cfg.x_file, g.node_count());
  const Allocation y = single_allocation_from(cfg.y_file, g.node_count());

  const double exact = expected_score_exact(g, x, y, tau);
  SimulationConfig sim{tau, cfg.trials, cfg.seed, cfg.threads};
  const ScoreEstimate mc = expected_score_mc(g, x, y, sim);

  double z = 0.0;
  bool consistent;
  if (mc.std_error > 0.0) {
    z = (mc.mean - exact) / mc.std_error;
    consistent = std::abs(z) <= 3.5;
  } else {
    // deterministic outcome; the matrix value still carries rounding from
    // the iterated vector products
    consistent = std::abs(mc.mean - exact) <= 1e-6;
  }

  json payload{{"tau", tau},
               {"trials", mc.trials},
               {"mean", mc.mean},
               {"std_error", mc.std_error},
               {"exact_value", exact},
               {"z_score", z}};
  Checks checks;
  checks.add("mc_matches_exact", consistent, z);
  return seal(cfg, std::move(payload), std::move(checks));
}

CommandResult cmd_distance(const RunConfig& cfg) {
  const SocialGraph g = load_graph(cfg);
  const TVReport rep = average_tv(g);

  json payload = rep.to_json();

  bool in_range = true;
  for (const NodeTV& nv : rep.per_node) {
    in_range = in_range && nv.delta >= 0.0 && nv.delta <= 1.0;
  }

  // one density per distinct degree; the trapezoid only depends on (n, d, |E|)
  std::map<std::size_t, TrapezoidDensity> densities;
  for (const NodeTV& nv : rep.per_node) {
    densities.emplace(nv.degree,
                      difference_density(g.node_count(), nv.degree,
                                         g.edge_count()));
  }
  double worst_integral_err = 0.0;
  json density_meta = json::array();
  for (const auto& [deg, den] : densities) {
    const double integral =
        den.flat_height * (0.5 * (den.z1 - den.z0) + (den.z2 - den.z1) +
                           0.5 * (den.z3 - den.z2));
    worst_integral_err = std::max(worst_integral_err, std::abs(integral - 1.0));
    json meta{{"degree", deg},
              {"mean", den.mean},
              {"variance", den.variance},
              {"case", den.case_tag()},
              {"support", {den.z0, den.z3}}};
    if (!cfg.density_out.empty()) {
      const std::filesystem::path path =
          cfg.density_out.string() + "_deg" + std::to_string(deg) + ".csv";
      write_file(path, density_csv(den));
      meta["file"] = path.string();
    }
    density_meta.push_back(std::move(meta));
  }
  payload["densities"] = std::move(density_meta);

  Checks checks;
  checks.add("deltas_in_range", in_range);
  checks.add("density_integrates_to_one", worst_integral_err <= 1e-9,
             worst_integral_err);
  return seal(cfg, std::move(payload), std::move(checks));
}

CommandResult cmd_poc(const RunConfig& cfg) {
  if (!(cfg.budget > 0.0)) throw ContractError("budget must be positive");
  if (!(cfg.epsilon > 0.0)) throw ContractError("epsilon must be positive");

  const double ratio = cfg.budget / cfg.epsilon;
  json schedule = json::array();
  bool monotone = true;
  double prev = 0.0;
  for (std::size_t k = 0; k < std::size(kPow10); ++k) {
    const double r = cfg.budget * kPow10[k];
    schedule.push_back({{"epsilon", 1.0 / kPow10[k]}, {"ratio", r}});
    if (k > 0) monotone = monotone && r > prev;
    prev = r;
  }

  json payload{{"budget", cfg.budget},
               {"epsilon", cfg.epsilon},
               {"cooperative_cost", cfg.epsilon},
               {"competitive_cost_per_campaign", cfg.budget},
               {"ratio", ratio},
               {"schedule", std::move(schedule)}};
  Checks checks;
  checks.add("ratio_is_budget_over_epsilon",
             ratio == cfg.budget / cfg.epsilon, ratio);
  checks.add("schedule_unbounded_growth", monotone);
  return seal(cfg, std::move(payload), std::move(checks));
}

CommandResult cmd_summary(const RunConfig& cfg) {
  const SocialGraph g = load_graph(cfg);
  json payload{{"graph", g.summary_json()}};
  Checks checks;
  checks.add("degrees_sum_to_twice_edges", [&] {
    std::size_t total = 0;
    for (std::size_t v = 0; v < g.node_count(); ++v) {
      total += g.degree(static_cast<NodeId>(v));
    }
    return total == 2 * g.edge_count();
  }());
  return seal(cfg, std::move(payload), std::move(checks));
}

CommandResult run(const RunConfig& cfg) {
  if (cfg.command == "value") return cmd_value(cfg);
  if (cfg.command == "sample") return cmd_sample(cfg);
  if (cfg.command == "evaluate") return cmd_evaluate(cfg);
  if (cfg.command == "simulate") return cmd_simulate(cfg);
  if (cfg.command == "distance") return cmd_distance(cfg);
  if (cfg.command == "poc") return cmd_poc(cfg);
  if (cfg.command == "summary") return cmd_summary(cfg);
  throw ContractError("unknown command '" + cfg.command + "'");
}

}  // namespace blotto::cli
