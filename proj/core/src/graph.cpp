#include "blotto/graph.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "blotto/errors.hpp"

namespace blotto {

SocialGraph::SocialGraph(std::size_t node_count,
                         std::span<const std::pair<NodeId, NodeId>> edges,
                         bool auto_loop, std::vector<std::string> labels)
    : neighbors_(node_count), labels_(std::move(labels)) {
  if (node_count == 0) throw ContractError("graph needs at least one node");
  if (labels_.empty()) {
    labels_.reserve(node_count);
    for (std::size_t v = 0; v < node_count; ++v) {
      labels_.push_back(std::to_string(v));
    }
  } else if (labels_.size() != node_count) {
    throw ContractError("label count does not match node count");
  }

  for (auto [u, v] : edges) {
    if (u >= node_count || v >= node_count) {
      throw ContractError("edge endpoint out of range");
    }
    neighbors_[u].push_back(v);
    if (u != v) neighbors_[v].push_back(u);
  }
  if (auto_loop) {
    for (std::size_t v = 0; v < node_count; ++v) {
      neighbors_[v].push_back(static_cast<NodeId>(v));
    }
  }

  std::size_t loops = 0;
  std::size_t half_edges = 0;
  for (std::size_t v = 0; v < node_count; ++v) {
    auto& nb = neighbors_[v];
    std::sort(nb.begin(), nb.end());
    nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
    if (nb.empty()) {
      throw DegenerateGraphError("node '" + labels_[v] +
                                 "' has no neighbors; enable auto loops or "
                                 "connect it");
    }
    half_edges += nb.size();
    if (std::binary_search(nb.begin(), nb.end(), static_cast<NodeId>(v))) {
      ++loops;
    }
  }
  // sum |N(v)| counts a loop once and every other edge twice
  edge_count_ = (half_edges + loops) / 2;
}

bool SocialGraph::has_self_loop(NodeId v) const {
  const auto& nb = neighbors_[v];
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::size_t SocialGraph::degree(NodeId v) const {
  return neighbors_[v].size() + (has_self_loop(v) ? 1 : 0);
}

DegreeProfile SocialGraph::degree_profile() const {
  DegreeProfile p;
  p.degree.reserve(node_count());
  for (std::size_t v = 0; v < node_count(); ++v) {
    p.degree.push_back(degree(static_cast<NodeId>(v)));
  }
  p.edge_count = edge_count_;
  return p;
}

nlohmann::json SocialGraph::summary_json() const {
  std::map<std::size_t, std::size_t> histogram;
  for (std::size_t v = 0; v < node_count(); ++v) {
    ++histogram[degree(static_cast<NodeId>(v))];
  }
  nlohmann::json hist = nlohmann::json::object();
  for (const auto& [deg, count] : histogram) {
    hist[std::to_string(deg)] = count;
  }
  return nlohmann::json{{"n", node_count()},
                        {"edge_count", edge_count_},
                        {"degree_histogram", hist},
                        {"labels", labels_}};
}

SocialGraph load_edge_list(const std::string& text, bool auto_loop) {
  std::unordered_map<std::string, NodeId> ids;
  std::vector<std::string> labels;
  std::vector<std::pair<NodeId, NodeId>> edges;

  auto intern = [&](const std::string& label) {
    auto [it, inserted] =
        ids.try_emplace(label, static_cast<NodeId>(labels.size()));
    if (inserted) labels.push_back(label);
    return it->second;
  };

  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    std::istringstream tokens(line);
    std::string a, b, extra;
    if (!(tokens >> a)) continue;  // blank or comment-only
    if (!(tokens >> b) || (tokens >> extra)) {
      throw ParseError(lineno, "expected two node labels per edge");
    }
    const NodeId ua = intern(a);  // sequenced: ids follow first appearance
    const NodeId ub = intern(b);
    edges.emplace_back(ua, ub);
  }
  if (labels.empty()) {
    throw ParseError(lineno, "edge list contains no edges");
  }
  const std::size_t n = labels.size();
  return SocialGraph(n, edges, auto_loop, std::move(labels));
}

SocialGraph load_edge_list_file(const std::filesystem::path& path,
                                bool auto_loop) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open edge list: " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_edge_list(buf.str(), auto_loop);
}

}  // namespace blotto
