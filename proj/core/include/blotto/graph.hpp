#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace blotto {

using NodeId = std::uint32_t;

struct DegreeProfile {
  std::vector<std::size_t> degree;  // self-loop contributes 2
  std::size_t edge_count = 0;       // self-loop counts as one edge
};

// Undirected social graph with self-loops. Node ids are dense 0..n-1; the
// labels of a loaded edge list are preserved for reporting.
//
// Two degree conventions coexist on purpose. neighbors(v) lists v once when a
// self-loop is present (the random-walk convention used by the transition
// matrix), while degree(v) counts a self-loop twice so that the degrees sum to
// 2|E| (the convention the closed-form degree-share formulas assume).
class SocialGraph {
 public:
  SocialGraph(std::size_t node_count,
              std::span<const std::pair<NodeId, NodeId>> edges,
              bool auto_loop = true,
              std::vector<std::string> labels = {});

  std::size_t node_count() const { return neighbors_.size(); }
  std::size_t edge_count() const { return edge_count_; }

  const std::vector<NodeId>& neighbors(NodeId v) const { return neighbors_[v]; }
  bool has_self_loop(NodeId v) const;
  std::size_t degree(NodeId v) const;
  DegreeProfile degree_profile() const;

  const std::vector<std::string>& labels() const { return labels_; }

  // {n, edge_count, degree_histogram, labels}
  nlohmann::json summary_json() const;

 private:
  std::vector<std::vector<NodeId>> neighbors_;  // sorted; contains v iff self-loop
  std::size_t edge_count_ = 0;
  std::vector<std::string> labels_;
};

// Parses "u v" lines; '#' starts a comment, blank lines are skipped. Labels
// are arbitrary strings, relabelled densely in order of first appearance.
// With auto_loop every node lacking a self-loop gets one.
SocialGraph load_edge_list(const std::string& text, bool auto_loop = true);
SocialGraph load_edge_list_file(const std::filesystem::path& path,
                                bool auto_loop = true);

}  // namespace blotto
