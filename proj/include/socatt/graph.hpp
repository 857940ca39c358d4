#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "socatt/rng.hpp"

namespace socatt {

/// Undirected simple graph over named author nodes. Node ids are dense
/// indices in insertion order; edges are stored with `u < v`.
class SocialGraph {
 public:
  using NodeId = std::uint32_t;
  struct Edge {
    NodeId u, v;
    friend bool operator==(const Edge&, const Edge&) = default;
  };

  NodeId add_node(std::string_view name);
  /// Returns false if the edge already exists. Throws on a self-loop.
  bool add_edge(NodeId a, NodeId b);
  bool add_edge(std::string_view a, std::string_view b);

  bool has_edge(NodeId a, NodeId b) const;
  std::optional<NodeId> find(std::string_view name) const;
  const std::string& name(NodeId id) const { return names_[id]; }
  const std::vector<std::string>& names() const { return names_; }

  std::size_t node_count() const { return names_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  std::size_t degree(NodeId id) const { return degree_[id]; }

  /// Replaces edge slot `i` in place (degree bookkeeping included); the new
  /// edge must not already exist.
  void replace_edge(std::size_t i, NodeId a, NodeId b);

 private:
  static std::uint64_t key(NodeId a, NodeId b) {
    if (a > b) std::swap(a, b);
    return (std::uint64_t{a} << 32) | b;
  }

  std::vector<std::string> names_;
  std::unordered_map<std::string, NodeId> index_;
  std::vector<Edge> edges_;
  std::unordered_set<std::uint64_t> edge_keys_;
  std::vector<std::size_t> degree_;
};

/// Two whitespace-separated node names per line; '#' starts a comment line.
SocialGraph parse_edge_list(std::istream& in);
SocialGraph load_edge_list(const std::filesystem::path& path);
void write_edge_list(const SocialGraph& g, std::ostream& out);
void save_edge_list(const SocialGraph& g, const std::filesystem::path& path);

/// Node degrees sorted ascending.
std::vector<std::size_t> degree_sequence(const SocialGraph& g);

/// |E| double-edge-swap attempts. Each picks two distinct edges uniformly and
/// proposes (u,v),(x,y) -> (u,x),(v,y) with the second edge's orientation
/// chosen at random; proposals creating a self-loop or parallel edge are
/// discarded but still counted.
SocialGraph double_edge_swap_epoch(const SocialGraph& g, Rng& rng);

/// Fraction of g1's edges (matched by node name) that are also in g2.
double edge_overlap(const SocialGraph& g1, const SocialGraph& g2);

}  // namespace socatt
