#include "socatt/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>

#include "socatt/error.hpp"

namespace socatt {

SocialGraph::NodeId SocialGraph::add_node(std::string_view name) {
  auto [it, inserted] = index_.try_emplace(std::string(name), static_cast<NodeId>(names_.size()));
  if (inserted) {
    names_.emplace_back(name);
    degree_.push_back(0);
  }
  return it->second;
}

bool SocialGraph::add_edge(NodeId a, NodeId b) {
  if (a == b) throw std::invalid_argument(fmt::format("self-loop on '{}'", names_.at(a)));
  if (a >= names_.size() || b >= names_.size()) throw std::out_of_range("unknown node id");
  if (!edge_keys_.insert(key(a, b)).second) return false;
  edges_.push_back({std::min(a, b), std::max(a, b)});
  ++degree_[a];
  ++degree_[b];
  return true;
}

bool SocialGraph::add_edge(std::string_view a, std::string_view b) {
  if (a == b) throw std::invalid_argument(fmt::format("self-loop on '{}'", a));
  NodeId ia = add_node(a);
  NodeId ib = add_node(b);
  return add_edge(ia, ib);
}

bool SocialGraph::has_edge(NodeId a, NodeId b) const { return edge_keys_.contains(key(a, b)); }

std::optional<SocialGraph::NodeId> SocialGraph::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

void SocialGraph::replace_edge(std::size_t i, NodeId a, NodeId b) {
  Edge old = edges_.at(i);
  if (a == b) throw std::invalid_argument("self-loop");
  if (has_edge(a, b)) throw std::invalid_argument("parallel edge");
  edge_keys_.erase(key(old.u, old.v));
  --degree_[old.u];
  --degree_[old.v];
  edge_keys_.insert(key(a, b));
  edges_[i] = {std::min(a, b), std::max(a, b)};
  ++degree_[a];
  ++degree_[b];
}

SocialGraph parse_edge_list(std::istream& in) {
  SocialGraph g;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    std::vector<std::string> parts;
    for (std::string f; fields >> f;) parts.push_back(std::move(f));
    if (parts.size() != 2)
      throw FormatError(fmt::format("expected 2 node ids, found {}", parts.size()), line_no);
    if (parts[0] == parts[1])
      throw FormatError(fmt::format("self-loop on '{}'", parts[0]), line_no);
    g.add_edge(parts[0], parts[1]);
  }
  return g;
}

SocialGraph load_edge_list(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(fmt::format("cannot open '{}'", path.string()));
  return parse_edge_list(in);
}

void write_edge_list(const SocialGraph& g, std::ostream& out) {
  for (const auto& e : g.edges()) out << g.name(e.u) << ' ' << g.name(e.v) << '\n';
}

void save_edge_list(const SocialGraph& g, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error(fmt::format("cannot write '{}'", path.string()));
  write_edge_list(g, out);
}

std::vector<std::size_t> degree_sequence(const SocialGraph& g) {
  std::vector<std::size_t> degrees(g.node_count());
  for (SocialGraph::NodeId i = 0; i < g.node_count(); ++i) degrees[i] = g.degree(i);
  std::sort(degrees.begin(), degrees.end());
  return degrees;
}

SocialGraph double_edge_swap_epoch(const SocialGraph& g, Rng& rng) {
  const std::size_t m = g.edge_count();
  if (m < 2) throw std::invalid_argument("double edge swap needs at least 2 edges");
  SocialGraph out = g;
  std::uniform_int_distribution<std::size_t> pick(0, m - 1);
  std::bernoulli_distribution flip(0.5);
  for (std::size_t attempt = 0; attempt < m; ++attempt) {
    std::size_t i = pick(rng);
    std::size_t j = pick(rng);
    while (j == i) j = pick(rng);
    auto [u, v] = out.edges()[i];
    auto [x, y] = out.edges()[j];
    if (flip(rng)) std::swap(x, y);
    // (u,v),(x,y) -> (u,x),(v,y)
    if (u == x || v == y) continue;
    if (out.has_edge(u, x) || out.has_edge(v, y)) continue;
    out.replace_edge(i, u, x);
    out.replace_edge(j, v, y);
  }
  return out;
}

double edge_overlap(const SocialGraph& g1, const SocialGraph& g2) {
  if (g1.edge_count() == 0) throw std::invalid_argument("edge_overlap: first graph has no edges");
  std::size_t shared = 0;
  for (const auto& e : g1.edges()) {
    auto a = g2.find(g1.name(e.u));
    auto b = g2.find(g1.name(e.v));
    if (a && b && g2.has_edge(*a, *b)) ++shared;
  }
  return static_cast<double>(shared) / static_cast<double>(g1.edge_count());
}

}  // namespace socatt
