#include "socatt/line.hpp"

#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

#include "socatt/log.hpp"

namespace socatt {
namespace {

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

// log σ(x) without overflow for large |x|.
double log_sigmoid(double x) { return x >= 0 ? -std::log1p(std::exp(-x)) : x - std::log1p(std::exp(x)); }

// Draws a noise node distinct from both endpoints; nullopt if that keeps
// failing (e.g. the graph has two nodes).
std::optional<SocialGraph::NodeId> draw_negative(std::discrete_distribution<std::size_t>& noise,
                                                 Rng& rng, SocialGraph::NodeId a,
                                                 SocialGraph::NodeId b) {
  for (int tries = 0; tries < 16; ++tries) {
    auto n = static_cast<SocialGraph::NodeId>(noise(rng));
    if (n != a && n != b) return n;
  }
  return std::nullopt;
}

}  // namespace

void LineConfig::validate() const {
  if (dimension < 1) throw std::invalid_argument("LINE dimension must be >= 1");
  if (negative_samples < 1) throw std::invalid_argument("LINE negative samples must be >= 1");
  if (!(learning_rate > 0)) throw std::invalid_argument("LINE learning rate must be positive");
  if (epochs < 1) throw std::invalid_argument("LINE epochs must be >= 1");
}

std::vector<double> noise_distribution(const SocialGraph& g, double exponent) {
  if (g.edge_count() == 0) throw std::invalid_argument("noise distribution of an edgeless graph");
  std::vector<double> p(g.node_count());
  double total = 0;
  for (SocialGraph::NodeId i = 0; i < g.node_count(); ++i) {
    p[i] = std::pow(static_cast<double>(g.degree(i)), exponent);
    total += p[i];
  }
  for (double& x : p) x /= total;
  return p;
}

double line_edge_objective(const Eigen::VectorXd& source, const Eigen::VectorXd& target,
                           const std::vector<Eigen::VectorXd>& negatives) {
  double value = log_sigmoid(source.dot(target));
  for (const auto& n : negatives) value += log_sigmoid(-source.dot(n));
  return value;
}

LineEdgeGradient line_edge_gradient(const Eigen::VectorXd& source, const Eigen::VectorXd& target,
                                    const std::vector<Eigen::VectorXd>& negatives) {
  // d/dx log σ(x) = 1 − σ(x);  d/dx log σ(−x) = −σ(x)
  LineEdgeGradient grad;
  double g = 1.0 - sigmoid(source.dot(target));
  grad.source = g * target;
  grad.target = g * source;
  for (const auto& n : negatives) {
    double gn = -sigmoid(source.dot(n));
    grad.source += gn * n;
    grad.negatives.push_back(gn * source);
  }
  return grad;
}

NodeEmbeddingTable train_line_embeddings(const SocialGraph& g, const LineConfig& cfg, Rng& rng) {
  cfg.validate();
  if (g.edge_count() == 0) throw std::invalid_argument("LINE needs a graph with at least one edge");

  const auto dim = static_cast<Eigen::Index>(cfg.dimension);
  const double bound = 0.5 / static_cast<double>(cfg.dimension);
  Eigen::MatrixXd emb(dim, static_cast<Eigen::Index>(g.node_count()));  // column per node
  std::uniform_real_distribution<double> init(-bound, bound);
  for (Eigen::Index c = 0; c < emb.cols(); ++c)
    for (Eigen::Index r = 0; r < dim; ++r) emb(r, c) = init(rng);

  std::size_t isolated = 0;
  for (SocialGraph::NodeId i = 0; i < g.node_count(); ++i) isolated += g.degree(i) == 0;
  if (isolated)
    log_warning(fmt::format("{} isolated node(s) keep their random initialization", isolated));

  auto probs = noise_distribution(g, cfg.noise_exponent);
  std::discrete_distribution<std::size_t> noise(probs.begin(), probs.end());
  std::uniform_int_distribution<std::size_t> pick_edge(0, g.edge_count() - 1);
  std::bernoulli_distribution orient(0.5);

  const double total_steps = static_cast<double>(cfg.epochs * g.edge_count());
  std::size_t step = 0;
  Eigen::VectorXd source_grad(dim);
  for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
    for (std::size_t s = 0; s < g.edge_count(); ++s, ++step) {
      double lr = cfg.learning_rate -
                  (cfg.learning_rate - kLineFinalRate) * static_cast<double>(step) / total_steps;
      if (lr < kLineFinalRate) lr = kLineFinalRate;

      auto e = g.edges()[pick_edge(rng)];
      auto src = e.u, dst = e.v;
      if (orient(rng)) std::swap(src, dst);

      source_grad.setZero();
      auto update = [&](SocialGraph::NodeId target, double label) {
        double score = emb.col(src).dot(emb.col(target));
        double gcoef = lr * (label - 1.0 / (1.0 + std::exp(-score)));
        source_grad.noalias() += gcoef * emb.col(target);
        emb.col(target) += gcoef * emb.col(src);
      };
      update(dst, 1.0);
      for (std::size_t k = 0; k < cfg.negative_samples; ++k)
        if (auto n = draw_negative(noise, rng, src, dst)) update(*n, 0.0);
      emb.col(src) += source_grad;
    }
  }

  NodeEmbeddingTable table(cfg.dimension);
  for (SocialGraph::NodeId i = 0; i < g.node_count(); ++i)
    table.set(g.name(i), std::span<const double>(emb.col(i).data(), cfg.dimension));
  return table;
}

double estimate_line_objective(const SocialGraph& g, const NodeEmbeddingTable& table,
                               std::size_t negative_samples, double noise_exponent, Rng& rng) {
  if (g.edge_count() == 0) throw std::invalid_argument("LINE objective of an edgeless graph");
  auto probs = noise_distribution(g, noise_exponent);
  std::discrete_distribution<std::size_t> noise(probs.begin(), probs.end());
  auto vec = [&](SocialGraph::NodeId id) -> Eigen::VectorXd {
    auto row = table.find(g.name(id));
    if (!row) throw std::invalid_argument(fmt::format("no embedding for node '{}'", g.name(id)));
    return *row;
  };
  double total = 0;
  for (const auto& e : g.edges()) {
    std::vector<Eigen::VectorXd> negs;
    for (std::size_t k = 0; k < negative_samples; ++k)
      if (auto n = draw_negative(noise, rng, e.u, e.v)) negs.push_back(vec(*n));
    total += line_edge_objective(vec(e.u), vec(e.v), negs);
  }
  return total / static_cast<double>(g.edge_count());
}

}  // namespace socatt
