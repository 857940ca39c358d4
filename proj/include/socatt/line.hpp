#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "socatt/embeddings.hpp"
#include "socatt/graph.hpp"
#include "socatt/rng.hpp"

namespace socatt {

/// First-order LINE with negative sampling.
struct LineConfig {
  std::size_t dimension = 100;
  std::size_t negative_samples = 5;
  double learning_rate = 0.025;  // decays linearly to kLineFinalRate
  std::size_t epochs = 50;
  double noise_exponent = 0.75;

  void validate() const;
};

inline constexpr double kLineFinalRate = 1e-4;

/// p(n) proportional to degree(n)^exponent, indexed by node id.
std::vector<double> noise_distribution(const SocialGraph& g, double exponent);

/// log σ(v_i·v_j) + Σ_n log σ(−v_i·v_n): the per-edge objective.
double line_edge_objective(const Eigen::VectorXd& source, const Eigen::VectorXd& target,
                           const std::vector<Eigen::VectorXd>& negatives);

struct LineEdgeGradient {
  Eigen::VectorXd source;
  Eigen::VectorXd target;
  std::vector<Eigen::VectorXd> negatives;
};

LineEdgeGradient line_edge_gradient(const Eigen::VectorXd& source, const Eigen::VectorXd& target,
                                    const std::vector<Eigen::VectorXd>& negatives);

/// Stochastic gradient ascent on the first-order objective. Each epoch
/// samples |E| edges uniformly, orients each at random and draws
/// `negative_samples` noise nodes (redrawn when they hit either endpoint;
/// skipped after a bounded number of retries). Nodes without edges keep their
/// initialization.
NodeEmbeddingTable train_line_embeddings(const SocialGraph& g, const LineConfig& cfg, Rng& rng);

/// Mean per-edge objective over every edge with one fixed set of negatives
/// per edge drawn from `rng`.
double estimate_line_objective(const SocialGraph& g, const NodeEmbeddingTable& table,
                               std::size_t negative_samples, double noise_exponent, Rng& rng);

}  // namespace socatt
