#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "socatt/corpus.hpp"
#include "socatt/embeddings.hpp"
#include "socatt/model.hpp"
#include "socatt/rng.hpp"
#include "socatt/tensor.hpp"

namespace socatt {

struct AdamConfig {
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

/// First and second moments for every tensor, plus the step counter.
struct AdamState {
  std::vector<std::vector<double>> first;
  std::vector<std::vector<double>> second;
  std::size_t step = 0;

  static AdamState zeros_like(const TensorList& params);
};

/// One bias-corrected Adam update of `params` in place.
void adam_step(const TensorList& params, const TensorList& grads, AdamState& state,
               const AdamConfig& cfg);

struct TrainConfig {
  std::size_t max_epochs = 15;
  AdamConfig adam;
  std::size_t batch_size = 32;
  std::uint64_t seed = 0;

  void validate() const;
};

struct PretrainConfig {
  double sigma = 1.0;
  std::size_t epochs = 1;
  std::uint64_t seed = 0;

  void validate() const;
};

/// α_{a,k} for every (author, basis) pair; unknown authors get 0.5.
class InstanceWeights {
 public:
  explicit InstanceWeights(std::size_t bases = 0) : bases_(bases) {}

  std::size_t num_bases() const { return bases_; }
  void set(std::string_view author, std::vector<double> per_basis);
  double operator()(std::string_view author, std::size_t k) const;
  const std::map<std::string, std::vector<double>, std::less<>>& values() const { return values_; }

  /// Every author gets `alpha` for every basis; unknown authors too.
  static InstanceWeights constant(std::size_t bases, double alpha);

 private:
  std::size_t bases_;
  std::map<std::string, std::vector<double>, std::less<>> values_;
  double fallback_ = 0.5;
};

struct InstanceWeighting {
  InstanceWeights weights;
  Matrix gammas;  // K × D^(v), row k is γ_k
};

/// γ_k ~ N(0, σ²I) once per basis; α_{a,k} = sigmoid(γ_k·v_a).
InstanceWeighting instance_weights(const NodeEmbeddingTable& authors, std::size_t bases,
                                   double sigma, Rng& rng);

/// −log p(y* | x, a) under the model's active mode.
double instance_loss(const Document& doc, const SocialAttentionModel& model);

/// Adds `scale` × ∇ instance_loss into `grads` and returns the loss. Frozen
/// embeddings get no gradient; an unknown author's uniform gate gets none
/// either.
double accumulate_gradient(const Document& doc, const SocialAttentionModel& model,
                           ModelParams& grads, double scale = 1.0);

/// α × (−log p_k(y* | x)) for basis k alone.
double weighted_basis_loss(const Document& doc, const BasisParams& basis,
                           const SocialAttentionModel& model, double alpha);

/// Adds `scale` × ∇ weighted_basis_loss into `grads` and returns the loss.
double accumulate_weighted_basis_gradient(const Document& doc, const BasisParams& basis,
                                          const SocialAttentionModel& model, double alpha,
                                          BasisParams& grads, double scale = 1.0);

/// Runs `pcfg.epochs` epochs of Adam on basis k's instance-weighted loss.
/// Other bases and the gate are untouched.
void pretrain_basis(std::size_t k, const LabeledCorpus& corpus, const InstanceWeights& weights,
                    SocialAttentionModel& model, const PretrainConfig& pcfg,
                    const TrainConfig& tcfg);

/// Draws γ from the author table, pretrains every basis and initializes the
/// attention gate at φ_k = γ_k, b_k = 0. Only for social and random modes.
InstanceWeighting pretrain(SocialAttentionModel& model, const LabeledCorpus& corpus,
                           const PretrainConfig& pcfg, const TrainConfig& tcfg);

struct EpochRecord {
  std::size_t epoch;  // 1-based
  double train_loss;  // mean per-instance loss over the epoch
  double dev_f1;
};

struct TrainResult {
  SocialAttentionModel model;  // parameters of the best dev epoch
  std::vector<EpochRecord> history;
  std::size_t best_epoch = 0;
};

/// Mini-batch Adam on the mixture loss, evaluating dev average F1 after every
/// epoch and keeping the earliest best epoch's parameters. With an empty dev
/// corpus the last epoch wins.
TrainResult joint_train(SocialAttentionModel model, const LabeledCorpus& train,
                        const LabeledCorpus& dev, const TrainConfig& cfg);

/// Mean instance_loss over the corpus.
double corpus_loss(const LabeledCorpus& corpus, const SocialAttentionModel& model);

/// Predicted labels in corpus order.
std::vector<Label> predict_all(const LabeledCorpus& corpus, const SocialAttentionModel& model);

/// Tab-separated epoch, train_loss, dev_f1 with a header line.
void write_history(const std::vector<EpochRecord>& history, std::ostream& out);

}  // namespace socatt
