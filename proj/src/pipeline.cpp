#include "socatt/pipeline.hpp"

#include <stdexcept>

#include <fmt/format.h>

#include "socatt/rng.hpp"

namespace socatt {

std::vector<std::string> RunConfig::violations() const {
  std::vector<std::string> bad;
  if (bases < 1) bad.emplace_back("bases: must be >= 1");
  if (filters < 1) bad.emplace_back("filters: must be >= 1");
  if (author_dim < 1) bad.emplace_back("author-dim: must be >= 1");
  if (line.dimension < 1) bad.emplace_back("line-dim: must be >= 1");
  if (line.negative_samples < 1) bad.emplace_back("line-negatives: must be >= 1");
  if (!(line.learning_rate > 0)) bad.emplace_back("line-lr: must be positive");
  if (line.epochs < 1) bad.emplace_back("line-epochs: must be >= 1");
  if (!(pretrain.sigma > 0)) bad.emplace_back("sigma: must be positive");
  if (train.max_epochs < 1) bad.emplace_back("epochs: must be >= 1");
  if (!(train.adam.learning_rate > 0)) bad.emplace_back("lr: must be positive");
  if (!(train.adam.beta1 > 0 && train.adam.beta1 < 1)) bad.emplace_back("beta1: must be in (0,1)");
  if (!(train.adam.beta2 > 0 && train.adam.beta2 < 1)) bad.emplace_back("beta2: must be in (0,1)");
  if (!(train.adam.epsilon > 0)) bad.emplace_back("adam-epsilon: must be positive");
  if (train.batch_size < 1) bad.emplace_back("batch-size: must be >= 1");
  return bad;
}

void RunConfig::validate() const {
  auto bad = violations();
  if (!bad.empty()) throw std::invalid_argument(fmt::format("{}", fmt::join(bad, "; ")));
}

nlohmann::json to_json(const RunConfig& cfg) {
  return {{"mode", to_string(cfg.mode)},
          {"bases", cfg.bases},
          {"filters", cfg.filters},
          {"author_dim", cfg.author_dim},
          {"pretrain_epochs", cfg.pretrain.epochs},
          {"sigma", cfg.pretrain.sigma},
          {"epochs", cfg.train.max_epochs},
          {"lr", cfg.train.adam.learning_rate},
          {"beta1", cfg.train.adam.beta1},
          {"beta2", cfg.train.adam.beta2},
          {"adam_epsilon", cfg.train.adam.epsilon},
          {"batch_size", cfg.train.batch_size},
          {"seed", cfg.seed}};
}

std::shared_ptr<const NodeEmbeddingTable> run_author_table(
    const RunConfig& cfg, std::shared_ptr<const NodeEmbeddingTable> line_table,
    const std::vector<std::string>& authors) {
  switch (cfg.mode) {
    case Mode::social:
    case Mode::concat:
      if (!line_table)
        throw std::invalid_argument(
            fmt::format("mode '{}' needs author embeddings", to_string(cfg.mode)));
      return line_table;
    case Mode::random: {
      Rng rng = make_rng(cfg.seed, "random-attention");
      return std::make_shared<NodeEmbeddingTable>(
          random_attention_embeddings(authors, cfg.author_dim, rng));
    }
    default: return nullptr;
  }
}

TrainResult run_training(const RunConfig& cfg, const LabeledCorpus& train,
                         const LabeledCorpus& dev,
                         std::shared_ptr<const WordEmbeddingTable> words,
                         std::shared_ptr<const NodeEmbeddingTable> authors) {
  cfg.validate();
  ModelSpec spec;
  spec.mode = cfg.mode;
  spec.bases = cfg.bases;
  spec.filters = cfg.filters;
  Rng init = make_rng(cfg.seed, "model-init");
  auto model = make_model(spec, std::move(words), std::move(authors), init);

  TrainConfig tcfg = cfg.train;
  tcfg.seed = cfg.seed;
  if ((cfg.mode == Mode::social || cfg.mode == Mode::random) && cfg.pretrain.epochs > 0) {
    PretrainConfig pcfg = cfg.pretrain;
    pcfg.seed = cfg.seed;
    pretrain(model, train, pcfg, tcfg);
  }
  return joint_train(std::move(model), train, dev, tcfg);
}

}  // namespace socatt
