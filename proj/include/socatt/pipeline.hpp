#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "socatt/corpus.hpp"
#include "socatt/embeddings.hpp"
#include "socatt/line.hpp"
#include "socatt/model.hpp"
#include "socatt/training.hpp"

namespace socatt {

/// Everything a training run depends on besides its input files.
struct RunConfig {
  Mode mode = Mode::social;
  std::size_t bases = 5;
  std::size_t filters = 100;
  std::size_t author_dim = 100;  // D^(v); also used for random attention vectors
  LineConfig line;
  PretrainConfig pretrain;
  TrainConfig train;
  std::uint64_t seed = 0;

  /// Every violated field, one message each. Empty when valid.
  std::vector<std::string> violations() const;
  /// Throws std::invalid_argument listing all violations.
  void validate() const;
};

nlohmann::json to_json(const RunConfig& cfg);

/// Author table a run needs: the given LINE table for social and concat,
/// fresh U(−0.25, 0.25) vectors over `authors` for random, none otherwise.
std::shared_ptr<const NodeEmbeddingTable> run_author_table(
    const RunConfig& cfg, std::shared_ptr<const NodeEmbeddingTable> line_table,
    const std::vector<std::string>& authors);

/// Builds the model, pretrains it (social and random modes with at least one
/// pretraining epoch) and trains it
/// jointly with early stopping on `dev`. Component streams all derive from
/// `cfg.seed`.
TrainResult run_training(const RunConfig& cfg, const LabeledCorpus& train,
                         const LabeledCorpus& dev,
                         std::shared_ptr<const WordEmbeddingTable> words,
                         std::shared_ptr<const NodeEmbeddingTable> authors);

}  // namespace socatt
