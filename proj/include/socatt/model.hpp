#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "socatt/basis_cnn.hpp"
#include "socatt/corpus.hpp"
#include "socatt/embeddings.hpp"
#include "socatt/rng.hpp"
#include "socatt/tensor.hpp"

namespace socatt {

/// Gating path of the mixture:
///   social  softmax over φ_k·v_a + b_k with network embeddings v_a
///   random  same, with frozen random author vectors
///   moe     softmax over a linear map of the summed word vectors
///   concat  one CNN whose softmax head sees [s ; v_a]
///   single  one plain CNN
enum class Mode { social, random, moe, concat, single };

std::string_view to_string(Mode mode);
std::optional<Mode> parse_mode(std::string_view text);
bool uses_author_table(Mode mode);

/// Linear-softmax gate: K scores = weight · input + bias.
struct GateParams {
  Matrix weight;  // K × input dim
  Vector bias;    // K

  friend bool operator==(const GateParams&, const GateParams&) = default;
};

/// Every trainable tensor of a model. Also used as the gradient container.
struct ModelParams {
  std::vector<BasisParams> bases;
  GateParams gate;     // social/random: K × D^(v); moe: K × D^(w); otherwise empty
  Matrix author_head;  // concat: T × D^(v); otherwise empty

  TensorList tensors();
  void set_zero();
  ModelParams zeros_like() const;

  friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

struct ModelSpec {
  Mode mode = Mode::social;
  std::size_t bases = 5;  // K; forced to 1 for concat and single
  std::size_t filters = 100;
  std::vector<Label> classes = {Label::positive, Label::negative, Label::neutral};
};

/// K basis CNNs plus the gate for `mode`. Word and author tables are frozen
/// and shared.
struct SocialAttentionModel {
  Mode mode = Mode::social;
  std::vector<Label> classes;
  ModelParams params;
  std::shared_ptr<const WordEmbeddingTable> words;
  std::shared_ptr<const NodeEmbeddingTable> authors;

  std::size_t num_bases() const { return params.bases.size(); }
  std::size_t num_classes() const { return classes.size(); }
  BasisShape basis_shape() const { return params.bases.front().shape(); }
  /// Throws std::invalid_argument if `label` is not in the class list.
  std::size_t class_index(Label label) const;
};

/// Bases are drawn from independent streams of `rng`; the attention gate
/// starts at zero (uniform) and the mixture-of-experts gate uniform in
/// (−0.05, 0.05).
SocialAttentionModel make_model(const ModelSpec& spec,
                                std::shared_ptr<const WordEmbeddingTable> words,
                                std::shared_ptr<const NodeEmbeddingTable> authors, Rng& rng);

/// Pr(Z_a = k | a, G). Authors without an embedding get 1/K.
Vector attention_weights(std::string_view author, const SocialAttentionModel& model);

/// Gate over the sum of the document's in-vocabulary word vectors.
Vector moe_gate(const Document& doc, const SocialAttentionModel& model);

/// Sum of in-vocabulary word vectors (zero when all tokens are unknown).
Vector summed_word_vectors(std::span<const std::string> tokens, const WordEmbeddingTable& words);

/// U(−0.25, 0.25) vectors, one per author, drawn in the given order.
NodeEmbeddingTable random_attention_embeddings(const std::vector<std::string>& authors,
                                               std::size_t dimension, Rng& rng);

/// Everything the backward pass needs from one prediction.
struct MixtureForward {
  std::vector<BasisCache> bases;
  Vector gate;        // K mixing weights (1 for single/concat)
  Vector gate_input;  // v_a, the summed word vectors, or empty
  bool gate_trainable = false;
  Vector probs;       // p(y | x, a)
};

MixtureForward mixture_forward(const Document& doc, std::string_view author,
                               const SocialAttentionModel& model);

/// p(y | x, a) = Σ_k Pr(Z_a = k | a, G) p(y | x, Z_a = k), or the single or
/// concatenation classifier for those modes.
Vector mixture_predict(const Document& doc, std::string_view author,
                       const SocialAttentionModel& model);
inline Vector mixture_predict(const Document& doc, const SocialAttentionModel& model) {
  return mixture_predict(doc, doc.author, model);
}

/// Argmax class; ties go to the earliest class in the model's list.
Label predict_label(const Document& doc, std::string_view author,
                    const SocialAttentionModel& model);
inline Label predict_label(const Document& doc, const SocialAttentionModel& model) {
  return predict_label(doc, doc.author, model);
}

/// Softmax over head·s + author_head·v_a + β_0 (v_a = 0 for unknown authors).
Vector concat_forward(const Document& doc, std::string_view author,
                      const SocialAttentionModel& model);

}  // namespace socatt
