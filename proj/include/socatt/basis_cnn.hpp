#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "socatt/corpus.hpp"
#include "socatt/embeddings.hpp"
#include "socatt/rng.hpp"
#include "socatt/tensor.hpp"

namespace socatt {

struct BasisShape {
  std::size_t filters = 100;  // m
  std::size_t word_dim = 1;   // D^(w)
  std::size_t classes = 3;    // T
  friend bool operator==(const BasisShape&, const BasisShape&) = default;
};

/// One bigram-convolution sentence classifier:
///   c_i = tanh(W_L h_i + W_R h_{i+1} + b),  s = max_i c_i,
///   p(t) = softmax_t(β_t·s + β_t0).
struct BasisParams {
  Matrix left;      // W_L, m × D^(w)
  Matrix right;     // W_R, m × D^(w)
  Vector bias;      // b, m
  Matrix head;      // β, T × m
  Vector head_bias; // β_0, T

  static BasisParams zeros(const BasisShape& shape);
  /// Weights uniform in (−0.05, 0.05), biases zero.
  static BasisParams random(const BasisShape& shape, Rng& rng);

  BasisShape shape() const;
  TensorList tensors();
  void set_zero();
  BasisParams& operator+=(const BasisParams& other);

  friend bool operator==(const BasisParams&, const BasisParams&) = default;
};

/// Token vectors h_1..h_n as rows; always at least two rows.
using SentenceInput = Matrix;

/// Out-of-vocabulary tokens are skipped; short inputs are padded with zero
/// rows to length 2.
SentenceInput embed_tokens(std::span<const std::string> tokens, const WordEmbeddingTable& words);
inline SentenceInput embed_tokens(const Document& doc, const WordEmbeddingTable& words) {
  return embed_tokens(doc.tokens, words);
}

/// (n−1) × m bigram feature map.
Matrix conv_forward(const SentenceInput& x, const BasisParams& p);

/// Column-wise max over rows; `argmax` (if given) receives the lowest row
/// index attaining each maximum.
Vector max_pool(const Matrix& features, std::vector<Eigen::Index>* argmax = nullptr);

Vector class_logits(const Vector& pooled, const BasisParams& p);
Vector class_probs(const Vector& pooled, const BasisParams& p);

struct BasisCache {
  SentenceInput input;
  Matrix features;
  std::vector<Eigen::Index> argmax;
  Vector pooled;
  Vector probs;
};

BasisCache basis_forward(const SentenceInput& x, const BasisParams& p);
inline BasisCache basis_forward(const Document& doc, const WordEmbeddingTable& words,
                                const BasisParams& p) {
  return basis_forward(embed_tokens(doc, words), p);
}

/// Back-propagates dL/dpooled through pooling, tanh and the bigram filters,
/// adding into `grads`. Word vectors receive no gradient.
void conv_backward(const BasisCache& cache, const BasisParams& p, const Vector& grad_pooled,
                   BasisParams& grads);

/// Back-propagates dL/dprobs through the softmax head and the convolution,
/// adding into `grads`.
void basis_backward(const BasisCache& cache, const BasisParams& p, const Vector& grad_probs,
                    BasisParams& grads);

/// dL/dlogits given dL/dprobs for a softmax output `probs`.
Vector softmax_backward(const Vector& probs, const Vector& grad_probs);

}  // namespace socatt
