#pragma once

#include <memory>
#include <random>

#include "socatt/model.hpp"
#include "test_util.hpp"

namespace testutil {

/// Small model over words w0..w{vocab-1} and authors a0..a{authors-1}, all
/// parameters drawn N(0, scale) so that every gradient path is exercised.
inline socatt::SocialAttentionModel small_model(socatt::Mode mode, std::size_t k, std::mt19937_64& rng,
                                                std::size_t filters = 4, std::size_t word_dim = 5,
                                                std::size_t author_dim = 6, double scale = 0.5,
                                                std::size_t vocab = 12, std::size_t authors = 6) {
  auto words = std::make_shared<socatt::WordEmbeddingTable>(random_words(vocab, word_dim, rng));
  auto table = std::make_shared<socatt::NodeEmbeddingTable>(author_dim);
  std::normal_distribution<double> normal(0, 1);
  std::vector<double> v(author_dim);
  for (std::size_t a = 0; a < authors; ++a) {
    for (double& x : v) x = normal(rng);
    table->set("a" + std::to_string(a), v);
  }
  socatt::ModelSpec spec;
  spec.mode = mode;
  spec.bases = k;
  spec.filters = filters;
  auto model = socatt::make_model(spec, words, table, rng);
  std::normal_distribution<double> param(0, scale);
  for (auto t : model.params.tensors())
    for (double& x : t) x = param(rng);
  return model;
}

inline socatt::Document random_doc(std::mt19937_64& rng, std::size_t vocab = 12, std::size_t authors = 6,
                                   std::size_t len = 4) {
  std::uniform_int_distribution<std::size_t> w(0, vocab - 1), a(0, authors - 1);
  std::uniform_int_distribution<int> l(0, 2);
  socatt::Document d;
  d.id = "d";
  d.author = "a" + std::to_string(a(rng));
  d.label = socatt::kAllLabels[static_cast<std::size_t>(l(rng))];
  for (std::size_t i = 0; i < len; ++i) d.tokens.push_back("w" + std::to_string(w(rng)));
  return d;
}

}  // namespace testutil
