#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "socatt/corpus.hpp"
#include "socatt/embeddings.hpp"
#include "socatt/graph.hpp"
#include "socatt/rng.hpp"

namespace socatt {

/// Two planted communities whose members use a few "flip" words with
/// opposite polarity.
struct SynthConfig {
  std::size_t nodes_per_community = 100;
  double intra_edge_prob = 0.1;
  double inter_edge_prob = 0.005;
  /// Flip word i is positive in community 0 when i is even, negative when
  /// odd, and the reverse in community 1.
  std::vector<std::string> flip_words = {"sick", "wicked"};
  std::size_t docs_per_author = 5;
  std::size_t vocab_size = 60;       // neutral filler words
  std::size_t polar_words = 10;      // per polarity
  double flip_doc_rate = 0.4;        // share of documents built around a flip word
  std::size_t word_dim = 25;
  std::uint64_t seed = 0;

  void validate() const;
};

struct SynthData {
  SocialGraph graph;
  LabeledCorpus train, dev, test;
  WordEmbeddingTable words{1};
  SentimentLexicon lexicon;  // polarity as used by community 0
  std::map<std::string, int> community;
};

/// Nodes "u000".. with the first `per_community` in community 0. Every node
/// is present even if isolated.
SocialGraph planted_partition(std::size_t per_community, double intra, double inter, Rng& rng);

/// Community of a node produced by planted_partition.
int planted_community(const SocialGraph& g, SocialGraph::NodeId id, std::size_t per_community);

std::string filler_word(std::size_t i);
std::string positive_word(std::size_t i);
std::string negative_word(std::size_t i);

/// Label a generated message must carry given its tokens and its author's
/// community.
Label synth_gold_label(const std::vector<std::string>& tokens, int community,
                       const SynthConfig& cfg);

/// Graph, author-disjoint 70/10/20 train/dev/test corpora, random word
/// vectors and the community-0 lexicon.
SynthData generate(const SynthConfig& cfg);

/// Writes graph.edges, train.tsv, dev.tsv, test.tsv, words.vec, lexicon.pos,
/// lexicon.neg and communities.tsv into `dir` (created if missing).
void write_dataset(const SynthData& data, const std::filesystem::path& dir);

}  // namespace socatt
