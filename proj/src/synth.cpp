#include "socatt/synth.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <stdexcept>

#include <fmt/format.h>

namespace socatt {
namespace {

Label flip_polarity(std::size_t flip_index, int community) {
  const bool positive_in_zero = flip_index % 2 == 0;
  return (positive_in_zero == (community == 0)) ? Label::positive : Label::negative;
}

}  // namespace

void SynthConfig::validate() const {
  std::vector<std::string> bad;
  auto prob_ok = [](double p) { return p >= 0 && p <= 1; };
  if (!prob_ok(intra_edge_prob)) bad.emplace_back("intra-edge-prob must be in [0,1]");
  if (!prob_ok(inter_edge_prob)) bad.emplace_back("inter-edge-prob must be in [0,1]");
  if (!prob_ok(flip_doc_rate)) bad.emplace_back("flip-doc-rate must be in [0,1]");
  if (nodes_per_community == 0) bad.emplace_back("nodes-per-community must be positive");
  if (docs_per_author == 0) bad.emplace_back("docs-per-author must be positive");
  if (vocab_size == 0) bad.emplace_back("vocab-size must be positive");
  if (polar_words == 0) bad.emplace_back("polar-words must be positive");
  if (word_dim == 0) bad.emplace_back("word-dim must be positive");
  for (const auto& w : flip_words)
    if (w.empty() || w.find_first_of(" \t\n") != std::string::npos)
      bad.emplace_back(fmt::format("invalid flip word '{}'", w));
  if (!bad.empty()) throw std::invalid_argument(fmt::format("{}", fmt::join(bad, "; ")));
}

std::string filler_word(std::size_t i) { return fmt::format("w{}", i); }
std::string positive_word(std::size_t i) { return fmt::format("good{}", i); }
std::string negative_word(std::size_t i) { return fmt::format("bad{}", i); }

SocialGraph planted_partition(std::size_t per_community, double intra, double inter, Rng& rng) {
  SocialGraph g;
  const std::size_t n = 2 * per_community;
  for (std::size_t i = 0; i < n; ++i) g.add_node(fmt::format("u{:03}", i));
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool same = (i < per_community) == (j < per_community);
      if (u(rng) < (same ? intra : inter))
        g.add_edge(static_cast<SocialGraph::NodeId>(i), static_cast<SocialGraph::NodeId>(j));
    }
  return g;
}

int planted_community(const SocialGraph&, SocialGraph::NodeId id, std::size_t per_community) {
  return id < per_community ? 0 : 1;
}

Label synth_gold_label(const std::vector<std::string>& tokens, int community,
                       const SynthConfig& cfg) {
  for (const auto& t : tokens)
    for (std::size_t f = 0; f < cfg.flip_words.size(); ++f)
      if (t == cfg.flip_words[f]) return flip_polarity(f, community);
  for (const auto& t : tokens) {
    if (t.starts_with("good")) return Label::positive;
    if (t.starts_with("bad")) return Label::negative;
  }
  return Label::neutral;
}

SynthData generate(const SynthConfig& cfg) {
  cfg.validate();
  SynthData data;

  Rng graph_rng = make_rng(cfg.seed, "synth-graph");
  data.graph = planted_partition(cfg.nodes_per_community, cfg.intra_edge_prob,
                                 cfg.inter_edge_prob, graph_rng);
  std::vector<std::string> authors = data.graph.names();
  for (SocialGraph::NodeId i = 0; i < data.graph.node_count(); ++i)
    data.community[data.graph.name(i)] = planted_community(data.graph, i, cfg.nodes_per_community);

  // Vocabulary and word vectors.
  std::vector<std::string> vocab;
  for (std::size_t i = 0; i < cfg.vocab_size; ++i) vocab.push_back(filler_word(i));
  for (std::size_t i = 0; i < cfg.polar_words; ++i) {
    vocab.push_back(positive_word(i));
    vocab.push_back(negative_word(i));
  }
  for (const auto& w : cfg.flip_words) vocab.push_back(w);
  Rng word_rng = make_rng(cfg.seed, "synth-words");
  std::normal_distribution<double> normal(0.0, 0.5);
  data.words = WordEmbeddingTable(cfg.word_dim);
  std::vector<double> vec(cfg.word_dim);
  for (const auto& w : vocab) {
    for (double& x : vec) x = normal(word_rng);
    data.words.set(w, vec);
  }

  for (std::size_t i = 0; i < cfg.polar_words; ++i) {
    data.lexicon.positive.insert(positive_word(i));
    data.lexicon.negative.insert(negative_word(i));
  }
  for (std::size_t f = 0; f < cfg.flip_words.size(); ++f)
    (flip_polarity(f, 0) == Label::positive ? data.lexicon.positive : data.lexicon.negative)
        .insert(cfg.flip_words[f]);

  // Author-level split.
  Rng split_rng = make_rng(cfg.seed, "synth-split");
  std::vector<std::string> order = authors;
  std::shuffle(order.begin(), order.end(), split_rng);
  const std::size_t n_train = order.size() * 7 / 10;
  const std::size_t n_dev = order.size() / 10;
  std::map<std::string, int> split;
  for (std::size_t i = 0; i < order.size(); ++i)
    split[order[i]] = i < n_train ? 0 : (i < n_train + n_dev ? 1 : 2);

  // Messages.
  Rng doc_rng = make_rng(cfg.seed, "synth-docs");
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> filler(0, cfg.vocab_size - 1);
  std::uniform_int_distribution<std::size_t> polar(0, cfg.polar_words - 1);
  std::uniform_int_distribution<std::size_t> length(4, 8);
  std::uniform_int_distribution<int> kind(0, 2);
  std::uniform_int_distribution<std::size_t> count(1, 2);
  std::size_t next_id = 0;
  for (const auto& author : authors) {
    const int community = data.community.at(author);
    for (std::size_t d = 0; d < cfg.docs_per_author; ++d) {
      std::vector<std::string> tokens;
      if (!cfg.flip_words.empty() && u(doc_rng) < cfg.flip_doc_rate) {
        std::uniform_int_distribution<std::size_t> pick(0, cfg.flip_words.size() - 1);
        tokens.push_back(cfg.flip_words[pick(doc_rng)]);
      } else {
        const int k = kind(doc_rng);
        const std::size_t c = count(doc_rng);
        for (std::size_t i = 0; k < 2 && i < c; ++i)
          tokens.push_back(k == 0 ? positive_word(polar(doc_rng)) : negative_word(polar(doc_rng)));
      }
      const std::size_t len = std::max(length(doc_rng), tokens.size());
      while (tokens.size() < len) tokens.push_back(filler_word(filler(doc_rng)));
      std::shuffle(tokens.begin(), tokens.end(), doc_rng);

      Document doc{fmt::format("d{:05}", next_id++), author,
                   synth_gold_label(tokens, community, cfg), std::move(tokens)};
      switch (split.at(author)) {
        case 0: data.train.add(std::move(doc)); break;
        case 1: data.dev.add(std::move(doc)); break;
        default: data.test.add(std::move(doc)); break;
      }
    }
  }
  return data;
}

void write_dataset(const SynthData& data, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  save_edge_list(data.graph, dir / "graph.edges");
  save_corpus(data.train, dir / "train.tsv");
  save_corpus(data.dev, dir / "dev.tsv");
  save_corpus(data.test, dir / "test.tsv");
  save_embeddings(data.words, dir / "words.vec", 17);
  save_lexicon(data.lexicon, dir / "lexicon.pos", dir / "lexicon.neg");
  std::ofstream out(dir / "communities.tsv");
  if (!out) throw std::runtime_error("cannot write communities.tsv");
  for (const auto& [author, c] : data.community) out << author << '\t' << c << '\n';
}

}  // namespace socatt
