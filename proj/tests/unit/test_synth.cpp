#include <doctest.h>

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

#include "socatt/embeddings.hpp"
#include "socatt/synth.hpp"
#include "test_util.hpp"

using namespace socatt;

namespace {

std::size_t components(const SocialGraph& g) {
  std::vector<std::size_t> parent(g.node_count());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  for (auto e : g.edges()) parent[find(e.u)] = find(e.v);
  std::set<std::size_t> roots;
  for (std::size_t i = 0; i < g.node_count(); ++i) roots.insert(find(i));
  return roots.size();
}

}  // namespace

TEST_CASE("no inter-community edges when the inter probability is zero") {
  SynthConfig cfg;
  cfg.inter_edge_prob = 0.0;
  cfg.intra_edge_prob = 0.3;
  cfg.seed = 1;
  auto data = generate(cfg);
  for (auto e : data.graph.edges())
    CHECK(data.community.at(data.graph.name(e.u)) == data.community.at(data.graph.name(e.v)));
  CHECK(components(data.graph) == 2);
}

TEST_CASE("splits are author-disjoint 70/10/20 and labels are recomputable") {
  SynthConfig cfg;
  cfg.seed = 2;
  auto data = generate(cfg);
  std::map<std::string, int> split_of;
  int idx = 0;
  for (const auto* c : {&data.train, &data.dev, &data.test}) {
    for (const auto& d : *c) {
      auto [it, inserted] = split_of.emplace(d.author, idx);
      CHECK(it->second == idx);
    }
    ++idx;
  }
  CHECK(data.train.authors().size() == 140);
  CHECK(data.dev.authors().size() == 20);
  CHECK(data.test.authors().size() == 40);
  CHECK(data.train.size() + data.dev.size() + data.test.size() == 200 * cfg.docs_per_author);

  // Independent recomputation: flip word i is positive for community 0 iff i is even.
  for (const auto* c : {&data.train, &data.dev, &data.test})
    for (const auto& d : *c) {
      const int community = data.community.at(d.author);
      Label expected = Label::neutral;
      bool found = false;
      for (std::size_t f = 0; f < cfg.flip_words.size() && !found; ++f)
        if (std::find(d.tokens.begin(), d.tokens.end(), cfg.flip_words[f]) != d.tokens.end()) {
          expected = ((f % 2 == 0) == (community == 0)) ? Label::positive : Label::negative;
          found = true;
        }
      if (!found)
        for (const auto& t : d.tokens) {
          if (data.lexicon.is_positive(t)) { expected = Label::positive; break; }
          if (data.lexicon.is_negative(t)) { expected = Label::negative; break; }
        }
      CHECK(d.label == expected);
    }
}

TEST_CASE("without flip words the label ignores the community") {
  SynthConfig cfg;
  cfg.flip_words.clear();
  cfg.seed = 3;
  auto data = generate(cfg);
  for (const auto& d : data.train) {
    CHECK(synth_gold_label(d.tokens, 0, cfg) == d.label);
    CHECK(synth_gold_label(d.tokens, 1, cfg) == d.label);
  }
}

TEST_CASE("generation is deterministic and validated") {
  SynthConfig cfg;
  cfg.nodes_per_community = 30;
  cfg.seed = 4;
  auto a = generate(cfg), b = generate(cfg);
  CHECK(a.graph.edges() == b.graph.edges());
  CHECK(a.train == b.train);
  CHECK(a.test == b.test);
  CHECK(a.words == b.words);

  testutil::TempDir d1, d2;
  write_dataset(a, d1.path());
  write_dataset(b, d2.path());
  for (auto f : {"graph.edges", "train.tsv", "dev.tsv", "test.tsv", "words.vec", "lexicon.pos",
                 "lexicon.neg", "communities.tsv"})
    CHECK(testutil::read_file(d1 / f) == testutil::read_file(d2 / f));

  SynthConfig bad;
  bad.intra_edge_prob = 1.5;
  CHECK_THROWS_AS(generate(bad), std::invalid_argument);
  bad = SynthConfig{};
  bad.inter_edge_prob = -0.1;
  CHECK_THROWS_AS(generate(bad), std::invalid_argument);
}

TEST_CASE("written dataset loads back through the ordinary readers") {
  SynthConfig cfg;
  cfg.nodes_per_community = 25;
  cfg.seed = 5;
  auto data = generate(cfg);
  testutil::TempDir dir;
  write_dataset(data, dir.path());
  CHECK(load_corpus(dir / "train.tsv") == data.train);
  CHECK(load_word_embeddings(dir / "words.vec") == data.words);
  CHECK(load_edge_list(dir / "graph.edges").edge_count() == data.graph.edge_count());
  auto lex = load_lexicon(dir / "lexicon.pos", dir / "lexicon.neg");
  CHECK(lex.positive == data.lexicon.positive);
  CHECK(lex.negative == data.lexicon.negative);
}
