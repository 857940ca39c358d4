#include <doctest.h>

#include <sstream>

#include "socatt/homophily.hpp"
#include "socatt/synth.hpp"

using namespace socatt;

namespace {

SocialGraph from_text(const std::string& text) {
  std::istringstream in(text);
  return parse_edge_list(in);
}

Document doc(std::string id, std::string author, Label label, std::vector<std::string> tokens) {
  return {std::move(id), std::move(author), label, std::move(tokens)};
}

const SentimentLexicon kLex{{"good", "great"}, {"bad", "awful"}};

}  // namespace

TEST_CASE("lexicon classifier counts polar tokens, ties positive") {
  CHECK(lexicon_classify(doc("1", "a", Label::neutral, {"good", "great", "bad"}), kLex) == Label::positive);
  CHECK(lexicon_classify(doc("1", "a", Label::neutral, {"good", "bad"}), kLex) == Label::positive);
  CHECK(lexicon_classify(doc("1", "a", Label::neutral, {"bad", "meh"}), kLex) == Label::negative);
  CHECK(lexicon_classify(doc("1", "a", Label::neutral, {}), kLex) == Label::positive);
  CHECK(lexicon_classify(doc("1", "a", Label::neutral, {"bad", "bad", "good"}), kLex) == Label::negative);
}

TEST_CASE("correctness map exclusions") {
  LabeledCorpus one({doc("1", "a", Label::positive, {"good"})});
  CHECK(correctness_map(one, kLex) == CorrectnessMap{{"a", true}});

  LabeledCorpus two({doc("1", "a", Label::positive, {"good"}), doc("2", "a", Label::negative, {"bad"}),
                     doc("3", "b", Label::negative, {"good"})});
  CHECK(correctness_map(two, kLex) == CorrectnessMap{{"b", false}});

  LabeledCorpus neutral({doc("1", "a", Label::neutral, {"good"}), doc("2", "b", Label::neutral, {})});
  CHECK(correctness_map(neutral, kLex).empty());

  // A neutral message does not count toward the one-message limit.
  LabeledCorpus mixed({doc("1", "a", Label::neutral, {}), doc("2", "a", Label::negative, {"bad"})});
  CHECK(correctness_map(mixed, kLex) == CorrectnessMap{{"a", true}});
}

TEST_CASE("assortativity by direct count") {
  auto g = from_text("a b\nb c\n");
  CHECK(assortativity(g, {{"a", true}, {"b", true}, {"c", true}}) == 1.0);
  CHECK(assortativity(g, {{"a", true}, {"b", true}, {"c", false}}) == 0.5);
  auto bip = from_text("a x\nb x\nb y\n");
  CHECK(assortativity(bip, {{"a", true}, {"b", true}, {"x", false}, {"y", false}}) == 0.0);
  // Edges with an unmapped endpoint are skipped.
  CHECK(assortativity(g, {{"a", true}, {"b", false}}) == 0.0);
  CHECK_THROWS_AS(assortativity(g, {{"a", true}}), std::invalid_argument);
}

TEST_CASE("assortativity properties") {
  Rng rng(17);
  auto g = planted_partition(30, 0.2, 0.05, rng);
  std::bernoulli_distribution coin(0.5);
  for (int trial = 0; trial < 20; ++trial) {
    CorrectnessMap c, negated;
    for (const auto& n : g.names()) {
      bool v = coin(rng);
      c[n] = v;
      negated[n] = !v;
    }
    const double base = assortativity(g, c);
    CHECK(assortativity(g, negated) == base);

    // Adding a concordant edge never lowers the score.
    bool added = false;
    for (SocialGraph::NodeId i = 0; i < g.node_count() && !added; ++i)
      for (SocialGraph::NodeId j = i + 1; j < g.node_count() && !added; ++j)
        if (!g.has_edge(i, j) && c[g.name(i)] == c[g.name(j)]) {
          SocialGraph more = g;
          more.add_edge(i, j);
          CHECK(assortativity(more, c) >= base);
          added = true;
        }
    CHECK(added);
  }
}

TEST_CASE("rewiring experiment: epoch 0 is the observed graph; reports are seed-deterministic") {
  Rng rng(4);
  auto g = planted_partition(40, 0.15, 0.01, rng);
  CorrectnessMap c;
  for (SocialGraph::NodeId i = 0; i < g.node_count(); ++i) c[g.name(i)] = i < 40;

  auto zero = rewiring_experiment(g, c, 0, 3, 1);
  REQUIRE(zero.epochs.size() == 1);
  CHECK(zero.epochs[0].mean_assortativity == zero.observed);
  CHECK(zero.epochs[0].sd_assortativity == 0.0);

  auto a = rewiring_experiment(g, c, 4, 5, 42);
  auto b = rewiring_experiment(g, c, 4, 5, 42);
  REQUIRE(a.records.size() == 5 * 5);
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    CHECK(a.records[i].assortativity == b.records[i].assortativity);
    CHECK(a.records[i].overlap == b.records[i].overlap);
  }
  std::ostringstream sa, sb;
  write_rewiring_report(a, sa);
  write_rewiring_report(b, sb);
  CHECK(sa.str() == sb.str());
  CHECK(sa.str().rfind("# observed=", 0) == 0);
}

TEST_CASE("planted communities show more assortativity than their rewired versions") {
  int wins = 0;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    Rng rng = make_rng(seed, "test-planted");
    auto g = planted_partition(100, 0.1, 0.005, rng);
    std::uniform_real_distribution<double> u(0, 1);
    CorrectnessMap c;
    for (SocialGraph::NodeId i = 0; i < g.node_count(); ++i)
      c[g.name(i)] = u(rng) < (i < 100 ? 0.8 : 0.3);
    auto report = rewiring_experiment(g, c, 3, 5, seed);
    wins += report.observed > report.epochs[3].mean_assortativity;
  }
  CHECK(wins >= 4);
}

TEST_CASE("edge overlap with the original decays over epochs on average") {
  int decreasing = 0;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    Rng rng = make_rng(seed, "test-overlap");
    auto g = planted_partition(50, 0.1, 0.02, rng);
    CorrectnessMap c;
    for (const auto& n : g.names()) c[n] = n.back() % 2 == 0;
    auto r = rewiring_experiment(g, c, 4, 6, seed);
    bool ok = true;
    for (std::size_t e = 1; e < r.epochs.size(); ++e)
      ok = ok && r.epochs[e].mean_overlap <= r.epochs[e - 1].mean_overlap + 1e-12;
    decreasing += ok;
  }
  CHECK(decreasing >= 3);
}
