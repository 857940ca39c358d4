#include "socatt/homophily.hpp"

#include <cmath>
#include <future>
#include <ostream>
#include <stdexcept>
#include <unordered_map>

#include <fmt/format.h>

namespace socatt {
namespace {

// Per-node correctness: -1 = not in map, 0 = wrong, 1 = right.
std::vector<signed char> node_states(const SocialGraph& g, const CorrectnessMap& correct) {
  std::vector<signed char> state(g.node_count(), -1);
  for (SocialGraph::NodeId i = 0; i < g.node_count(); ++i) {
    auto it = correct.find(g.name(i));
    if (it != correct.end()) state[i] = it->second ? 1 : 0;
  }
  return state;
}

double assortativity_of(const SocialGraph& g, const std::vector<signed char>& state) {
  std::size_t eligible = 0, concordant = 0;
  for (const auto& e : g.edges()) {
    if (state[e.u] < 0 || state[e.v] < 0) continue;
    ++eligible;
    if (state[e.u] == state[e.v]) ++concordant;
  }
  if (eligible == 0)
    throw std::invalid_argument("assortativity: no edge has both endpoints in the correctness map");
  return static_cast<double>(concordant) / static_cast<double>(eligible);
}

std::pair<double, double> mean_sd(const std::vector<double>& xs) {
  double mean = 0;
  for (double x : xs) mean += x;
  mean /= static_cast<double>(xs.size());
  if (xs.size() < 2) return {mean, 0.0};
  double ss = 0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return {mean, std::sqrt(ss / static_cast<double>(xs.size() - 1))};
}

}  // namespace

Label lexicon_classify(const Document& doc, const SentimentLexicon& lexicon) {
  std::size_t pos = 0, neg = 0;
  for (const auto& t : doc.tokens) {
    if (lexicon.is_positive(t)) ++pos;
    if (lexicon.is_negative(t)) ++neg;
  }
  return pos >= neg ? Label::positive : Label::negative;
}

CorrectnessMap correctness_map(const LabeledCorpus& corpus, const SentimentLexicon& lexicon) {
  std::unordered_map<std::string, std::size_t> per_author;
  for (const auto& d : corpus)
    if (d.label != Label::neutral) ++per_author[d.author];

  CorrectnessMap out;
  for (const auto& d : corpus) {
    if (d.label == Label::neutral || per_author[d.author] != 1) continue;
    out[d.author] = lexicon_classify(d, lexicon) == d.label;
  }
  return out;
}

double assortativity(const SocialGraph& g, const CorrectnessMap& correct) {
  return assortativity_of(g, node_states(g, correct));
}

RewiringReport rewiring_experiment(const SocialGraph& g, const CorrectnessMap& correct,
                                   std::size_t epochs, std::size_t trials, std::uint64_t seed) {
  if (trials == 0) throw std::invalid_argument("rewiring_experiment: trials must be positive");
  const auto state = node_states(g, correct);
  RewiringReport report;
  report.observed = assortativity_of(g, state);

  auto run_chain = [&](std::size_t trial) {
    std::vector<RewiringRecord> rows;
    Rng rng = make_rng(seed, "rewire", trial);
    SocialGraph current = g;
    rows.push_back({trial, 0, report.observed, 1.0});
    for (std::size_t e = 1; e <= epochs; ++e) {
      current = double_edge_swap_epoch(current, rng);
      rows.push_back({trial, e, assortativity_of(current, state), edge_overlap(g, current)});
    }
    return rows;
  };

  std::vector<std::future<std::vector<RewiringRecord>>> chains;
  for (std::size_t t = 0; t < trials; ++t)
    chains.push_back(std::async(std::launch::async, run_chain, t));
  for (auto& c : chains) {
    auto rows = c.get();
    report.records.insert(report.records.end(), rows.begin(), rows.end());
  }

  for (std::size_t e = 0; e <= epochs; ++e) {
    std::vector<double> a, o;
    for (const auto& r : report.records)
      if (r.epoch == e) {
        a.push_back(r.assortativity);
        o.push_back(r.overlap);
      }
    auto [ma, sa] = mean_sd(a);
    auto [mo, so] = mean_sd(o);
    report.epochs.push_back({e, ma, sa, mo, so});
  }
  return report;
}

void write_rewiring_report(const RewiringReport& report, std::ostream& out) {
  out << fmt::format("# observed={:.9g}\n", report.observed);
  out << "trial\tepoch\tassortativity\toverlap\n";
  for (const auto& r : report.records)
    out << fmt::format("{}\t{}\t{:.9g}\t{:.9g}\n", r.trial, r.epoch, r.assortativity, r.overlap);
}

}  // namespace socatt
