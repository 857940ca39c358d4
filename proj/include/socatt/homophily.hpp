#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "socatt/corpus.hpp"
#include "socatt/graph.hpp"

namespace socatt {

/// author -> whether the lexicon classifier got that author's single
/// polar message right.
using CorrectnessMap = std::map<std::string, bool, std::less<>>;

/// Positive iff the message has at least as many positive as negative
/// lexicon tokens (ties go positive).
Label lexicon_classify(const Document& doc, const SentimentLexicon& lexicon);

/// Neutral documents are dropped, then authors left with more than one
/// document are excluded.
CorrectnessMap correctness_map(const LabeledCorpus& corpus, const SentimentLexicon& lexicon);

/// Fraction of edges, among those with both endpoints in `correct`, whose
/// endpoints are both right or both wrong.
double assortativity(const SocialGraph& g, const CorrectnessMap& correct);

struct RewiringRecord {
  std::size_t trial;
  std::size_t epoch;
  double assortativity;
  double overlap;
};

struct RewiringEpochSummary {
  std::size_t epoch;
  double mean_assortativity;
  double sd_assortativity;
  double mean_overlap;
  double sd_overlap;
};

struct RewiringReport {
  double observed = 0;
  std::vector<RewiringEpochSummary> epochs;  // epoch 0 is the unrewired graph
  std::vector<RewiringRecord> records;       // trial-major
};

/// Runs `trials` independent chains of `epochs` rewiring epochs. Chain t
/// draws from the stream derive_seed(seed, "rewire", t), so the report does
/// not depend on scheduling.
RewiringReport rewiring_experiment(const SocialGraph& g, const CorrectnessMap& correct,
                                   std::size_t epochs, std::size_t trials, std::uint64_t seed);

/// Tab-separated: a "# observed=<x>" comment line, a header, then one
/// trial/epoch record per line.
void write_rewiring_report(const RewiringReport& report, std::ostream& out);

}  // namespace socatt
