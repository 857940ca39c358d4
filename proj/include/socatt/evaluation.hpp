#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "socatt/corpus.hpp"
#include "socatt/model.hpp"

namespace socatt {

struct EvalReport {
  /// counts[gold][pred], indexed by Label.
  std::array<std::array<std::size_t, kNumLabels>, kNumLabels> counts{};
  std::array<double, kNumLabels> precision{};
  std::array<double, kNumLabels> recall{};
  std::array<double, kNumLabels> f1{};
  /// Mean of F1(positive) and F1(negative); neutral only enters through
  /// their false positives and false negatives.
  double average_f1 = 0;

  std::size_t total() const;
};

/// Per-class scores over the 3-way confusion matrix. A class with no gold
/// and no predicted instances scores 0.
EvalReport average_f1(std::span<const Label> gold, std::span<const Label> pred);

void write_eval_report(const EvalReport& report, std::ostream& out);

struct SignificanceResult {
  double p_value = 1.0;
  double t_statistic = 0.0;
  double mean_a = 0.0;  // mean bootstrap average F1 of system A
  double mean_b = 0.0;
  bool significant = false;  // p < 0.05
};

/// Resamples documents with replacement `samples` times (sample i uses the
/// stream derive_seed(seed, "bootstrap", i)), scores both systems on each
/// sample and applies a two-tailed paired t-test with samples − 1 degrees of
/// freedom. Zero variance of the differences gives p = 1 when the mean
/// difference is zero and p = 0 otherwise.
SignificanceResult bootstrap_significance(std::span<const Label> gold, std::span<const Label> pred_a,
                                          std::span<const Label> pred_b, std::size_t samples,
                                          std::uint64_t seed);

struct WordScore {
  std::string word;
  double score;
};

struct BasisWordLists {
  /// Negative-lexicon words ranked by score(w, k, positive).
  std::vector<WordScore> negative_words_toward_positive;
  /// Positive-lexicon words ranked by score(w, k, negative).
  std::vector<WordScore> positive_words_toward_negative;
};

struct WordSpecificity {
  std::vector<BasisWordLists> bases;
  std::size_t skipped_oov = 0;
};

/// p(y | w, k) for the single-word document [w] (zero-padded), for every
/// basis k; rows are bases, columns the model's classes.
Matrix single_word_probs(std::string_view word, const SocialAttentionModel& model);

/// score(w, k, y) = p(y | w, k) − mean over k' of p(y | w, k').
Matrix specificity_scores(std::string_view word, const SocialAttentionModel& model);

/// Per-basis top-n lexicon words by specificity score; ties broken
/// alphabetically. Lexicon words missing from the word table are skipped and
/// counted.
WordSpecificity word_specificity(const SocialAttentionModel& model, const SentimentLexicon& lexicon,
                                 std::size_t top_n);

void write_word_specificity(const WordSpecificity& result, std::ostream& out);

}  // namespace socatt
