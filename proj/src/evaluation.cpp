#include "socatt/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include <boost/math/distributions/students_t.hpp>
#include <fmt/format.h>

#include "socatt/rng.hpp"

namespace socatt {
namespace {

double ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

std::size_t idx(Label l) { return static_cast<std::size_t>(l); }

using Counts = std::array<std::array<std::size_t, kNumLabels>, kNumLabels>;

// 2·tp / (2·tp + fp + fn), which equals 2PR / (P + R) and is 0 for a class
// with no gold and no predicted instances.
double class_f1(const Counts& counts, std::size_t c) {
  std::size_t tp = counts[c][c], gold = 0, pred = 0;
  for (std::size_t j = 0; j < kNumLabels; ++j) {
    gold += counts[c][j];
    pred += counts[j][c];
  }
  const std::size_t den = gold + pred;
  return den == 0 ? 0.0 : static_cast<double>(2 * tp) / static_cast<double>(den);
}

double average_f1_of(const Counts& counts) {
  return (class_f1(counts, idx(Label::positive)) + class_f1(counts, idx(Label::negative))) / 2;
}

}  // namespace

std::size_t EvalReport::total() const {
  std::size_t n = 0;
  for (const auto& row : counts)
    for (auto c : row) n += c;
  return n;
}

EvalReport average_f1(std::span<const Label> gold, std::span<const Label> pred) {
  if (gold.size() != pred.size())
    throw std::invalid_argument(
        fmt::format("gold has {} labels but predictions have {}", gold.size(), pred.size()));
  EvalReport r;
  for (std::size_t i = 0; i < gold.size(); ++i) ++r.counts[idx(gold[i])][idx(pred[i])];
  for (Label c : kAllLabels) {
    const std::size_t i = idx(c);
    std::size_t tp = r.counts[i][i], gold_n = 0, pred_n = 0;
    for (std::size_t j = 0; j < kNumLabels; ++j) {
      gold_n += r.counts[i][j];
      pred_n += r.counts[j][i];
    }
    r.precision[i] = ratio(tp, pred_n);
    r.recall[i] = ratio(tp, gold_n);
    r.f1[i] = class_f1(r.counts, i);
  }
  r.average_f1 = average_f1_of(r.counts);
  return r;
}

void write_eval_report(const EvalReport& report, std::ostream& out) {
  out << "class\tprecision\trecall\tf1\n";
  for (Label c : kAllLabels) {
    const std::size_t i = idx(c);
    out << fmt::format("{}\t{:.6f}\t{:.6f}\t{:.6f}\n", to_string(c), report.precision[i],
                       report.recall[i], report.f1[i]);
  }
  out << "# confusion (rows gold, columns predicted: positive negative neutral)\n";
  for (Label c : kAllLabels) {
    const auto& row = report.counts[idx(c)];
    out << fmt::format("# {}\t{}\t{}\t{}\n", to_string(c), row[0], row[1], row[2]);
  }
}

SignificanceResult bootstrap_significance(std::span<const Label> gold, std::span<const Label> pred_a,
                                          std::span<const Label> pred_b, std::size_t samples,
                                          std::uint64_t seed) {
  if (gold.size() != pred_a.size() || gold.size() != pred_b.size())
    throw std::invalid_argument("bootstrap: label vectors differ in length");
  if (gold.empty()) throw std::invalid_argument("bootstrap: no documents");
  if (samples < 2) throw std::invalid_argument("bootstrap: need at least 2 samples");

  std::vector<double> diffs(samples);
  SignificanceResult result;
  const std::size_t n = gold.size();
  for (std::size_t s = 0; s < samples; ++s) {
    Rng rng = make_rng(seed, "bootstrap", s);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    Counts ca{}, cb{};
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t j = pick(rng);
      ++ca[idx(gold[j])][idx(pred_a[j])];
      ++cb[idx(gold[j])][idx(pred_b[j])];
    }
    const double fa = average_f1_of(ca), fb = average_f1_of(cb);
    result.mean_a += fa;
    result.mean_b += fb;
    diffs[s] = fa - fb;
  }
  const double count = static_cast<double>(samples);
  result.mean_a /= count;
  result.mean_b /= count;

  double mean = 0;
  for (double d : diffs) mean += d;
  mean /= count;
  double ss = 0;
  for (double d : diffs) ss += (d - mean) * (d - mean);
  const double sd = std::sqrt(ss / (count - 1));

  if (sd == 0) {
    result.p_value = mean == 0 ? 1.0 : 0.0;
    result.t_statistic = 0;
  } else {
    result.t_statistic = mean / (sd / std::sqrt(count));
    boost::math::students_t dist(count - 1);
    result.p_value = 2 * boost::math::cdf(boost::math::complement(dist, std::fabs(result.t_statistic)));
  }
  result.significant = result.p_value < 0.05;
  return result;
}

Matrix single_word_probs(std::string_view word, const SocialAttentionModel& model) {
  const std::string token(word);
  const SentenceInput x = embed_tokens(std::span<const std::string>(&token, 1), *model.words);
  const auto k = static_cast<Eigen::Index>(model.num_bases());
  Matrix probs(k, static_cast<Eigen::Index>(model.num_classes()));
  for (Eigen::Index i = 0; i < k; ++i)
    probs.row(i) = basis_forward(x, model.params.bases[static_cast<std::size_t>(i)]).probs.transpose();
  return probs;
}

Matrix specificity_scores(std::string_view word, const SocialAttentionModel& model) {
  Matrix probs = single_word_probs(word, model);
  const Eigen::RowVectorXd mean = probs.colwise().mean();
  probs.rowwise() -= mean;
  return probs;
}

WordSpecificity word_specificity(const SocialAttentionModel& model, const SentimentLexicon& lexicon,
                                 std::size_t top_n) {
  if (top_n == 0) throw std::invalid_argument("top_n must be positive");
  const auto pos_col = static_cast<Eigen::Index>(model.class_index(Label::positive));
  const auto neg_col = static_cast<Eigen::Index>(model.class_index(Label::negative));

  WordSpecificity out;
  out.bases.resize(model.num_bases());
  auto rank = [&](const auto& words, Eigen::Index column,
                  std::vector<WordScore> BasisWordLists::*field) {
    std::vector<std::pair<std::string, Matrix>> scored;
    for (const auto& w : words) {
      if (!model.words->contains(w)) {
        ++out.skipped_oov;
        continue;
      }
      scored.emplace_back(w, specificity_scores(w, model));
    }
    for (std::size_t k = 0; k < model.num_bases(); ++k) {
      std::vector<WordScore> list;
      for (const auto& [w, s] : scored) list.push_back({w, s(static_cast<Eigen::Index>(k), column)});
      std::stable_sort(list.begin(), list.end(), [](const WordScore& a, const WordScore& b) {
        return a.score > b.score;
      });
      if (list.size() > top_n) list.resize(top_n);
      out.bases[k].*field = std::move(list);
    }
  };
  // Lexicon sets iterate alphabetically, so the stable sort breaks ties by word.
  rank(lexicon.negative, pos_col, &BasisWordLists::negative_words_toward_positive);
  rank(lexicon.positive, neg_col, &BasisWordLists::positive_words_toward_negative);
  return out;
}

void write_word_specificity(const WordSpecificity& result, std::ostream& out) {
  out << "basis\tlist\trank\tword\tscore\n";
  for (std::size_t k = 0; k < result.bases.size(); ++k) {
    const auto& b = result.bases[k];
    for (std::size_t r = 0; r < b.negative_words_toward_positive.size(); ++r)
      out << fmt::format("{}\tnegative->positive\t{}\t{}\t{:.6f}\n", k, r + 1,
                         b.negative_words_toward_positive[r].word,
                         b.negative_words_toward_positive[r].score);
    for (std::size_t r = 0; r < b.positive_words_toward_negative.size(); ++r)
      out << fmt::format("{}\tpositive->negative\t{}\t{}\t{:.6f}\n", k, r + 1,
                         b.positive_words_toward_negative[r].word,
                         b.positive_words_toward_negative[r].score);
  }
  out << fmt::format("# skipped_oov={}\n", result.skipped_oov);
}

}  // namespace socatt
