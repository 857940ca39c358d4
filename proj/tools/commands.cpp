#include "commands.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "socatt/checkpoint.hpp"
#include "socatt/corpus.hpp"
#include "socatt/embeddings.hpp"
#include "socatt/error.hpp"
#include "socatt/evaluation.hpp"
#include "socatt/graph.hpp"
#include "socatt/homophily.hpp"
#include "socatt/line.hpp"
#include "socatt/pipeline.hpp"
#include "socatt/synth.hpp"

namespace socatt::cli {
namespace fs = std::filesystem;

namespace {

// Collects every problem with the invocation before anything runs.
class Problems {
 public:
  void add(std::string message) { list_.push_back(std::move(message)); }

  void input(const std::string& flag, const std::string& path) {
    if (path.empty()) return;
    if (!fs::is_regular_file(path)) add(fmt::format("{}: cannot read '{}'", flag, path));
  }

  void output(const std::string& flag, const std::string& path) {
    if (path.empty()) return;
    const fs::path parent = fs::path(path).parent_path();
    if (!parent.empty() && !fs::is_directory(parent))
      add(fmt::format("{}: directory '{}' does not exist", flag, parent.string()));
  }

  void raise() const {
    if (!list_.empty()) throw UsageError(fmt::format("{}", fmt::join(list_, "; ")));
  }

 private:
  std::vector<std::string> list_;
};

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(fmt::format("cannot write '{}'", path));
  return out;
}

std::optional<Mode> checked_mode(const std::string& text, Problems& problems) {
  auto mode = parse_mode(text);
  if (!mode)
    problems.add(fmt::format("mode: unknown mode '{}' (expected social, random, moe, concat or single)",
                             text));
  return mode;
}

// --- embed-network -------------------------------------------------------

struct EmbedOptions {
  std::string graph, out;
  LineConfig line;
  std::uint64_t seed = 0;
};

void run_embed(const EmbedOptions& o) {
  Problems problems;
  problems.input("graph", o.graph);
  problems.output("out", o.out);
  try {
    o.line.validate();
  } catch (const std::invalid_argument& e) {
    problems.add(e.what());
  }
  problems.raise();

  const SocialGraph g = load_edge_list(o.graph);
  Rng train_rng = make_rng(o.seed, "line");
  const auto table = train_line_embeddings(g, o.line, train_rng);
  save_embeddings(table, o.out);
  Rng objective_rng = make_rng(o.seed, "line-objective");
  const double objective =
      estimate_line_objective(g, table, o.line.negative_samples, o.line.noise_exponent, objective_rng);
  std::cout << fmt::format("nodes={} edges={}\n", g.node_count(), g.edge_count());
  std::cout << fmt::format("objective={:.6f}\n", objective);
}

CLI::App* add_embed(CLI::App& app, EmbedOptions& o) {
  auto* cmd = app.add_subcommand("embed-network", "Train LINE node embeddings on an edge list");
  cmd->add_option("--graph", o.graph, "Edge list (two node names per line)")->required();
  cmd->add_option("--out", o.out, "Output embedding file")->required();
  cmd->add_option("--dim", o.line.dimension, "Embedding dimension")->capture_default_str();
  cmd->add_option("--negatives", o.line.negative_samples, "Negative samples per edge")
      ->capture_default_str();
  cmd->add_option("--line-lr", o.line.learning_rate, "Initial learning rate")->capture_default_str();
  cmd->add_option("--line-epochs", o.line.epochs, "Epochs (each samples |E| edges)")
      ->capture_default_str();
  cmd->add_option("--noise-exponent", o.line.noise_exponent, "Noise distribution exponent")
      ->capture_default_str();
  cmd->add_option("--seed", o.seed, "Random seed")->capture_default_str();
  return cmd;
}

// --- train ---------------------------------------------------------------

struct TrainOptions {
  std::string train, dev, words, authors, out, history;
  std::string mode = "social";
  RunConfig run;
};

void run_train(TrainOptions o) {
  Problems problems;
  auto mode = checked_mode(o.mode, problems);
  for (const auto& v : o.run.violations()) problems.add(v);
  problems.input("train", o.train);
  problems.input("dev", o.dev);
  problems.input("words", o.words);
  problems.input("authors", o.authors);
  if (mode && (*mode == Mode::social || *mode == Mode::concat) && o.authors.empty())
    problems.add(fmt::format("authors: required for mode '{}'", o.mode));
  if (o.history.empty()) o.history = o.out + ".history.tsv";
  problems.output("out", o.out);
  problems.output("history", o.history);
  problems.raise();
  o.run.mode = *mode;

  const LabeledCorpus train = load_corpus(o.train);
  const LabeledCorpus dev = load_corpus(o.dev);
  auto words = std::make_shared<const WordEmbeddingTable>(load_word_embeddings(o.words));
  std::shared_ptr<const NodeEmbeddingTable> line_table;
  if (!o.authors.empty())
    line_table = std::make_shared<const NodeEmbeddingTable>(load_embeddings(o.authors));

  // Random attention vectors go to every author the run can see.
  std::vector<std::string> names;
  std::set<std::string> seen;
  auto add_name = [&](const std::string& n) {
    if (seen.insert(n).second) names.push_back(n);
  };
  if (line_table)
    for (const auto& n : line_table->names()) add_name(n);
  for (const auto& n : train.authors()) add_name(n);
  for (const auto& n : dev.authors()) add_name(n);
  auto authors = run_author_table(o.run, line_table, names);

  const TrainResult result = run_training(o.run, train, dev, words, authors);

  nlohmann::json config = to_json(o.run);
  config["command"] = "train";
  config["train"] = o.train;
  config["dev"] = o.dev;
  config["words"] = o.words;
  config["authors"] = o.authors;
  config["best_epoch"] = result.best_epoch;
  save_checkpoint(result.model, config, o.out);
  auto history = open_output(o.history);
  write_history(result.history, history);

  for (const auto& r : result.history)
    std::cout << fmt::format("epoch={} train_loss={:.6f} dev_f1={:.6f}\n", r.epoch, r.train_loss,
                             r.dev_f1);
  const double best_f1 = result.history.empty() ? 0.0 : result.history[result.best_epoch - 1].dev_f1;
  std::cout << fmt::format("best_epoch={} dev_f1={:.6f}\n", result.best_epoch, best_f1);
}

CLI::App* add_train(CLI::App& app, TrainOptions& o) {
  auto* cmd = app.add_subcommand("train", "Pretrain and jointly train a classifier");
  auto& r = o.run;
  cmd->add_option("--train", o.train, "Training corpus")->required();
  cmd->add_option("--dev", o.dev, "Development corpus (early stopping)")->required();
  cmd->add_option("--words", o.words, "Word embeddings")->required();
  cmd->add_option("--authors", o.authors, "Author (network) embeddings");
  cmd->add_option("--out", o.out, "Output checkpoint")->required();
  cmd->add_option("--history", o.history, "Per-epoch history (default <out>.history.tsv)");
  cmd->add_option("--mode", o.mode, "social, random, moe, concat or single")->capture_default_str();
  cmd->add_option("--bases", r.bases, "Number of basis models K")->capture_default_str();
  cmd->add_option("--filters", r.filters, "Bigram filters per basis")->capture_default_str();
  cmd->add_option("--author-dim", r.author_dim, "Dimension of random attention vectors")
      ->capture_default_str();
  cmd->add_option("--pretrain-epochs", r.pretrain.epochs, "Instance-weighted pretraining epochs")
      ->capture_default_str();
  cmd->add_option("--sigma", r.pretrain.sigma, "Std-dev of the pretraining projections")
      ->capture_default_str();
  cmd->add_option("--epochs", r.train.max_epochs, "Joint training epochs")->capture_default_str();
  cmd->add_option("--lr", r.train.adam.learning_rate, "Adam learning rate")->capture_default_str();
  cmd->add_option("--beta1", r.train.adam.beta1, "Adam beta1")->capture_default_str();
  cmd->add_option("--beta2", r.train.adam.beta2, "Adam beta2")->capture_default_str();
  cmd->add_option("--adam-epsilon", r.train.adam.epsilon, "Adam epsilon")->capture_default_str();
  cmd->add_option("--batch-size", r.train.batch_size, "Mini-batch size")->capture_default_str();
  cmd->add_option("--seed", r.seed, "Random seed")->capture_default_str();
  return cmd;
}

// --- eval ----------------------------------------------------------------

struct EvalOptions {
  std::string test, checkpoint, predictions, compare, compare_predictions, report, predictions_out;
  std::size_t samples = 100;
  std::uint64_t seed = 0;
};

// One "id<TAB>label" line per document.
std::map<std::string, Label, std::less<>> load_predictions(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(fmt::format("cannot read '{}'", path));
  std::map<std::string, Label, std::less<>> out;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) throw FormatError("expected id<TAB>label", n);
    auto label = parse_label(line.substr(tab + 1));
    if (!label) throw FormatError(fmt::format("unknown label '{}'", line.substr(tab + 1)), n);
    out.insert_or_assign(line.substr(0, tab), *label);
  }
  return out;
}

std::vector<Label> aligned_predictions(const LabeledCorpus& test, const std::string& path) {
  const auto by_id = load_predictions(path);
  std::vector<Label> out;
  for (const auto& d : test) {
    auto it = by_id.find(d.id);
    if (it == by_id.end())
      throw std::runtime_error(fmt::format("'{}' has no prediction for document '{}'", path, d.id));
    out.push_back(it->second);
  }
  return out;
}

std::vector<Label> checkpoint_predictions(const LabeledCorpus& test, const std::string& path) {
  return predict_all(test, load_checkpoint(path).model);
}

void run_eval(const EvalOptions& o) {
  Problems problems;
  problems.input("test", o.test);
  if (o.checkpoint.empty() == o.predictions.empty())
    problems.add("checkpoint/predictions: give exactly one");
  if (!o.compare.empty() && !o.compare_predictions.empty())
    problems.add("compare/compare-predictions: give at most one");
  problems.input("checkpoint", o.checkpoint);
  problems.input("predictions", o.predictions);
  problems.input("compare", o.compare);
  problems.input("compare-predictions", o.compare_predictions);
  if (o.samples < 2) problems.add("samples: must be >= 2");
  problems.output("report", o.report);
  problems.output("predictions-out", o.predictions_out);
  problems.raise();

  const LabeledCorpus test = load_corpus(o.test);
  std::vector<Label> gold;
  for (const auto& d : test) gold.push_back(d.label);
  const auto pred = o.checkpoint.empty() ? aligned_predictions(test, o.predictions)
                                         : checkpoint_predictions(test, o.checkpoint);
  const EvalReport report = average_f1(gold, pred);

  std::ostringstream text;
  write_eval_report(report, text);
  if (!o.compare.empty() || !o.compare_predictions.empty()) {
    const auto other = o.compare.empty() ? aligned_predictions(test, o.compare_predictions)
                                         : checkpoint_predictions(test, o.compare);
    const auto sig = bootstrap_significance(gold, pred, other, o.samples, o.seed);
    text << fmt::format("compare_avg_f1={:.6f}\n", average_f1(gold, other).average_f1);
    text << fmt::format("bootstrap_mean_a={:.6f} bootstrap_mean_b={:.6f} t={:.6f}\n", sig.mean_a,
                        sig.mean_b, sig.t_statistic);
    text << fmt::format("p={:.6f} significant={}\n", sig.p_value, sig.significant ? "yes" : "no");
  }
  text << fmt::format("avg_f1={:.6f}\n", report.average_f1);

  if (!o.report.empty()) open_output(o.report) << text.str();
  if (!o.predictions_out.empty()) {
    auto out = open_output(o.predictions_out);
    std::size_t i = 0;
    for (const auto& d : test) out << d.id << '\t' << to_string(pred[i++]) << '\n';
  }
  std::cout << text.str();
}

CLI::App* add_eval(CLI::App& app, EvalOptions& o) {
  auto* cmd = app.add_subcommand("eval", "Average F1 on a labeled corpus, optionally vs a second system");
  cmd->add_option("--test", o.test, "Gold-labeled corpus")->required();
  cmd->add_option("--checkpoint", o.checkpoint, "Trained checkpoint");
  cmd->add_option("--predictions", o.predictions, "Predictions file (id<TAB>label)");
  cmd->add_option("--compare", o.compare, "Second checkpoint for a bootstrap significance test");
  cmd->add_option("--compare-predictions", o.compare_predictions,
                  "Second predictions file for a bootstrap significance test");
  cmd->add_option("--samples", o.samples, "Bootstrap samples")->capture_default_str();
  cmd->add_option("--seed", o.seed, "Bootstrap seed")->capture_default_str();
  cmd->add_option("--report", o.report, "Also write the printed report here");
  cmd->add_option("--predictions-out", o.predictions_out, "Write predictions (id<TAB>label)");
  return cmd;
}

// --- homophily -----------------------------------------------------------

struct HomophilyOptions {
  std::string graph, corpus, lexicon_pos, lexicon_neg, out;
  std::size_t epochs = 5;
  std::size_t trials = 10;
  std::uint64_t seed = 0;
};

void run_homophily(const HomophilyOptions& o) {
  Problems problems;
  problems.input("graph", o.graph);
  problems.input("corpus", o.corpus);
  problems.input("lexicon-pos", o.lexicon_pos);
  problems.input("lexicon-neg", o.lexicon_neg);
  if (o.trials < 1) problems.add("trials: must be >= 1");
  problems.output("out", o.out);
  problems.raise();

  const SocialGraph g = load_edge_list(o.graph);
  const auto correct =
      correctness_map(load_corpus(o.corpus), load_lexicon(o.lexicon_pos, o.lexicon_neg));
  if (correct.empty())
    throw std::runtime_error("no author has exactly one non-neutral message; nothing to score");
  const auto report = rewiring_experiment(g, correct, o.epochs, o.trials, o.seed);
  std::ostringstream text;
  write_rewiring_report(report, text);
  open_output(o.out) << text.str();
  for (const auto& e : report.epochs)
    std::cout << fmt::format("epoch={} assortativity={:.6f} sd={:.6f} overlap={:.6f}\n", e.epoch,
                             e.mean_assortativity, e.sd_assortativity, e.mean_overlap);
  std::cout << fmt::format("observed={:.6f}\n", report.observed);
}

CLI::App* add_homophily(CLI::App& app, HomophilyOptions& o) {
  auto* cmd = app.add_subcommand("homophily", "Assortativity of lexicon errors, observed vs rewired");
  cmd->add_option("--graph", o.graph, "Edge list")->required();
  cmd->add_option("--corpus", o.corpus, "Gold-labeled corpus")->required();
  cmd->add_option("--lexicon-pos", o.lexicon_pos, "Positive word list")->required();
  cmd->add_option("--lexicon-neg", o.lexicon_neg, "Negative word list")->required();
  cmd->add_option("--out", o.out, "Report file")->required();
  cmd->add_option("--epochs", o.epochs, "Rewiring epochs")->capture_default_str();
  cmd->add_option("--trials", o.trials, "Independent rewiring chains")->capture_default_str();
  cmd->add_option("--seed", o.seed, "Random seed")->capture_default_str();
  return cmd;
}

// --- analyze-words -------------------------------------------------------

struct WordsOptions {
  std::string checkpoint, lexicon_pos, lexicon_neg, out;
  std::size_t top_n = 5;
};

void run_words(const WordsOptions& o) {
  Problems problems;
  problems.input("checkpoint", o.checkpoint);
  problems.input("lexicon-pos", o.lexicon_pos);
  problems.input("lexicon-neg", o.lexicon_neg);
  if (o.top_n < 1) problems.add("top-n: must be >= 1");
  problems.output("out", o.out);
  problems.raise();

  const auto ckpt = load_checkpoint(o.checkpoint);
  const auto result =
      word_specificity(ckpt.model, load_lexicon(o.lexicon_pos, o.lexicon_neg), o.top_n);
  std::ostringstream text;
  write_word_specificity(result, text);
  if (!o.out.empty()) open_output(o.out) << text.str();
  std::cout << text.str();
}

CLI::App* add_words(CLI::App& app, WordsOptions& o) {
  auto* cmd = app.add_subcommand("analyze-words", "Lexicon words most specific to each basis model");
  cmd->add_option("--checkpoint", o.checkpoint, "Trained checkpoint")->required();
  cmd->add_option("--lexicon-pos", o.lexicon_pos, "Positive word list")->required();
  cmd->add_option("--lexicon-neg", o.lexicon_neg, "Negative word list")->required();
  cmd->add_option("--top-n", o.top_n, "Words per list")->capture_default_str();
  cmd->add_option("--out", o.out, "Also write the lists here");
  return cmd;
}

// --- synth ---------------------------------------------------------------

struct SynthOptions {
  std::string out;
  SynthConfig cfg;
};

void run_synth(const SynthOptions& o) {
  Problems problems;
  try {
    o.cfg.validate();
  } catch (const std::invalid_argument& e) {
    problems.add(e.what());
  }
  problems.raise();
  const auto data = generate(o.cfg);
  write_dataset(data, o.out);
  std::cout << fmt::format("nodes={} edges={} train={} dev={} test={}\n", data.graph.node_count(),
                           data.graph.edge_count(), data.train.size(), data.dev.size(),
                           data.test.size());
  std::cout << fmt::format("wrote={}\n", o.out);
}

CLI::App* add_synth(CLI::App& app, SynthOptions& o) {
  auto* cmd = app.add_subcommand("synth", "Write a planted-community flip-word benchmark");
  auto& c = o.cfg;
  cmd->add_option("--out", o.out, "Output directory")->required();
  cmd->add_option("--nodes-per-community", c.nodes_per_community, "Authors per community")
      ->capture_default_str();
  cmd->add_option("--intra", c.intra_edge_prob, "Within-community edge probability")
      ->capture_default_str();
  cmd->add_option("--inter", c.inter_edge_prob, "Cross-community edge probability")
      ->capture_default_str();
  cmd->add_option("--flip-words", c.flip_words, "Words whose polarity depends on the community")
      ->delimiter(',')
      ->capture_default_str();
  cmd->add_flag("--no-flip-words", [&c](std::int64_t) { c.flip_words.clear(); },
                "Generate without flip words");
  cmd->add_option("--docs-per-author", c.docs_per_author, "Messages per author")
      ->capture_default_str();
  cmd->add_option("--vocab-size", c.vocab_size, "Neutral filler words")->capture_default_str();
  cmd->add_option("--polar-words", c.polar_words, "Words per polarity")->capture_default_str();
  cmd->add_option("--flip-doc-rate", c.flip_doc_rate, "Share of messages built around a flip word")
      ->capture_default_str();
  cmd->add_option("--word-dim", c.word_dim, "Word vector dimension")->capture_default_str();
  cmd->add_option("--seed", c.seed, "Random seed")->capture_default_str();
  return cmd;
}

}  // namespace

std::vector<Command> register_commands(CLI::App& app) {
  // Option storage lives as long as the process.
  static EmbedOptions embed;
  static TrainOptions train;
  static EvalOptions eval;
  static HomophilyOptions homophily;
  static WordsOptions words;
  static SynthOptions synth;
  return {
      {add_embed(app, embed), [] { run_embed(embed); }},
      {add_train(app, train), [] { run_train(train); }},
      {add_eval(app, eval), [] { run_eval(eval); }},
      {add_homophily(app, homophily), [] { run_homophily(homophily); }},
      {add_words(app, words), [] { run_words(words); }},
      {add_synth(app, synth), [] { run_synth(synth); }},
  };
}

}  // namespace socatt::cli
