#include "socatt/model.hpp"

#include <stdexcept>

#include <fmt/format.h>

#include "socatt/log.hpp"

namespace socatt {
namespace {

Vector uniform(std::size_t k) {
  return Vector::Constant(static_cast<Eigen::Index>(k), 1.0 / static_cast<double>(k));
}

Vector gate_scores(const GateParams& gate, const Vector& input) {
  return gate.weight * input + gate.bias;
}

std::optional<Vector> author_vector(std::string_view author, const SocialAttentionModel& model) {
  if (!model.authors) return std::nullopt;
  auto row = model.authors->find(author);
  if (!row) return std::nullopt;
  return Vector(*row);
}

}  // namespace

std::string_view to_string(Mode mode) {
  switch (mode) {
    case Mode::social: return "social";
    case Mode::random: return "random";
    case Mode::moe: return "moe";
    case Mode::concat: return "concat";
    case Mode::single: return "single";
  }
  return "?";
}

std::optional<Mode> parse_mode(std::string_view text) {
  for (Mode m : {Mode::social, Mode::random, Mode::moe, Mode::concat, Mode::single})
    if (to_string(m) == text) return m;
  return std::nullopt;
}

bool uses_author_table(Mode mode) {
  return mode == Mode::social || mode == Mode::random || mode == Mode::concat;
}

TensorList ModelParams::tensors() {
  TensorList out;
  for (auto& b : bases) {
    auto t = b.tensors();
    out.insert(out.end(), t.begin(), t.end());
  }
  if (gate.weight.size()) out.push_back(flat(gate.weight));
  if (gate.bias.size()) out.push_back(flat(gate.bias));
  if (author_head.size()) out.push_back(flat(author_head));
  return out;
}

void ModelParams::set_zero() {
  for (auto& b : bases) b.set_zero();
  gate.weight.setZero();
  gate.bias.setZero();
  author_head.setZero();
}

ModelParams ModelParams::zeros_like() const {
  ModelParams z = *this;
  z.set_zero();
  return z;
}

std::size_t SocialAttentionModel::class_index(Label label) const {
  for (std::size_t i = 0; i < classes.size(); ++i)
    if (classes[i] == label) return i;
  throw std::invalid_argument(fmt::format("label '{}' is not in the model's class list",
                                          to_string(label)));
}

SocialAttentionModel make_model(const ModelSpec& spec,
                                std::shared_ptr<const WordEmbeddingTable> words,
                                std::shared_ptr<const NodeEmbeddingTable> authors, Rng& rng) {
  if (!words) throw std::invalid_argument("model needs a word embedding table");
  if (uses_author_table(spec.mode) && !authors)
    throw std::invalid_argument(
        fmt::format("mode '{}' needs an author embedding table", to_string(spec.mode)));
  if (spec.bases == 0) throw std::invalid_argument("number of basis models must be >= 1");
  if (spec.filters == 0) throw std::invalid_argument("number of filters must be >= 1");
  if (spec.classes.empty()) throw std::invalid_argument("class list is empty");

  SocialAttentionModel model;
  model.mode = spec.mode;
  model.classes = spec.classes;
  model.words = std::move(words);
  if (uses_author_table(spec.mode)) model.authors = std::move(authors);

  const bool single_basis = spec.mode == Mode::single || spec.mode == Mode::concat;
  const std::size_t k = single_basis ? 1 : spec.bases;
  const BasisShape shape{spec.filters, model.words->dimension(), spec.classes.size()};
  for (std::size_t i = 0; i < k; ++i) model.params.bases.push_back(BasisParams::random(shape, rng));

  const auto kk = static_cast<Eigen::Index>(k);
  switch (spec.mode) {
    case Mode::social:
    case Mode::random:
      model.params.gate.weight =
          Matrix::Zero(kk, static_cast<Eigen::Index>(model.authors->dimension()));
      model.params.gate.bias = Vector::Zero(kk);
      break;
    case Mode::moe: {
      model.params.gate.weight = Matrix::Zero(kk, static_cast<Eigen::Index>(shape.word_dim));
      model.params.gate.bias = Vector::Zero(kk);
      std::uniform_real_distribution<double> u(-0.05, 0.05);
      for (double& v : flat(model.params.gate.weight)) v = u(rng);
      break;
    }
    case Mode::concat:
      model.params.author_head =
          Matrix::Zero(static_cast<Eigen::Index>(shape.classes),
                       static_cast<Eigen::Index>(model.authors->dimension()));
      break;
    case Mode::single:
      break;
  }
  return model;
}

Vector attention_weights(std::string_view author, const SocialAttentionModel& model) {
  const std::size_t k = model.num_bases();
  auto v = author_vector(author, model);
  if (!v) {
    log_warning_once(fmt::format("unknown-author:{}", author),
                     fmt::format("author '{}' has no embedding; using uniform attention", author));
    return uniform(k);
  }
  return softmax(gate_scores(model.params.gate, *v));
}

Vector summed_word_vectors(std::span<const std::string> tokens, const WordEmbeddingTable& words) {
  Vector sum = Vector::Zero(static_cast<Eigen::Index>(words.dimension()));
  for (const auto& t : tokens)
    if (auto row = words.find(t)) sum += *row;
  return sum;
}

Vector moe_gate(const Document& doc, const SocialAttentionModel& model) {
  return softmax(gate_scores(model.params.gate, summed_word_vectors(doc.tokens, *model.words)));
}

NodeEmbeddingTable random_attention_embeddings(const std::vector<std::string>& authors,
                                               std::size_t dimension, Rng& rng) {
  NodeEmbeddingTable table(dimension);
  std::uniform_real_distribution<double> u(-0.25, 0.25);
  std::vector<double> v(dimension);
  for (const auto& a : authors) {
    for (double& x : v) x = u(rng);
    table.set(a, v);
  }
  return table;
}

MixtureForward mixture_forward(const Document& doc, std::string_view author,
                               const SocialAttentionModel& model) {
  MixtureForward f;
  const SentenceInput x = embed_tokens(doc, *model.words);
  for (const auto& b : model.params.bases) f.bases.push_back(basis_forward(x, b));

  switch (model.mode) {
    case Mode::single:
      f.gate = Vector::Ones(1);
      f.probs = f.bases[0].probs;
      return f;
    case Mode::concat: {
      f.gate = Vector::Ones(1);
      auto v = author_vector(author, model);
      f.gate_input = v ? *v : Vector::Zero(model.params.author_head.cols());
      const auto& b = model.params.bases[0];
      f.probs = softmax(class_logits(f.bases[0].pooled, b) + model.params.author_head * f.gate_input);
      return f;
    }
    case Mode::social:
    case Mode::random:
      if (auto v = author_vector(author, model)) {
        f.gate_input = *v;
        f.gate = softmax(gate_scores(model.params.gate, f.gate_input));
        f.gate_trainable = true;
      } else {
        f.gate = attention_weights(author, model);
      }
      break;
    case Mode::moe:
      f.gate_input = summed_word_vectors(doc.tokens, *model.words);
      f.gate = softmax(gate_scores(model.params.gate, f.gate_input));
      f.gate_trainable = true;
      break;
  }

  f.probs = Vector::Zero(static_cast<Eigen::Index>(model.num_classes()));
  for (std::size_t k = 0; k < f.bases.size(); ++k)
    f.probs += f.gate(static_cast<Eigen::Index>(k)) * f.bases[k].probs;
  return f;
}

Vector mixture_predict(const Document& doc, std::string_view author,
                       const SocialAttentionModel& model) {
  return mixture_forward(doc, author, model).probs;
}

Label predict_label(const Document& doc, std::string_view author,
                    const SocialAttentionModel& model) {
  const Vector p = mixture_predict(doc, author, model);
  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i < p.size(); ++i)
    if (p(i) > p(best)) best = i;
  return model.classes[static_cast<std::size_t>(best)];
}

Vector concat_forward(const Document& doc, std::string_view author,
                      const SocialAttentionModel& model) {
  if (model.mode != Mode::concat) throw std::invalid_argument("concat_forward on a non-concat model");
  return mixture_forward(doc, author, model).probs;
}

}  // namespace socatt
