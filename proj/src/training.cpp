#include "socatt/training.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include <fmt/format.h>

#include "socatt/evaluation.hpp"

namespace socatt {
namespace {

constexpr double kMinProb = 1e-300;

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

std::vector<std::size_t> epoch_order(std::size_t n, std::uint64_t seed, std::size_t epoch) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  Rng rng = make_rng(seed, "batches", epoch);
  std::shuffle(order.begin(), order.end(), rng);
  return order;
}

// One pass over `corpus` in shuffled mini-batches. `accumulate(doc, scale)`
// adds the scaled per-document gradient into the buffer behind `grads` and
// returns the loss; `zero()` clears that buffer.
template <typename Accumulate, typename Zero>
double run_epoch(const LabeledCorpus& corpus, const TrainConfig& cfg, std::size_t epoch,
                 const TensorList& params, const TensorList& grads, AdamState& state,
                 Accumulate&& accumulate, Zero&& zero) {
  const auto order = epoch_order(corpus.size(), cfg.seed, epoch);
  double total = 0;
  for (std::size_t start = 0; start < order.size(); start += cfg.batch_size) {
    const std::size_t end = std::min(order.size(), start + cfg.batch_size);
    const double scale = 1.0 / static_cast<double>(end - start);
    zero();
    for (std::size_t i = start; i < end; ++i)
      total += accumulate(corpus.documents()[order[i]], scale);
    adam_step(params, grads, state, cfg.adam);
  }
  return corpus.empty() ? 0.0 : total / static_cast<double>(corpus.size());
}

}  // namespace

AdamState AdamState::zeros_like(const TensorList& params) {
  AdamState s;
  for (const auto& t : params) {
    s.first.emplace_back(t.size(), 0.0);
    s.second.emplace_back(t.size(), 0.0);
  }
  return s;
}

void adam_step(const TensorList& params, const TensorList& grads, AdamState& state,
               const AdamConfig& cfg) {
  if (params.size() != grads.size() || params.size() != state.first.size())
    throw std::invalid_argument("adam_step: tensor lists do not line up");
  ++state.step;
  const double t = static_cast<double>(state.step);
  const double c1 = 1.0 - std::pow(cfg.beta1, t);
  const double c2 = 1.0 - std::pow(cfg.beta2, t);
  for (std::size_t i = 0; i < params.size(); ++i) {
    auto p = params[i];
    auto g = grads[i];
    auto& m = state.first[i];
    auto& v = state.second[i];
    if (p.size() != g.size() || p.size() != m.size())
      throw std::invalid_argument("adam_step: tensor size mismatch");
    for (std::size_t j = 0; j < p.size(); ++j) {
      m[j] = cfg.beta1 * m[j] + (1.0 - cfg.beta1) * g[j];
      v[j] = cfg.beta2 * v[j] + (1.0 - cfg.beta2) * g[j] * g[j];
      p[j] -= cfg.learning_rate * (m[j] / c1) / (std::sqrt(v[j] / c2) + cfg.epsilon);
    }
  }
}

void TrainConfig::validate() const {
  std::vector<std::string> bad;
  if (max_epochs < 1) bad.emplace_back("max-epochs must be >= 1");
  if (!(adam.learning_rate > 0)) bad.emplace_back("learning rate must be positive");
  if (!(adam.beta1 > 0 && adam.beta1 < 1)) bad.emplace_back("beta1 must be in (0,1)");
  if (!(adam.beta2 > 0 && adam.beta2 < 1)) bad.emplace_back("beta2 must be in (0,1)");
  if (!(adam.epsilon > 0)) bad.emplace_back("epsilon must be positive");
  if (batch_size < 1) bad.emplace_back("batch size must be >= 1");
  if (!bad.empty()) throw std::invalid_argument(fmt::format("{}", fmt::join(bad, "; ")));
}

void PretrainConfig::validate() const {
  if (!(sigma > 0)) throw std::invalid_argument("sigma must be positive");
}

void InstanceWeights::set(std::string_view author, std::vector<double> per_basis) {
  if (per_basis.size() != bases_) throw std::invalid_argument("instance weight count != K");
  for (double a : per_basis)
    if (!(a > 0 && a < 1)) throw std::invalid_argument("instance weights must lie in (0,1)");
  values_.insert_or_assign(std::string(author), std::move(per_basis));
}

double InstanceWeights::operator()(std::string_view author, std::size_t k) const {
  auto it = values_.find(author);
  return it == values_.end() ? fallback_ : it->second.at(k);
}

InstanceWeights InstanceWeights::constant(std::size_t bases, double alpha) {
  InstanceWeights w(bases);
  w.fallback_ = alpha;
  return w;
}

InstanceWeighting instance_weights(const NodeEmbeddingTable& authors, std::size_t bases,
                                   double sigma, Rng& rng) {
  if (!(sigma > 0)) throw std::invalid_argument("sigma must be positive");
  const auto dim = static_cast<Eigen::Index>(authors.dimension());
  InstanceWeighting out{InstanceWeights(bases), Matrix(static_cast<Eigen::Index>(bases), dim)};
  std::normal_distribution<double> normal(0.0, sigma);
  for (double& g : flat(out.gammas)) g = normal(rng);

  const double lo = DBL_MIN, hi = std::nextafter(1.0, 0.0);
  for (std::size_t i = 0; i < authors.size(); ++i) {
    std::vector<double> alpha(bases);
    for (std::size_t k = 0; k < bases; ++k)
      alpha[k] = std::clamp(
          sigmoid(out.gammas.row(static_cast<Eigen::Index>(k)).dot(authors.row(i))), lo, hi);
    out.weights.set(authors.names()[i], std::move(alpha));
  }
  return out;
}

double instance_loss(const Document& doc, const SocialAttentionModel& model) {
  const Vector p = mixture_predict(doc, model);
  return -std::log(std::max(p(static_cast<Eigen::Index>(model.class_index(doc.label))), kMinProb));
}

double accumulate_gradient(const Document& doc, const SocialAttentionModel& model,
                           ModelParams& grads, double scale) {
  const auto f = mixture_forward(doc, doc.author, model);
  const auto y = static_cast<Eigen::Index>(model.class_index(doc.label));
  const double py = std::max(f.probs(y), kMinProb);
  const auto t = static_cast<Eigen::Index>(model.num_classes());

  if (model.mode == Mode::concat) {
    Vector grad_probs = Vector::Zero(t);
    grad_probs(y) = -scale / py;
    const Vector grad_logits = softmax_backward(f.probs, grad_probs);
    const auto& basis = model.params.bases[0];
    auto& gb = grads.bases[0];
    gb.head.noalias() += grad_logits * f.bases[0].pooled.transpose();
    gb.head_bias += grad_logits;
    grads.author_head.noalias() += grad_logits * f.gate_input.transpose();
    const Vector grad_pooled = basis.head.transpose() * grad_logits;
    conv_backward(f.bases[0], basis, grad_pooled, gb);
    return -std::log(py);
  }

  for (std::size_t k = 0; k < f.bases.size(); ++k) {
    const double pik = f.gate(static_cast<Eigen::Index>(k));
    Vector grad_probs = Vector::Zero(t);
    grad_probs(y) = -scale * pik / py;
    basis_backward(f.bases[k], model.params.bases[k], grad_probs, grads.bases[k]);
  }

  if (f.gate_trainable) {
    // dL/dz_k = π_k (1 − p_k(y*) / p(y*))
    for (std::size_t k = 0; k < f.bases.size(); ++k) {
      const auto kk = static_cast<Eigen::Index>(k);
      const double dz = scale * f.gate(kk) * (1.0 - f.bases[k].probs(y) / py);
      grads.gate.weight.row(kk) += dz * f.gate_input.transpose();
      grads.gate.bias(kk) += dz;
    }
  }
  return -std::log(py);
}

double weighted_basis_loss(const Document& doc, const BasisParams& basis,
                           const SocialAttentionModel& model, double alpha) {
  const auto cache = basis_forward(doc, *model.words, basis);
  const auto y = static_cast<Eigen::Index>(model.class_index(doc.label));
  return -alpha * std::log(std::max(cache.probs(y), kMinProb));
}

double accumulate_weighted_basis_gradient(const Document& doc, const BasisParams& basis,
                                          const SocialAttentionModel& model, double alpha,
                                          BasisParams& grads, double scale) {
  const auto cache = basis_forward(doc, *model.words, basis);
  const auto y = static_cast<Eigen::Index>(model.class_index(doc.label));
  const double py = std::max(cache.probs(y), kMinProb);
  Vector grad_probs = Vector::Zero(cache.probs.size());
  grad_probs(y) = -scale * alpha / py;
  basis_backward(cache, basis, grad_probs, grads);
  return -alpha * std::log(py);
}

void pretrain_basis(std::size_t k, const LabeledCorpus& corpus, const InstanceWeights& weights,
                    SocialAttentionModel& model, const PretrainConfig& pcfg,
                    const TrainConfig& tcfg) {
  pcfg.validate();
  tcfg.validate();
  auto& basis = model.params.bases.at(k);
  BasisParams grads = BasisParams::zeros(basis.shape());
  const TensorList params = basis.tensors();
  const TensorList grad_list = grads.tensors();
  AdamState state = AdamState::zeros_like(params);
  for (std::size_t epoch = 0; epoch < pcfg.epochs; ++epoch) {
    run_epoch(
        corpus, tcfg, epoch, params, grad_list, state,
        [&](const Document& doc, double scale) {
          return accumulate_weighted_basis_gradient(doc, basis, model, weights(doc.author, k),
                                                    grads, scale);
        },
        [&] { grads.set_zero(); });
  }
}

InstanceWeighting pretrain(SocialAttentionModel& model, const LabeledCorpus& corpus,
                           const PretrainConfig& pcfg, const TrainConfig& tcfg) {
  if (model.mode != Mode::social && model.mode != Mode::random)
    throw std::invalid_argument("instance-weighted pretraining needs social or random mode");
  pcfg.validate();
  Rng rng = make_rng(pcfg.seed, "gamma");
  auto weighting = instance_weights(*model.authors, model.num_bases(), pcfg.sigma, rng);
  for (std::size_t k = 0; k < model.num_bases(); ++k)
    pretrain_basis(k, corpus, weighting.weights, model, pcfg, tcfg);
  model.params.gate.weight = weighting.gammas;
  model.params.gate.bias.setZero();
  return weighting;
}

double corpus_loss(const LabeledCorpus& corpus, const SocialAttentionModel& model) {
  if (corpus.empty()) return 0.0;
  double total = 0;
  for (const auto& d : corpus) total += instance_loss(d, model);
  return total / static_cast<double>(corpus.size());
}

std::vector<Label> predict_all(const LabeledCorpus& corpus, const SocialAttentionModel& model) {
  std::vector<Label> out;
  out.reserve(corpus.size());
  for (const auto& d : corpus) out.push_back(predict_label(d, model));
  return out;
}

TrainResult joint_train(SocialAttentionModel model, const LabeledCorpus& train,
                        const LabeledCorpus& dev, const TrainConfig& cfg) {
  cfg.validate();
  if (train.empty()) throw std::invalid_argument("joint_train: empty training corpus");

  std::vector<Label> dev_gold;
  for (const auto& d : dev) dev_gold.push_back(d.label);

  ModelParams grads = model.params.zeros_like();
  const TensorList params = model.params.tensors();
  const TensorList grad_list = grads.tensors();
  AdamState state = AdamState::zeros_like(params);

  TrainResult result{model, {}, 0};
  double best_f1 = -1.0;
  for (std::size_t epoch = 0; epoch < cfg.max_epochs; ++epoch) {
    const double loss = run_epoch(
        train, cfg, epoch, params, grad_list, state,
        [&](const Document& doc, double scale) {
          return accumulate_gradient(doc, model, grads, scale);
        },
        [&] { grads.set_zero(); });
    const double dev_f1 = dev.empty() ? 0.0 : average_f1(dev_gold, predict_all(dev, model)).average_f1;
    result.history.push_back({epoch + 1, loss, dev_f1});
    if (dev.empty() || dev_f1 > best_f1) {
      best_f1 = dev_f1;
      result.best_epoch = epoch + 1;
      result.model.params = model.params;
    }
  }
  return result;
}

void write_history(const std::vector<EpochRecord>& history, std::ostream& out) {
  out << "epoch\ttrain_loss\tdev_f1\n";
  for (const auto& r : history)
    out << fmt::format("{}\t{:.9g}\t{:.9g}\n", r.epoch, r.train_loss, r.dev_f1);
}

}  // namespace socatt
