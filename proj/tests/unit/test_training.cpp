#include <doctest.h>

#include <cmath>

#include "model_fixture.hpp"
#include "socatt/evaluation.hpp"
#include "socatt/synth.hpp"
#include "socatt/training.hpp"

using namespace socatt;

namespace {

LabeledCorpus random_corpus(std::size_t n, Rng& rng, std::size_t authors = 6) {
  LabeledCorpus c;
  for (std::size_t i = 0; i < n; ++i) {
    auto d = testutil::random_doc(rng, 12, authors, 3 + i % 4);
    d.id = "d" + std::to_string(i);
    c.add(d);
  }
  return c;
}

double norm_of(const TensorList& a) {
  double s = 0;
  for (auto t : a)
    for (double v : t) s += v * v;
  return std::sqrt(s);
}

double distance(BasisParams a, BasisParams b) {
  double s = 0;
  auto ta = a.tensors(), tb = b.tensors();
  for (std::size_t i = 0; i < ta.size(); ++i)
    for (std::size_t j = 0; j < ta[i].size(); ++j) s += (ta[i][j] - tb[i][j]) * (ta[i][j] - tb[i][j]);
  return std::sqrt(s);
}

}  // namespace

TEST_CASE("adam: zero gradient leaves fresh parameters unchanged but counts the step") {
  std::vector<double> p = {1.0, -2.0, 3.0}, g = {0.0, 0.0, 0.0};
  TensorList params = {p}, grads = {g};
  auto state = AdamState::zeros_like(params);
  adam_step(params, grads, state, AdamConfig{});
  CHECK(p == std::vector<double>{1.0, -2.0, 3.0});
  CHECK(state.step == 1);
}

TEST_CASE("adam: the first step moves each coordinate by about the learning rate") {
  // At t = 1, m̂ = g and v̂ = g², so the step is lr · g / (|g| + ε).
  std::vector<double> p = {0.0, 0.0, 0.0, 0.0}, g = {0.5, -3.0, 1e-3, 42.0};
  TensorList params = {p}, grads = {g};
  auto state = AdamState::zeros_like(params);
  AdamConfig cfg;
  adam_step(params, grads, state, cfg);
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double expected = -cfg.learning_rate * g[i] / (std::fabs(g[i]) + cfg.epsilon);
    CHECK(p[i] == doctest::Approx(expected).epsilon(1e-12));
    CHECK(std::fabs(std::fabs(p[i]) - cfg.learning_rate) < 1e-7);
  }
}

TEST_CASE("adam is deterministic") {
  auto run = [] {
    std::vector<double> p = {0.3, -0.1};
    TensorList params = {p};
    auto state = AdamState::zeros_like(params);
    Rng rng(5);
    std::normal_distribution<double> n(0, 1);
    for (int i = 0; i < 50; ++i) {
      std::vector<double> g = {n(rng), n(rng)};
      TensorList grads = {g};
      adam_step(params, grads, state, AdamConfig{});
    }
    return p;
  };
  CHECK(run() == run());
}

TEST_CASE("instance weights are sigmoid(γ_k · v_a)") {
  NodeEmbeddingTable probe(4);
  probe.set("zero", std::vector<double>(4, 0.0));
  Rng r0(3);
  const Matrix gammas = instance_weights(probe, 2, 1.0, r0).gammas;

  // Place an author so that γ_0 · v = 2 exactly (up to rounding).
  Vector v = 2.0 * gammas.row(0).transpose() / gammas.row(0).squaredNorm();
  NodeEmbeddingTable table(4);
  table.set("zero", std::vector<double>(4, 0.0));
  table.set("two", std::vector<double>(v.data(), v.data() + 4));
  table.set("twin", std::vector<double>(v.data(), v.data() + 4));
  Rng r1(3);
  auto w = instance_weights(table, 2, 1.0, r1);
  CHECK(w.gammas == gammas);
  CHECK(w.weights("zero", 0) == 0.5);
  CHECK(w.weights("zero", 1) == 0.5);
  CHECK(w.weights("two", 0) == doctest::Approx(0.8808).epsilon(1e-4));
  for (std::size_t k = 0; k < 2; ++k) CHECK(w.weights("two", k) == w.weights("twin", k));
  CHECK(w.weights("unknown", 1) == 0.5);
  for (const auto& [author, alphas] : w.weights.values())
    for (double a : alphas) {
      CHECK(a > 0);
      CHECK(a < 1);
    }
}

TEST_CASE("instance loss closed forms") {
  Rng rng(1);
  auto model = testutil::small_model(Mode::single, 1, rng);
  model.classes = {Label::positive, Label::negative};
  model.params.bases[0] = BasisParams::zeros({4, 5, 2});
  Document doc{"d", "a0", Label::positive, {"w1", "w2"}};
  CHECK(instance_loss(doc, model) == doctest::Approx(0.69315).epsilon(1e-5));
  model.params.bases[0].head_bias << 1000.0, 0.0;
  CHECK(instance_loss(doc, model) == 0.0);
}

TEST_CASE("joint loss gradient matches central differences for every mode") {
  Rng rng(2);
  for (Mode mode : {Mode::social, Mode::random, Mode::moe, Mode::concat, Mode::single}) {
    CAPTURE(to_string(mode));
    for (int trial = 0; trial < 5; ++trial) {
      auto model = testutil::small_model(mode, 3, rng);
      auto doc = testutil::random_doc(rng);
      ModelParams grads = model.params.zeros_like();
      accumulate_gradient(doc, model, grads);
      double err = testutil::max_gradient_error(model.params.tensors(), grads.tensors(),
                                                [&] { return instance_loss(doc, model); });
      CHECK(err < 1e-4);
    }
  }
}

TEST_CASE("unknown authors give no gradient to the attention gate") {
  Rng rng(3);
  auto model = testutil::small_model(Mode::social, 3, rng);
  Document doc{"d", "ghost", Label::negative, {"w0", "w3", "w5"}};
  ModelParams grads = model.params.zeros_like();
  accumulate_gradient(doc, model, grads);
  CHECK(grads.gate.weight.isZero(0));
  CHECK(grads.gate.bias.isZero(0));
}

TEST_CASE("weighted basis gradient is α times the unweighted one") {
  Rng rng(4);
  auto model = testutil::small_model(Mode::social, 2, rng);
  for (double alpha : {0.1, 0.37, 0.9}) {
    auto doc = testutil::random_doc(rng);
    auto& basis = model.params.bases[1];
    BasisParams unweighted = BasisParams::zeros(basis.shape());
    accumulate_weighted_basis_gradient(doc, basis, model, 1.0, unweighted);
    // Finite differences of the weighted loss against α × analytic unweighted gradient.
    BasisParams scaled = unweighted;
    for (auto t : scaled.tensors())
      for (double& v : t) v *= alpha;
    double err = testutil::max_gradient_error(
        basis.tensors(), scaled.tensors(),
        [&] { return weighted_basis_loss(doc, basis, model, alpha); }, 1e-6, 1e-3 * alpha);
    CHECK(err < 1e-4);
  }
}

TEST_CASE("pretraining with α ≡ 1 follows the plain CNN's trajectory") {
  Rng rng(5);
  auto corpus = random_corpus(40, rng);
  auto model = testutil::small_model(Mode::single, 1, rng, 4, 5, 6, 0.1);
  TrainConfig tcfg;
  tcfg.max_epochs = 2;
  tcfg.batch_size = 8;
  tcfg.seed = 99;
  PretrainConfig pcfg;
  pcfg.epochs = 2;

  auto pre = model;
  pretrain_basis(0, corpus, InstanceWeights::constant(1, 1.0), pre, pcfg, tcfg);
  // No dev set: joint_train keeps the last epoch.
  auto joint = joint_train(model, corpus, LabeledCorpus{}, tcfg);
  CHECK(pre.params.bases[0] == joint.model.params.bases[0]);
}

TEST_CASE("pretraining touches only basis k") {
  Rng rng(6);
  auto corpus = random_corpus(30, rng);
  auto model = testutil::small_model(Mode::social, 3, rng, 4, 5, 6, 0.1);
  auto before = model;
  TrainConfig tcfg;
  tcfg.batch_size = 10;
  pretrain_basis(1, corpus, InstanceWeights::constant(3, 0.7), model, PretrainConfig{}, tcfg);
  CHECK(model.params.bases[0] == before.params.bases[0]);
  CHECK(model.params.bases[2] == before.params.bases[2]);
  CHECK(model.params.gate == before.params.gate);
  CHECK_FALSE(model.params.bases[1] == before.params.bases[1]);
}

TEST_CASE("vanishing instance weights barely move the basis") {
  Rng rng(7);
  auto corpus = random_corpus(40, rng);
  auto model = testutil::small_model(Mode::social, 1, rng, 4, 5, 6, 0.1);
  TrainConfig tcfg;
  tcfg.batch_size = 8;

  auto tiny = model, full = model;
  pretrain_basis(0, corpus, InstanceWeights::constant(1, 1e-9), tiny, PretrainConfig{}, tcfg);
  pretrain_basis(0, corpus, InstanceWeights::constant(1, 1.0), full, PretrainConfig{}, tcfg);
  const double moved_tiny = distance(tiny.params.bases[0], model.params.bases[0]);
  const double moved_full = distance(full.params.bases[0], model.params.bases[0]);
  MESSAGE("update norm with alpha=1e-9: " << moved_tiny << ", with alpha=1: " << moved_full);
  CHECK(moved_tiny < 1e-2 * moved_full);
}

TEST_CASE("pretrain assembles the attention gate from γ") {
  Rng rng(8);
  auto corpus = random_corpus(30, rng);
  auto model = testutil::small_model(Mode::social, 3, rng, 4, 5, 6, 0.1);
  PretrainConfig pcfg;
  pcfg.seed = 4;
  auto weighting = pretrain(model, corpus, pcfg, TrainConfig{});
  CHECK(model.params.gate.weight == weighting.gammas);
  CHECK(model.params.gate.bias.isZero(0));

  auto single = testutil::small_model(Mode::single, 1, rng);
  CHECK_THROWS_AS(pretrain(single, corpus, pcfg, TrainConfig{}), std::invalid_argument);
}

TEST_CASE("joint_train keeps the best dev epoch and reports one row per epoch") {
  SynthConfig scfg;
  scfg.nodes_per_community = 20;
  scfg.seed = 3;
  auto data = generate(scfg);
  Rng rng(9);
  ModelSpec spec;
  spec.mode = Mode::single;
  spec.filters = 8;
  auto model = make_model(spec, std::make_shared<WordEmbeddingTable>(data.words), nullptr, rng);
  TrainConfig cfg;
  cfg.max_epochs = 6;
  cfg.adam.learning_rate = 0.01;
  auto result = joint_train(model, data.train, data.dev, cfg);
  REQUIRE(result.history.size() == 6);
  double best = -1;
  std::size_t best_epoch = 0;
  for (const auto& r : result.history)
    if (r.dev_f1 > best) best = r.dev_f1, best_epoch = r.epoch;
  CHECK(result.best_epoch == best_epoch);

  std::vector<Label> gold;
  for (const auto& d : data.dev) gold.push_back(d.label);
  // Re-evaluating the returned model reproduces the recorded best dev score.
  CHECK(average_f1(gold, predict_all(data.dev, result.model)).average_f1 == best);
}

TEST_CASE("joint_train rejects an empty corpus and bad configs") {
  Rng rng(10);
  auto model = testutil::small_model(Mode::single, 1, rng);
  CHECK_THROWS_AS(joint_train(model, LabeledCorpus{}, LabeledCorpus{}, TrainConfig{}),
                  std::invalid_argument);
  TrainConfig bad;
  bad.adam.beta1 = 1.0;
  bad.batch_size = 0;
  try {
    bad.validate();
    FAIL("expected invalid_argument");
  } catch (const std::invalid_argument& e) {
    std::string msg = e.what();
    CHECK(msg.find("beta1") != std::string::npos);
    CHECK(msg.find("batch") != std::string::npos);
  }
}
