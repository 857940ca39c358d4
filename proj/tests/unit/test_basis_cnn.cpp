#include <doctest.h>

#include <cmath>

#include "socatt/basis_cnn.hpp"
#include "test_util.hpp"

using namespace socatt;

namespace {

BasisParams random_params(const BasisShape& shape, Rng& rng, double scale) {
  BasisParams p = BasisParams::zeros(shape);
  std::normal_distribution<double> normal(0, scale);
  for (auto t : p.tensors())
    for (double& v : t) v = normal(rng);
  return p;
}

Matrix random_input(Eigen::Index n, Eigen::Index d, Rng& rng) {
  std::normal_distribution<double> normal(0, 1);
  Matrix x(n, d);
  for (double& v : flat(x)) v = normal(rng);
  return x;
}

}  // namespace

TEST_CASE("embed_tokens skips unknown words and pads to two rows") {
  Rng rng(1);
  auto words = testutil::random_words(5, 3, rng);
  auto x = embed_tokens(std::vector<std::string>{"w0", "w1", "w2"}, words);
  CHECK(x.rows() == 3);
  CHECK(x.row(1).transpose() == Vector(words.row(1)));

  auto oov = embed_tokens(std::vector<std::string>{"zz", "yy", "xx"}, words);
  CHECK(oov.rows() == 2);
  CHECK(oov.isZero(0));

  auto one = embed_tokens(std::vector<std::string>{"nope", "w4"}, words);
  CHECK(one.rows() == 2);
  CHECK(one.row(0).transpose() == Vector(words.row(4)));
  CHECK(one.row(1).isZero(0));

  CHECK(embed_tokens(std::vector<std::string>{}, words).rows() == 2);
}

TEST_CASE("conv_forward: closed forms and shapes") {
  BasisShape shape{4, 3, 3};
  BasisParams p = BasisParams::zeros(shape);
  Rng rng(2);
  Matrix x = random_input(5, 3, rng);
  CHECK(conv_forward(x, p).isZero(0));
  CHECK(conv_forward(x, p).rows() == 4);

  p.bias.setConstant(0.5);
  Matrix c = conv_forward(x, p);
  for (double v : flat(c)) CHECK(v == doctest::Approx(0.46212).epsilon(1e-5));

  CHECK(conv_forward(random_input(2, 3, rng), p).rows() == 1);
  CHECK_THROWS_AS(conv_forward(random_input(1, 3, rng), p), std::invalid_argument);
}

TEST_CASE("conv_forward matches the bigram formula row by row") {
  Rng rng(3);
  BasisShape shape{4, 5, 3};
  auto p = random_params(shape, rng, 0.4);
  Matrix x = random_input(6, 5, rng);
  Matrix c = conv_forward(x, p);
  for (Eigen::Index i = 0; i + 1 < x.rows(); ++i) {
    Vector expected = (p.left * x.row(i).transpose() + p.right * x.row(i + 1).transpose() + p.bias)
                          .array().tanh().matrix();
    CHECK((c.row(i).transpose() - expected).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("max_pool") {
  Matrix one(1, 3);
  one << 1, -2, 3;
  CHECK(max_pool(one) == Vector(one.row(0).transpose()));

  Matrix two(2, 2);
  two << 1, -1, 0, 2;
  std::vector<Eigen::Index> arg;
  Vector s = max_pool(two, &arg);
  CHECK(s(0) == 1);
  CHECK(s(1) == 2);
  CHECK(arg == std::vector<Eigen::Index>{0, 1});

  Matrix same = Matrix::Constant(3, 2, 0.25);
  CHECK(max_pool(same, &arg) == Vector::Constant(2, 0.25));
  CHECK(arg == std::vector<Eigen::Index>{0, 0});

  CHECK_THROWS_AS(max_pool(Matrix(0, 2)), std::invalid_argument);
}

TEST_CASE("class_probs") {
  BasisParams p = BasisParams::zeros({3, 2, 3});
  Vector s = Vector::Constant(3, 0.7);
  Vector u = class_probs(s, p);
  for (double v : u) CHECK(v == doctest::Approx(1.0 / 3));

  BasisParams two = BasisParams::zeros({1, 2, 2});
  two.head_bias << 1.0, 0.0;
  Vector q = class_probs(Vector::Zero(1), two);
  CHECK(q(0) == doctest::Approx(0.73106).epsilon(1e-5));
  CHECK(q(1) == doctest::Approx(0.26894).epsilon(1e-5));

  two.head_bias.array() += 123.0;
  Vector shifted = class_probs(Vector::Zero(1), two);
  CHECK(std::fabs(shifted(0) - q(0)) < 1e-15);
}

TEST_CASE("class probabilities sum to one and lie in (0,1)") {
  Rng rng(4);
  for (int trial = 0; trial < 50; ++trial) {
    auto p = random_params({6, 4, 3}, rng, 2.0);
    auto c = basis_forward(random_input(5, 4, rng), p);
    CHECK(std::fabs(c.probs.sum() - 1.0) < 1e-9);
    for (double v : c.probs) {
      CHECK(v > 0);
      CHECK(v < 1);
    }
  }
}

TEST_CASE("the classifier is sensitive to token order") {
  BasisParams p = BasisParams::zeros({1, 2, 2});
  p.left(0, 0) = 3.0;   // fires when feature 0 comes first
  p.right(0, 1) = 3.0;  // ...and feature 1 second
  p.bias(0) = -4.0;
  p.head(0, 0) = 5.0;
  Matrix forward(2, 2), backward(2, 2);
  forward << 1, 0, 0, 1;
  backward << 0, 1, 1, 0;
  auto a = basis_forward(forward, p).probs;
  auto b = basis_forward(backward, p).probs;
  CHECK(std::fabs(a(0) - b(0)) > 0.1);
}

TEST_CASE("basis_backward matches central differences") {
  Rng rng(5);
  const BasisShape shape{4, 5, 3};
  for (int trial = 0; trial < 20; ++trial) {
    auto p = random_params(shape, rng, 0.5);
    Matrix x = random_input(4, 5, rng);
    Vector upstream(3);
    for (double& v : upstream) v = std::normal_distribution<double>(0, 1)(rng);

    auto loss = [&] { return upstream.dot(basis_forward(x, p).probs); };
    BasisParams grads = BasisParams::zeros(shape);
    basis_backward(basis_forward(x, p), p, upstream, grads);
    CHECK(testutil::max_gradient_error(p.tensors(), grads.tensors(), loss) < 1e-4);
  }
}

TEST_CASE("zero upstream gradient gives zero parameter gradients") {
  Rng rng(6);
  auto p = random_params({4, 5, 3}, rng, 0.5);
  BasisParams grads = BasisParams::zeros(p.shape());
  basis_backward(basis_forward(random_input(4, 5, rng), p), p, Vector::Zero(3), grads);
  for (auto t : grads.tensors())
    for (double v : t) CHECK(v == 0.0);
}

TEST_CASE("pooling ties send the gradient to the lowest row only") {
  BasisParams p = BasisParams::zeros({1, 2, 2});
  p.head(0, 0) = 1.0;
  Matrix x(3, 2);
  x << 0.3, 0.1, 0.3, 0.1, 0.3, 0.1;  // identical bigrams -> identical feature rows
  p.left(0, 0) = 1.0;
  auto cache = basis_forward(x, p);
  CHECK(cache.argmax[0] == 0);
  BasisParams grads = BasisParams::zeros(p.shape());
  Vector up(2);
  up << 1.0, 0.0;
  basis_backward(cache, p, up, grads);
  // The two tied rows must not both receive gradient: the result equals the
  // single-bigram input's gradient exactly.
  BasisParams single = BasisParams::zeros(p.shape());
  basis_backward(basis_forward(Matrix(x.topRows(2)), p), p, up, single);
  CHECK(grads.bias(0) != 0.0);
  CHECK(grads == single);
}
