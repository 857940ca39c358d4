#include "socatt/basis_cnn.hpp"

#include <cmath>
#include <stdexcept>

namespace socatt {

Vector softmax(const Eigen::Ref<const Vector>& scores) {
  Vector out = (scores.array() - scores.maxCoeff()).exp();
  out /= out.sum();
  return out;
}

BasisParams BasisParams::zeros(const BasisShape& s) {
  const auto m = static_cast<Eigen::Index>(s.filters);
  const auto d = static_cast<Eigen::Index>(s.word_dim);
  const auto t = static_cast<Eigen::Index>(s.classes);
  return {Matrix::Zero(m, d), Matrix::Zero(m, d), Vector::Zero(m), Matrix::Zero(t, m),
          Vector::Zero(t)};
}

BasisParams BasisParams::random(const BasisShape& s, Rng& rng) {
  BasisParams p = zeros(s);
  std::uniform_real_distribution<double> u(-0.05, 0.05);
  for (auto* m : {&p.left, &p.right, &p.head})
    for (double& v : flat(*m)) v = u(rng);
  return p;
}

BasisShape BasisParams::shape() const {
  return {static_cast<std::size_t>(left.rows()), static_cast<std::size_t>(left.cols()),
          static_cast<std::size_t>(head.rows())};
}

TensorList BasisParams::tensors() {
  return {flat(left), flat(right), flat(bias), flat(head), flat(head_bias)};
}

void BasisParams::set_zero() {
  left.setZero();
  right.setZero();
  bias.setZero();
  head.setZero();
  head_bias.setZero();
}

BasisParams& BasisParams::operator+=(const BasisParams& o) {
  left += o.left;
  right += o.right;
  bias += o.bias;
  head += o.head;
  head_bias += o.head_bias;
  return *this;
}

SentenceInput embed_tokens(std::span<const std::string> tokens, const WordEmbeddingTable& words) {
  std::vector<std::size_t> rows;
  rows.reserve(tokens.size());
  for (const auto& t : tokens)
    if (auto i = words.index_of(t)) rows.push_back(*i);
  const auto n = static_cast<Eigen::Index>(std::max<std::size_t>(rows.size(), 2));
  SentenceInput x = SentenceInput::Zero(n, static_cast<Eigen::Index>(words.dimension()));
  for (std::size_t r = 0; r < rows.size(); ++r)
    x.row(static_cast<Eigen::Index>(r)) = words.row(rows[r]).transpose();
  return x;
}

Matrix conv_forward(const SentenceInput& x, const BasisParams& p) {
  if (x.rows() < 2) throw std::invalid_argument("bigram convolution needs at least 2 tokens");
  if (x.cols() != p.left.cols()) throw std::invalid_argument("word dimension mismatch");
  const auto n = x.rows();
  Matrix pre = x.topRows(n - 1) * p.left.transpose() + x.bottomRows(n - 1) * p.right.transpose();
  pre.rowwise() += p.bias.transpose();
  return pre.array().tanh().matrix();
}

Vector max_pool(const Matrix& features, std::vector<Eigen::Index>* argmax) {
  if (features.rows() == 0) throw std::invalid_argument("max pooling over zero rows");
  Vector out = features.row(0).transpose();
  if (argmax) argmax->assign(static_cast<std::size_t>(features.cols()), 0);
  for (Eigen::Index r = 1; r < features.rows(); ++r)
    for (Eigen::Index j = 0; j < features.cols(); ++j)
      if (features(r, j) > out(j)) {
        out(j) = features(r, j);
        if (argmax) (*argmax)[static_cast<std::size_t>(j)] = r;
      }
  return out;
}

Vector class_logits(const Vector& pooled, const BasisParams& p) {
  return p.head * pooled + p.head_bias;
}

Vector class_probs(const Vector& pooled, const BasisParams& p) {
  return softmax(class_logits(pooled, p));
}

BasisCache basis_forward(const SentenceInput& x, const BasisParams& p) {
  BasisCache c;
  c.input = x;
  c.features = conv_forward(x, p);
  c.pooled = max_pool(c.features, &c.argmax);
  c.probs = class_probs(c.pooled, p);
  return c;
}

Vector softmax_backward(const Vector& probs, const Vector& grad_probs) {
  const double inner = probs.dot(grad_probs);
  return (probs.array() * (grad_probs.array() - inner)).matrix();
}

void conv_backward(const BasisCache& cache, const BasisParams& p, const Vector& grad_pooled,
                   BasisParams& grads) {
  (void)p;
  for (Eigen::Index j = 0; j < grad_pooled.size(); ++j) {
    const Eigen::Index i = cache.argmax[static_cast<std::size_t>(j)];
    const double c = cache.features(i, j);
    const double g = grad_pooled(j) * (1.0 - c * c);
    if (g == 0.0) continue;
    grads.left.row(j) += g * cache.input.row(i);
    grads.right.row(j) += g * cache.input.row(i + 1);
    grads.bias(j) += g;
  }
}

void basis_backward(const BasisCache& cache, const BasisParams& p, const Vector& grad_probs,
                    BasisParams& grads) {
  Vector grad_logits = softmax_backward(cache.probs, grad_probs);
  grads.head.noalias() += grad_logits * cache.pooled.transpose();
  grads.head_bias += grad_logits;
  Vector grad_pooled = p.head.transpose() * grad_logits;
  conv_backward(cache, p, grad_pooled, grads);
}

}  // namespace socatt
