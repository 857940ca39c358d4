#pragma once

#include <span>
#include <vector>

#include <Eigen/Core>

namespace socatt {

using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;

/// Flat views of every tensor in a parameter set, in a fixed order. Parameter
/// sets and their gradients expose identically shaped lists, which is what
/// the optimizer and the finite-difference checks walk over.
using TensorList = std::vector<std::span<double>>;

template <typename Derived>
std::span<double> flat(Eigen::PlainObjectBase<Derived>& t) {
  return {t.data(), static_cast<std::size_t>(t.size())};
}

/// Softmax with the max subtracted first.
Vector softmax(const Eigen::Ref<const Vector>& scores);

}  // namespace socatt
