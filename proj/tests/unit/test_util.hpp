#pragma once

#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "socatt/corpus.hpp"
#include "socatt/embeddings.hpp"
#include "socatt/tensor.hpp"

namespace testutil {

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir() {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("socatt_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }
  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

inline void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream(p) << text;
}

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

/// Word table w0..w{n-1} with N(0,1) entries.
inline socatt::WordEmbeddingTable random_words(std::size_t n, std::size_t dim, std::mt19937_64& rng) {
  socatt::WordEmbeddingTable t(dim);
  std::normal_distribution<double> normal(0, 1);
  std::vector<double> v(dim);
  for (std::size_t i = 0; i < n; ++i) {
    for (double& x : v) x = normal(rng);
    t.set("w" + std::to_string(i), v);
  }
  return t;
}

/// Central-difference check of an analytic gradient over every entry of
/// `params`. Returns the worst error, measured relative to
/// max(|analytic|, |numeric|, floor).
inline double max_gradient_error(const socatt::TensorList& params, const socatt::TensorList& analytic,
                                 const std::function<double()>& loss, double h = 1e-6,
                                 double floor = 1e-3) {
  double worst = 0;
  for (std::size_t t = 0; t < params.size(); ++t)
    for (std::size_t i = 0; i < params[t].size(); ++i) {
      double& x = params[t][i];
      const double saved = x;
      x = saved + h;
      const double up = loss();
      x = saved - h;
      const double down = loss();
      x = saved;
      const double numeric = (up - down) / (2 * h);
      const double a = analytic[t][i];
      const double scale = std::max({std::fabs(a), std::fabs(numeric), floor});
      worst = std::max(worst, std::fabs(a - numeric) / scale);
    }
  return worst;
}

}  // namespace testutil
