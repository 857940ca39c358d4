#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <Eigen/Core>

namespace socatt {

/// Named fixed-dimension vectors, kept in insertion order. Serves both word
/// vectors and author (node) vectors.
class EmbeddingTable {
 public:
  using ConstRow = Eigen::Map<const Eigen::VectorXd>;
  using Row = Eigen::Map<Eigen::VectorXd>;

  explicit EmbeddingTable(std::size_t dimension = 1);

  std::size_t dimension() const { return dimension_; }
  std::size_t size() const { return names_.size(); }
  bool empty() const { return names_.empty(); }

  /// Inserts or overwrites. Returns true when `name` was already present.
  bool set(std::string_view name, std::span<const double> values);

  bool contains(std::string_view name) const { return index_of(name).has_value(); }
  std::optional<std::size_t> index_of(std::string_view name) const;
  const std::vector<std::string>& names() const { return names_; }

  ConstRow row(std::size_t index) const;
  Row row(std::size_t index);
  /// Empty optional for unknown names.
  std::optional<ConstRow> find(std::string_view name) const;

  friend bool operator==(const EmbeddingTable&, const EmbeddingTable&) = default;

 private:
  struct Hash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const { return std::hash<std::string_view>{}(s); }
  };

  std::size_t dimension_;
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::size_t, Hash, std::equal_to<>> index_;
  std::vector<double> data_;
};

using WordEmbeddingTable = EmbeddingTable;
using NodeEmbeddingTable = EmbeddingTable;

/// word2vec text format: a "V D" header, then one "name v1 ... vD" row per
/// entry. A repeated name overwrites the earlier row and logs a warning.
EmbeddingTable parse_embeddings(std::istream& in);
EmbeddingTable load_embeddings(const std::filesystem::path& path);
inline EmbeddingTable load_word_embeddings(const std::filesystem::path& path) {
  return load_embeddings(path);
}

void write_embeddings(const EmbeddingTable& table, std::ostream& out, int significant_digits = 9);
void save_embeddings(const EmbeddingTable& table, const std::filesystem::path& path,
                     int significant_digits = 9);

}  // namespace socatt
