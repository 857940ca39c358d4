#include "socatt/embeddings.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>

#include "socatt/error.hpp"
#include "socatt/log.hpp"

namespace socatt {

EmbeddingTable::EmbeddingTable(std::size_t dimension) : dimension_(dimension) {
  if (dimension == 0) throw std::invalid_argument("embedding dimension must be positive");
}

bool EmbeddingTable::set(std::string_view name, std::span<const double> values) {
  if (values.size() != dimension_)
    throw std::invalid_argument(fmt::format("vector for '{}' has length {}, expected {}", name,
                                            values.size(), dimension_));
  if (auto it = index_.find(name); it != index_.end()) {
    std::copy(values.begin(), values.end(), data_.begin() + it->second * dimension_);
    return true;
  }
  index_.emplace(std::string(name), names_.size());
  names_.emplace_back(name);
  data_.insert(data_.end(), values.begin(), values.end());
  return false;
}

std::optional<std::size_t> EmbeddingTable::index_of(std::string_view name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

EmbeddingTable::ConstRow EmbeddingTable::row(std::size_t index) const {
  return ConstRow(data_.data() + index * dimension_, static_cast<Eigen::Index>(dimension_));
}

EmbeddingTable::Row EmbeddingTable::row(std::size_t index) {
  return Row(data_.data() + index * dimension_, static_cast<Eigen::Index>(dimension_));
}

std::optional<EmbeddingTable::ConstRow> EmbeddingTable::find(std::string_view name) const {
  auto i = index_of(name);
  if (!i) return std::nullopt;
  return row(*i);
}

EmbeddingTable parse_embeddings(std::istream& in) {
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line)) throw FormatError("missing \"V D\" header", 1);
  std::istringstream header(line);
  long long rows = -1, dim = -1;
  std::string extra;
  if (!(header >> rows >> dim) || (header >> extra) || rows < 0 || dim <= 0)
    throw FormatError("malformed header, expected \"V D\"", 1);

  EmbeddingTable table(static_cast<std::size_t>(dim));
  std::vector<double> values(static_cast<std::size_t>(dim));
  long long seen = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    std::istringstream row(line);
    std::string name;
    row >> name;
    std::size_t n = 0;
    std::string field;
    while (row >> field) {
      if (n == values.size())
        throw FormatError(fmt::format("row has more than {} values", dim), line_no);
      double v = 0;
      auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
      if (ec != std::errc() || ptr != field.data() + field.size())
        throw FormatError(fmt::format("bad number '{}'", field), line_no);
      values[n++] = v;
    }
    if (n != values.size())
      throw FormatError(fmt::format("row has {} values, expected {}", n, dim), line_no);
    if (table.set(name, values))
      log_warning(fmt::format("duplicate embedding for '{}' at line {}; keeping the last", name,
                              line_no));
    ++seen;
  }
  if (seen != rows)
    throw FormatError(fmt::format("header declares {} rows but file has {}", rows, seen));
  return table;
}

EmbeddingTable load_embeddings(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(fmt::format("cannot open '{}'", path.string()));
  return parse_embeddings(in);
}

void write_embeddings(const EmbeddingTable& table, std::ostream& out, int significant_digits) {
  out << table.size() << ' ' << table.dimension() << '\n';
  for (std::size_t i = 0; i < table.size(); ++i) {
    out << table.names()[i];
    for (double v : table.row(i)) out << ' ' << fmt::format("{:.{}g}", v, significant_digits);
    out << '\n';
  }
}

void save_embeddings(const EmbeddingTable& table, const std::filesystem::path& path,
                     int significant_digits) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error(fmt::format("cannot write '{}'", path.string()));
  write_embeddings(table, out, significant_digits);
}

}  // namespace socatt
