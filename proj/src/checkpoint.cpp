#include "socatt/checkpoint.hpp"

#include <fstream>
#include <stdexcept>

#include <fmt/format.h>

namespace socatt {
namespace {

using nlohmann::json;

template <typename Derived>
json tensor_json(const Eigen::PlainObjectBase<Derived>& t) {
  json out;
  if constexpr (Derived::ColsAtCompileTime == 1)
    out["shape"] = {t.rows()};
  else
    out["shape"] = {t.rows(), t.cols()};
  out["data"] = std::vector<double>(t.data(), t.data() + t.size());
  return out;
}

Matrix matrix_from(const json& j, const char* what) {
  const auto& shape = j.at("shape");
  if (shape.size() != 2) throw std::runtime_error(fmt::format("checkpoint: '{}' is not 2-d", what));
  const auto rows = shape[0].get<Eigen::Index>(), cols = shape[1].get<Eigen::Index>();
  const auto data = j.at("data").get<std::vector<double>>();
  if (static_cast<Eigen::Index>(data.size()) != rows * cols)
    throw std::runtime_error(fmt::format("checkpoint: '{}' data does not match its shape", what));
  Matrix m(rows, cols);
  std::copy(data.begin(), data.end(), m.data());
  return m;
}

Vector vector_from(const json& j, const char* what) {
  const auto& shape = j.at("shape");
  if (shape.size() != 1) throw std::runtime_error(fmt::format("checkpoint: '{}' is not 1-d", what));
  const auto data = j.at("data").get<std::vector<double>>();
  if (static_cast<Eigen::Index>(data.size()) != shape[0].get<Eigen::Index>())
    throw std::runtime_error(fmt::format("checkpoint: '{}' data does not match its shape", what));
  return Eigen::Map<const Vector>(data.data(), static_cast<Eigen::Index>(data.size()));
}

json table_json(const EmbeddingTable& t) {
  std::vector<double> data;
  data.reserve(t.size() * t.dimension());
  for (std::size_t i = 0; i < t.size(); ++i)
    for (double v : t.row(i)) data.push_back(v);
  return {{"dimension", t.dimension()}, {"names", t.names()}, {"data", data}};
}

std::shared_ptr<const EmbeddingTable> table_from(const json& j) {
  auto t = std::make_shared<EmbeddingTable>(j.at("dimension").get<std::size_t>());
  const auto names = j.at("names").get<std::vector<std::string>>();
  const auto data = j.at("data").get<std::vector<double>>();
  const std::size_t d = t->dimension();
  if (data.size() != names.size() * d)
    throw std::runtime_error("checkpoint: embedding table data does not match its shape");
  for (std::size_t i = 0; i < names.size(); ++i)
    t->set(names[i], std::span<const double>(data.data() + i * d, d));
  return t;
}

}  // namespace

json checkpoint_to_json(const SocialAttentionModel& model, const json& config) {
  json doc;
  doc["format"] = "socatt-checkpoint";
  doc["format_version"] = kCheckpointVersion;
  doc["config"] = config;
  doc["mode"] = std::string(to_string(model.mode));
  json classes = json::array();
  for (Label l : model.classes) classes.push_back(std::string(to_string(l)));
  doc["classes"] = classes;

  json bases = json::array();
  for (const auto& b : model.params.bases)
    bases.push_back({{"left", tensor_json(b.left)},
                     {"right", tensor_json(b.right)},
                     {"bias", tensor_json(b.bias)},
                     {"head", tensor_json(b.head)},
                     {"head_bias", tensor_json(b.head_bias)}});
  doc["bases"] = bases;
  doc["gate"] = {{"weight", tensor_json(model.params.gate.weight)},
                 {"bias", tensor_json(model.params.gate.bias)}};
  doc["author_head"] = tensor_json(model.params.author_head);
  doc["word_table"] = table_json(*model.words);
  doc["author_table"] = model.authors ? table_json(*model.authors) : json(nullptr);
  return doc;
}

Checkpoint checkpoint_from_json(const json& doc) {
  if (doc.value("format", "") != "socatt-checkpoint")
    throw std::runtime_error("not a socatt checkpoint");
  if (doc.at("format_version").get<int>() != kCheckpointVersion)
    throw std::runtime_error(fmt::format("unsupported checkpoint version {}",
                                         doc.at("format_version").get<int>()));
  Checkpoint ck;
  auto& m = ck.model;
  ck.config = doc.value("config", json::object());
  const auto mode = parse_mode(doc.at("mode").get<std::string>());
  if (!mode) throw std::runtime_error("checkpoint: unknown mode");
  m.mode = *mode;
  for (const auto& c : doc.at("classes")) {
    auto l = parse_label(c.get<std::string>());
    if (!l) throw std::runtime_error("checkpoint: unknown class label");
    m.classes.push_back(*l);
  }
  for (const auto& b : doc.at("bases"))
    m.params.bases.push_back({matrix_from(b.at("left"), "left"), matrix_from(b.at("right"), "right"),
                              vector_from(b.at("bias"), "bias"), matrix_from(b.at("head"), "head"),
                              vector_from(b.at("head_bias"), "head_bias")});
  if (m.params.bases.empty()) throw std::runtime_error("checkpoint: no basis models");
  m.params.gate.weight = matrix_from(doc.at("gate").at("weight"), "gate.weight");
  m.params.gate.bias = vector_from(doc.at("gate").at("bias"), "gate.bias");
  m.params.author_head = matrix_from(doc.at("author_head"), "author_head");
  m.words = table_from(doc.at("word_table"));
  if (!doc.at("author_table").is_null()) m.authors = table_from(doc.at("author_table"));

  const auto shape = m.basis_shape();
  for (const auto& b : m.params.bases)
    if (!(b.shape() == shape)) throw std::runtime_error("checkpoint: basis shapes differ");
  if (shape.word_dim != m.words->dimension() || shape.classes != m.classes.size())
    throw std::runtime_error("checkpoint: basis shape does not match tables/classes");
  if (uses_author_table(m.mode) && !m.authors)
    throw std::runtime_error("checkpoint: mode needs an author table");
  return ck;
}

void save_checkpoint(const SocialAttentionModel& model, const json& config,
                     const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error(fmt::format("cannot write '{}'", path.string()));
  out << checkpoint_to_json(model, config).dump(1) << '\n';
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(fmt::format("cannot open '{}'", path.string()));
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& e) {
    throw std::runtime_error(fmt::format("'{}' is not valid JSON: {}", path.string(), e.what()));
  }
  return checkpoint_from_json(doc);
}

}  // namespace socatt
