#include "socatt/corpus.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

#include <fmt/format.h>

#include "socatt/error.hpp"
#include "socatt/log.hpp"

namespace socatt {
namespace {

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

char lower(char c) { return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c; }

bool starts_with(std::string_view s, std::string_view prefix) {
  return s.substr(0, prefix.size()) == prefix;
}

std::string_view strip(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(fmt::format("cannot open '{}'", path.string()));
  return in;
}

std::set<std::string, std::less<>> read_word_list(const std::filesystem::path& path) {
  auto in = open_input(path);
  std::set<std::string, std::less<>> words;
  std::string line;
  while (std::getline(in, line)) {
    auto word = strip(line);
    if (!word.empty()) words.emplace(word);
  }
  return words;
}

}  // namespace

std::string_view to_string(Label label) {
  switch (label) {
    case Label::positive: return "positive";
    case Label::negative: return "negative";
    case Label::neutral: return "neutral";
  }
  return "?";
}

std::optional<Label> parse_label(std::string_view text) {
  for (Label l : kAllLabels)
    if (to_string(l) == text) return l;
  return std::nullopt;
}

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_space(text[i])) ++i;
    std::size_t j = i;
    while (j < text.size() && !is_space(text[j])) ++j;
    if (j > i) {
      std::string token(text.substr(i, j - i));
      for (char& c : token) c = lower(c);
      if (starts_with(token, "http://") || starts_with(token, "https://") ||
          starts_with(token, "www.")) {
        token = kUrlToken;
      } else if (token.size() > 1 && token.front() == '@') {
        token = kUserToken;
      }
      tokens.push_back(std::move(token));
    }
    i = j;
  }
  return tokens;
}

bool operator==(const Document& a, const Document& b) {
  return a.id == b.id && a.author == b.author && a.label == b.label && a.tokens == b.tokens;
}

LabeledCorpus::LabeledCorpus(std::vector<Document> documents) {
  documents_.reserve(documents.size());
  for (auto& d : documents) add(std::move(d));
}

void LabeledCorpus::add(Document document) {
  if (!ids_.insert(document.id).second)
    throw std::invalid_argument(fmt::format("duplicate document id '{}'", document.id));
  ++counts_[static_cast<std::size_t>(document.label)];
  documents_.push_back(std::move(document));
}

std::vector<std::string> LabeledCorpus::authors() const {
  std::vector<std::string> out;
  std::unordered_set<std::string> seen;
  for (const auto& d : documents_)
    if (seen.insert(d.author).second) out.push_back(d.author);
  return out;
}

bool operator==(const LabeledCorpus& a, const LabeledCorpus& b) {
  return a.documents_ == b.documents_;
}

LabeledCorpus parse_corpus(std::istream& in) {
  LabeledCorpus corpus;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (strip(line).empty()) continue;

    std::array<std::string_view, 3> head;
    std::string_view rest = line;
    for (auto& field : head) {
      auto tab = rest.find('\t');
      if (tab == std::string_view::npos)
        throw FormatError("expected 4 tab-separated fields (id, author, label, text)", line_no);
      field = rest.substr(0, tab);
      rest.remove_prefix(tab + 1);
    }
    if (head[0].empty() || head[1].empty())
      throw FormatError("empty document id or author", line_no);
    auto label = parse_label(head[2]);
    if (!label) throw FormatError(fmt::format("unknown label '{}'", head[2]), line_no);

    Document doc{std::string(head[0]), std::string(head[1]), *label, tokenize(rest)};
    try {
      corpus.add(std::move(doc));
    } catch (const std::invalid_argument& e) {
      throw FormatError(e.what(), line_no);
    }
  }
  return corpus;
}

LabeledCorpus load_corpus(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_corpus(in);
}

void write_corpus(const LabeledCorpus& corpus, std::ostream& out) {
  for (const auto& d : corpus) {
    out << d.id << '\t' << d.author << '\t' << to_string(d.label) << '\t';
    for (std::size_t i = 0; i < d.tokens.size(); ++i) {
      if (i) out << ' ';
      out << d.tokens[i];
    }
    out << '\n';
  }
}

void save_corpus(const LabeledCorpus& corpus, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error(fmt::format("cannot write '{}'", path.string()));
  write_corpus(corpus, out);
}

SentimentLexicon load_lexicon(const std::filesystem::path& positive_path,
                              const std::filesystem::path& negative_path) {
  SentimentLexicon lex{read_word_list(positive_path), read_word_list(negative_path)};
  std::vector<std::string> both;
  for (const auto& w : lex.positive)
    if (lex.negative.contains(w)) both.push_back(w);
  for (const auto& w : both) {
    lex.positive.erase(w);
    lex.negative.erase(w);
    log_warning(fmt::format("lexicon word '{}' listed as both positive and negative; dropped", w));
  }
  return lex;
}

void save_lexicon(const SentimentLexicon& lexicon, const std::filesystem::path& positive_path,
                  const std::filesystem::path& negative_path) {
  auto write = [](const auto& words, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error(fmt::format("cannot write '{}'", path.string()));
    for (const auto& w : words) out << w << '\n';
  };
  write(lexicon.positive, positive_path);
  write(lexicon.negative, negative_path);
}

}  // namespace socatt
