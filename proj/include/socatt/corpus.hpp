#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace socatt {

enum class Label : std::uint8_t { positive = 0, negative = 1, neutral = 2 };

inline constexpr std::size_t kNumLabels = 3;
inline constexpr std::array<Label, kNumLabels> kAllLabels = {
    Label::positive, Label::negative, Label::neutral};

std::string_view to_string(Label label);
std::optional<Label> parse_label(std::string_view text);

inline constexpr std::string_view kUrlToken = "<url>";
inline constexpr std::string_view kUserToken = "<user>";

/// Lowercases (ASCII), splits on whitespace, and maps URLs and @-mentions to
/// sentinel tokens.
std::vector<std::string> tokenize(std::string_view text);

struct Document {
  std::string id;
  std::string author;
  Label label = Label::neutral;
  std::vector<std::string> tokens;
};

class LabeledCorpus {
 public:
  LabeledCorpus() = default;
  explicit LabeledCorpus(std::vector<Document> documents);

  /// Throws std::invalid_argument on a duplicate document id.
  void add(Document document);

  const std::vector<Document>& documents() const { return documents_; }
  std::size_t size() const { return documents_.size(); }
  bool empty() const { return documents_.empty(); }
  std::size_t count(Label label) const { return counts_[static_cast<std::size_t>(label)]; }

  /// Distinct authors in first-appearance order.
  std::vector<std::string> authors() const;

  auto begin() const { return documents_.begin(); }
  auto end() const { return documents_.end(); }

  friend bool operator==(const LabeledCorpus& a, const LabeledCorpus& b);

 private:
  std::vector<Document> documents_;
  std::array<std::size_t, kNumLabels> counts_{};
  std::unordered_set<std::string> ids_;
};

bool operator==(const Document& a, const Document& b);

/// Four tab-separated columns per line: id, author, label, text.
LabeledCorpus parse_corpus(std::istream& in);
LabeledCorpus load_corpus(const std::filesystem::path& path);
void write_corpus(const LabeledCorpus& corpus, std::ostream& out);
void save_corpus(const LabeledCorpus& corpus, const std::filesystem::path& path);

struct SentimentLexicon {
  std::set<std::string, std::less<>> positive;
  std::set<std::string, std::less<>> negative;

  bool is_positive(std::string_view word) const { return positive.contains(word); }
  bool is_negative(std::string_view word) const { return negative.contains(word); }
};

/// Words listed in both files are dropped from both, with a warning.
SentimentLexicon load_lexicon(const std::filesystem::path& positive_path,
                              const std::filesystem::path& negative_path);
void save_lexicon(const SentimentLexicon& lexicon,
                  const std::filesystem::path& positive_path,
                  const std::filesystem::path& negative_path);

}  // namespace socatt
