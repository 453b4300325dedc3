#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "floodrel/types.hpp"

namespace floodrel {

struct Tweet {
  std::string id;
  std::string text;
  std::optional<Label> label;

  bool operator==(const Tweet&) const = default;
};

/// Builds a Tweet, replacing every tab, CR or LF in `text` by a single space
/// so the record can always be written as one line.
Tweet make_tweet(std::string id, std::string_view text, std::optional<Label> label = std::nullopt);

/// An ordered, immutable collection of tweets with unique ids.
class Corpus {
 public:
  Corpus() = default;
  /// Throws DataError on an empty or duplicate id.
  explicit Corpus(std::vector<Tweet> tweets);

  const std::vector<Tweet>& tweets() const { return tweets_; }
  std::size_t size() const { return tweets_.size(); }
  bool empty() const { return tweets_.empty(); }
  /// True iff every tweet carries a label. A corpus loaded with
  /// has_labels=false is never labeled, even when empty.
  bool labeled() const { return labeled_; }

  std::vector<std::string> ids() const;

 private:
  friend Corpus load_corpus(const std::filesystem::path&, bool);
  std::vector<Tweet> tweets_;
  bool labeled_ = false;
};

/// Loads a tab-separated corpus: `<id>\t<text>[\t<label>]` per line, '#'
/// comment lines and blank lines ignored. With `has_labels` false any third
/// field is discarded.
Corpus load_corpus(const std::filesystem::path& path, bool has_labels);

/// Writes the corpus in the same format `load_corpus` reads.
void write_corpus(const Corpus& corpus, const std::filesystem::path& path);

struct CorpusSplit {
  Corpus train;
  Corpus dev;
};

/// Stratified split. For each class, round(dev_fraction * class_size) tweets
/// (half away from zero) are drawn into `dev` by a seeded Fisher-Yates
/// shuffle; both outputs keep the input order.
CorpusSplit split_corpus(const Corpus& corpus, double dev_fraction, std::uint64_t seed);

}  // namespace floodrel
