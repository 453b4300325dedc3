#pragma once

#include <filesystem>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "floodrel/corpus.hpp"

namespace floodrel {

using StopwordList = std::set<std::string, std::less<>>;

struct NormalizerConfig {
  StopwordList stopwords;
  /// Strip '#' but keep the hashtag word. When false the whole hashtag goes.
  bool keep_hashtag_words = true;
  /// Unicode compatibility normalization with case folding (NFKC_Casefold).
  /// When false only a plain Unicode lowercase is applied.
  bool unicode_fold = true;

  /// Bundled English stopword list, hashtag words kept, folding on.
  static NormalizerConfig defaults();
};

/// The English list shipped in data/stopwords_en.txt.
const StopwordList& bundled_stopwords();

/// One entry per line; '#' lines and blank lines skipped, surrounding
/// whitespace trimmed. Throws DataError on an entry that is not lowercase.
StopwordList parse_stopwords(std::string_view text);
StopwordList load_stopwords(const std::filesystem::path& path);

/// First cleaning step on its own: compatibility fold + lowercase.
std::string fold_text(std::string_view text, bool unicode_fold);

/// Cleans raw tweet text into lowercase tokens. Steps, in order: fold and
/// lowercase, drop URLs, drop @mentions, unwrap or drop hashtags, drop
/// emoji and other symbols, drop punctuation, split on whitespace, filter
/// stopwords. Removed characters are deleted, not replaced, so the result
/// never has more tokens than the folded input.
std::vector<std::string> normalize(std::string_view text, const NormalizerConfig& config);

struct NormalizedTweet {
  std::string id;
  std::vector<std::string> tokens;

  bool operator==(const NormalizedTweet&) const = default;
};

/// One entry per tweet, same order. Tweets left with no tokens are kept.
std::vector<NormalizedTweet> normalize_corpus(const Corpus& corpus, const NormalizerConfig& config);

std::string join_tokens(const std::vector<std::string>& tokens);

/// `<id>\t<token token ...>` per line.
void write_normalized(const std::vector<NormalizedTweet>& tweets, const std::filesystem::path& path);

}  // namespace floodrel
