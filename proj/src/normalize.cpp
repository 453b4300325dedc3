#include "floodrel/normalize.hpp"

#include <unicode/locid.h>
#include <unicode/normalizer2.h>
#include <unicode/regex.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>

#include <memory>
#include <stdexcept>

#include "floodrel/file_util.hpp"

namespace floodrel {

namespace detail {
extern const std::string_view kBundledStopwords;
}

namespace {

// Every removal pattern also swallows combining marks attached to the
// removed code point so no orphaned mark is left on a neighbouring letter.
constexpr const char* kUrlPattern = R"((?:https?://|\bwww\.)\S+)";
constexpr const char* kMentionPattern = R"(@\w+)";
constexpr const char* kHashtagPattern = R"(#(\w+))";
constexpr const char* kEmojiPattern =
    R"([[\p{Extended_Pictographic}\p{Emoji_Presentation}\p{Emoji_Modifier}\p{Regional_Indicator})"
    R"(\p{So}\p{C}\x{200D}\x{FE0E}\x{FE0F}\x{20E3}]--[\p{White_Space}]]\p{M}*)";
constexpr const char* kPunctuationPattern = R"([\p{P}\p{S}]\p{M}*)";

class Patterns {
 public:
  Patterns()
      : url_(compile(kUrlPattern)),
        mention_(compile(kMentionPattern)),
        hashtag_(compile(kHashtagPattern)),
        emoji_(compile(kEmojiPattern)),
        punctuation_(compile(kPunctuationPattern)) {}

  const icu::RegexPattern& url() const { return *url_; }
  const icu::RegexPattern& mention() const { return *mention_; }
  const icu::RegexPattern& hashtag() const { return *hashtag_; }
  const icu::RegexPattern& emoji() const { return *emoji_; }
  const icu::RegexPattern& punctuation() const { return *punctuation_; }

 private:
  static std::unique_ptr<icu::RegexPattern> compile(const char* pattern) {
    UErrorCode status = U_ZERO_ERROR;
    UParseError parse_error;
    std::unique_ptr<icu::RegexPattern> compiled(
        icu::RegexPattern::compile(icu::UnicodeString::fromUTF8(pattern), 0, parse_error, status));
    if (U_FAILURE(status)) {
      throw std::logic_error(std::string("bad normalizer pattern ") + pattern + ": " + u_errorName(status));
    }
    return compiled;
  }

  std::unique_ptr<icu::RegexPattern> url_;
  std::unique_ptr<icu::RegexPattern> mention_;
  std::unique_ptr<icu::RegexPattern> hashtag_;
  std::unique_ptr<icu::RegexPattern> emoji_;
  std::unique_ptr<icu::RegexPattern> punctuation_;
};

const Patterns& patterns() {
  static const Patterns instance;
  return instance;
}

void replace_all(const icu::RegexPattern& pattern, icu::UnicodeString& text, const icu::UnicodeString& replacement) {
  UErrorCode status = U_ZERO_ERROR;
  std::unique_ptr<icu::RegexMatcher> matcher(pattern.matcher(text, status));
  icu::UnicodeString result = matcher->replaceAll(replacement, status);
  if (U_FAILURE(status)) throw std::runtime_error(std::string("regex replace failed: ") + u_errorName(status));
  text = std::move(result);
}

void fold_in_place(icu::UnicodeString& text, bool unicode_fold) {
  if (!unicode_fold) {
    text.toLower(icu::Locale::getRoot());
    return;
  }
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* nfkc_cf = icu::Normalizer2::getNFKCCasefoldInstance(status);
  if (U_FAILURE(status)) throw std::runtime_error(std::string("ICU NFKC_Casefold unavailable: ") + u_errorName(status));
  icu::UnicodeString folded = nfkc_cf->normalize(text, status);
  if (U_FAILURE(status)) throw std::runtime_error(std::string("normalization failed: ") + u_errorName(status));
  text = std::move(folded);
}

std::string to_utf8(const icu::UnicodeString& text) {
  std::string out;
  text.toUTF8String(out);
  return out;
}

std::string_view trim(std::string_view s) {
  const char* spaces = " \t\r\n\f\v";
  const auto first = s.find_first_not_of(spaces);
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(spaces);
  return s.substr(first, last - first + 1);
}

}  // namespace

NormalizerConfig NormalizerConfig::defaults() {
  NormalizerConfig config;
  config.stopwords = bundled_stopwords();
  return config;
}

const StopwordList& bundled_stopwords() {
  static const StopwordList list = parse_stopwords(detail::kBundledStopwords);
  return list;
}

StopwordList parse_stopwords(std::string_view text) {
  StopwordList list;
  for (const std::string& raw : split_lines(text)) {
    std::string_view word = trim(raw);
    if (word.empty() || word.front() == '#') continue;
    icu::UnicodeString lowered = icu::UnicodeString::fromUTF8(icu::StringPiece(word.data(), static_cast<int32_t>(word.size())));
    lowered.toLower(icu::Locale::getRoot());
    if (to_utf8(lowered) != word) throw DataError("stopword is not lowercase: " + std::string(word));
    list.emplace(word);
  }
  return list;
}

StopwordList load_stopwords(const std::filesystem::path& path) {
  return parse_stopwords(read_file(path));
}

std::string fold_text(std::string_view text, bool unicode_fold) {
  icu::UnicodeString u = icu::UnicodeString::fromUTF8(icu::StringPiece(text.data(), static_cast<int32_t>(text.size())));
  fold_in_place(u, unicode_fold);
  return to_utf8(u);
}

std::vector<std::string> normalize(std::string_view text, const NormalizerConfig& config) {
  const Patterns& p = patterns();
  const icu::UnicodeString nothing;

  icu::UnicodeString u = icu::UnicodeString::fromUTF8(icu::StringPiece(text.data(), static_cast<int32_t>(text.size())));
  fold_in_place(u, config.unicode_fold);
  replace_all(p.url(), u, nothing);
  replace_all(p.mention(), u, nothing);
  replace_all(p.hashtag(), u, config.keep_hashtag_words ? icu::UnicodeString(u"$1") : nothing);
  replace_all(p.emoji(), u, nothing);
  replace_all(p.punctuation(), u, nothing);
  // Deleting characters can bring together sequences that compose
  // differently; fold again so the output is a fixed point.
  if (config.unicode_fold) fold_in_place(u, true);

  std::vector<std::string> tokens;
  icu::UnicodeString current;
  auto flush = [&] {
    if (current.isEmpty()) return;
    std::string token = to_utf8(current);
    current.remove();
    if (config.stopwords.find(token) == config.stopwords.end()) tokens.push_back(std::move(token));
  };
  for (int32_t i = 0; i < u.length();) {
    const UChar32 c = u.char32At(i);
    if (u_isUWhiteSpace(c)) {
      flush();
    } else {
      current.append(c);
    }
    i += U16_LENGTH(c);
  }
  flush();
  return tokens;
}

std::vector<NormalizedTweet> normalize_corpus(const Corpus& corpus, const NormalizerConfig& config) {
  std::vector<NormalizedTweet> out;
  out.reserve(corpus.size());
  for (const Tweet& tweet : corpus.tweets()) out.push_back({tweet.id, normalize(tweet.text, config)});
  return out;
}

std::string join_tokens(const std::vector<std::string>& tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0) out += ' ';
    out += tokens[i];
  }
  return out;
}

void write_normalized(const std::vector<NormalizedTweet>& tweets, const std::filesystem::path& path) {
  std::string out;
  for (const NormalizedTweet& tweet : tweets) {
    out += tweet.id;
    out += '\t';
    out += join_tokens(tweet.tokens);
    out += '\n';
  }
  write_file_atomic(path, out);
}

}  // namespace floodrel
