#include "floodrel/corpus.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <cmath>
#include <random>
#include <sstream>
#include <unordered_set>

#include "floodrel/file_util.hpp"

namespace floodrel {

namespace {

std::string line_error(const std::filesystem::path& path, std::size_t line_no, std::string_view what) {
  std::ostringstream msg;
  msg << path.string() << ":" << line_no << ": " << what;
  return msg.str();
}

// Unbiased draw from [0, bound) using rejection on the raw 64-bit output,
// so results depend only on the mt19937_64 sequence.
std::uint64_t bounded_draw(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t value;
  do {
    value = rng();
  } while (value >= limit);
  return value % bound;
}

void shuffle_indices(std::vector<std::size_t>& indices, std::mt19937_64& rng) {
  for (std::size_t i = indices.size(); i > 1; --i) {
    std::size_t j = bounded_draw(rng, i);
    std::swap(indices[i - 1], indices[j]);
  }
}

}  // namespace

Tweet make_tweet(std::string id, std::string_view text, std::optional<Label> label) {
  std::string clean(text);
  std::replace_if(clean.begin(), clean.end(), [](char c) { return c == '\t' || c == '\n' || c == '\r'; }, ' ');
  return Tweet{std::move(id), std::move(clean), label};
}

Corpus::Corpus(std::vector<Tweet> tweets) : tweets_(std::move(tweets)) {
  std::unordered_set<std::string_view> seen;
  for (const Tweet& tweet : tweets_) {
    if (tweet.id.empty()) throw DataError("tweet with empty id");
    if (!seen.insert(tweet.id).second) throw DataError("duplicate tweet id: " + tweet.id);
  }
  labeled_ = std::all_of(tweets_.begin(), tweets_.end(), [](const Tweet& t) { return t.label.has_value(); });
}

std::vector<std::string> Corpus::ids() const {
  std::vector<std::string> out;
  out.reserve(tweets_.size());
  for (const Tweet& tweet : tweets_) out.push_back(tweet.id);
  return out;
}

Corpus load_corpus(const std::filesystem::path& path, bool has_labels) {
  const std::string contents = read_file(path);
  const std::vector<std::string> lines = split_lines(contents);

  std::vector<Tweet> tweets;
  std::unordered_set<std::string> seen;
  bool all_labeled = true;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    const std::string& line = lines[i];
    if (line.empty() || line.front() == '#') continue;
    if (!is_valid_utf8(line)) throw DataError(line_error(path, line_no, "invalid UTF-8"));

    const auto fields = split_tabs(line);
    if (fields.size() != 2 && fields.size() != 3) {
      throw DataError(line_error(path, line_no,
                                 "expected 2 or 3 tab-separated fields, found " + std::to_string(fields.size())));
    }
    if (fields[0].empty()) throw DataError(line_error(path, line_no, "empty tweet id"));

    std::optional<Label> label;
    if (fields.size() == 3 && has_labels) {
      label = parse_label(fields[2]);
      if (!label) {
        throw DataError(line_error(path, line_no, "label must be 0 or 1, found '" + std::string(fields[2]) + "'"));
      }
    }
    all_labeled = all_labeled && label.has_value();

    std::string id(fields[0]);
    if (!seen.insert(id).second) throw DataError(line_error(path, line_no, "duplicate tweet id: " + id));
    tweets.push_back(Tweet{std::move(id), std::string(fields[1]), label});
  }

  Corpus corpus(std::move(tweets));
  corpus.labeled_ = has_labels && all_labeled;
  return corpus;
}

void write_corpus(const Corpus& corpus, const std::filesystem::path& path) {
  std::string out;
  for (const Tweet& tweet : corpus.tweets()) {
    const Tweet clean = make_tweet(tweet.id, tweet.text, tweet.label);
    out += clean.id;
    out += '\t';
    out += clean.text;
    if (clean.label) {
      out += '\t';
      out += std::to_string(to_int(*clean.label));
    }
    out += '\n';
  }
  write_file_atomic(path, out);
}

CorpusSplit split_corpus(const Corpus& corpus, double dev_fraction, std::uint64_t seed) {
  if (!(dev_fraction > 0.0 && dev_fraction < 1.0)) {
    throw DataError("dev fraction must lie strictly between 0 and 1");
  }
  if (!corpus.labeled() || corpus.empty()) throw DataError("cannot split an unlabeled corpus");

  std::array<std::vector<std::size_t>, 2> by_class;
  const auto& tweets = corpus.tweets();
  for (std::size_t i = 0; i < tweets.size(); ++i) by_class[to_int(*tweets[i].label)].push_back(i);
  if (by_class[0].empty() || by_class[1].empty()) {
    throw DataError("cannot stratify a single-class corpus");
  }

  std::mt19937_64 rng(seed);
  std::vector<bool> in_dev(tweets.size(), false);
  for (auto& members : by_class) {
    const auto take = static_cast<std::size_t>(std::lround(dev_fraction * static_cast<double>(members.size())));
    shuffle_indices(members, rng);
    for (std::size_t k = 0; k < take; ++k) in_dev[members[k]] = true;
  }

  std::vector<Tweet> train;
  std::vector<Tweet> dev;
  for (std::size_t i = 0; i < tweets.size(); ++i) (in_dev[i] ? dev : train).push_back(tweets[i]);
  return CorpusSplit{Corpus(std::move(train)), Corpus(std::move(dev))};
}

}  // namespace floodrel
