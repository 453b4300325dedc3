#include "floodrel/baseline_model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "floodrel/file_util.hpp"

namespace floodrel {

namespace {

constexpr std::string_view kModelHeader = "#floodrel-nb 1";

std::string hex_double(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%a", value);
  return buffer;
}

double parse_hex_double(std::string_view text, const std::string& where) {
  const std::string owned(text);
  char* end = nullptr;
  const double value = std::strtod(owned.c_str(), &end);
  if (owned.empty() || end != owned.c_str() + owned.size() || !std::isfinite(value)) {
    throw DataError(where + ": bad number '" + owned + "'");
  }
  return value;
}

}  // namespace

BaselineModel::BaselineModel(std::vector<std::string> vocabulary, ClassLogProbs log_priors,
                             std::vector<ClassLogProbs> log_likelihoods, double smoothing)
    : vocabulary_(std::move(vocabulary)),
      log_priors_(log_priors),
      log_likelihoods_(std::move(log_likelihoods)),
      smoothing_(smoothing) {
  if (vocabulary_.size() != log_likelihoods_.size()) {
    throw DataError("vocabulary and likelihood table differ in size");
  }
  if (!(smoothing_ > 0.0)) throw DataError("smoothing must be positive");
  for (std::size_t i = 0; i < vocabulary_.size(); ++i) {
    if (!index_.emplace(vocabulary_[i], i).second) throw DataError("duplicate vocabulary entry: " + vocabulary_[i]);
  }
}

std::ptrdiff_t BaselineModel::index_of(std::string_view token) const {
  const auto it = index_.find(token);
  return it == index_.end() ? -1 : static_cast<std::ptrdiff_t>(it->second);
}

bool BaselineModel::operator==(const BaselineModel& other) const {
  return vocabulary_ == other.vocabulary_ && log_priors_ == other.log_priors_ &&
         log_likelihoods_ == other.log_likelihoods_ && smoothing_ == other.smoothing_;
}

BaselineModel train(const std::vector<NormalizedTweet>& normalized, const LabelMap& labels, double smoothing) {
  if (!(smoothing > 0.0) || !std::isfinite(smoothing)) throw DataError("smoothing must be a positive number");

  std::map<std::string, std::array<std::size_t, 2>, std::less<>> counts;
  std::array<std::size_t, 2> documents{};
  std::array<std::size_t, 2> token_totals{};
  for (const NormalizedTweet& tweet : normalized) {
    const auto label = labels.find(tweet.id);
    if (label == labels.end()) throw DataError("no label for training tweet: " + tweet.id);
    const int cls = to_int(label->second);
    ++documents[cls];
    for (const std::string& token : tweet.tokens) {
      if (token.empty() || token.find_first_of(" \t\r\n") != std::string::npos) {
        throw DataError("malformed token in tweet " + tweet.id);
      }
      ++counts[token][cls];
      ++token_totals[cls];
    }
  }
  if (documents[0] == 0 || documents[1] == 0) {
    throw DataError("training data must contain both classes");
  }

  const double n_docs = static_cast<double>(documents[0] + documents[1]);
  const BaselineModel::ClassLogProbs log_priors{std::log(documents[0] / n_docs), std::log(documents[1] / n_docs)};

  const double vocab_size = static_cast<double>(counts.size());
  std::array<double, 2> denominators{};
  for (int c = 0; c < 2; ++c) denominators[c] = static_cast<double>(token_totals[c]) + smoothing * vocab_size;

  std::vector<std::string> vocabulary;
  std::vector<BaselineModel::ClassLogProbs> log_likelihoods;
  vocabulary.reserve(counts.size());
  log_likelihoods.reserve(counts.size());
  for (const auto& [token, per_class] : counts) {
    vocabulary.push_back(token);
    log_likelihoods.push_back({std::log((static_cast<double>(per_class[0]) + smoothing) / denominators[0]),
                               std::log((static_cast<double>(per_class[1]) + smoothing) / denominators[1])});
  }
  return BaselineModel(std::move(vocabulary), log_priors, std::move(log_likelihoods), smoothing);
}

ScoreVector predict(const BaselineModel& model, const NormalizedTweet& tweet) {
  BaselineModel::ClassLogProbs joint = model.log_priors();
  for (const std::string& token : tweet.tokens) {
    const std::ptrdiff_t index = model.index_of(token);
    if (index < 0) continue;
    const auto& ll = model.log_likelihoods()[static_cast<std::size_t>(index)];
    joint[0] += ll[0];
    joint[1] += ll[1];
  }
  const double peak = std::max(joint[0], joint[1]);
  const double e0 = std::exp(joint[0] - peak);
  const double e1 = std::exp(joint[1] - peak);
  const double total = e0 + e1;
  return ScoreVector{tweet.id, e0 / total, e1 / total};
}

ScoreSet predict_all(const BaselineModel& model, const std::vector<NormalizedTweet>& tweets, std::string model_name) {
  ScoreSet set(std::move(model_name));
  for (const NormalizedTweet& tweet : tweets) set.add(predict(model, tweet));
  return set;
}

void write_model(const BaselineModel& model, const std::filesystem::path& path) {
  std::string out;
  out += kModelHeader;
  out += '\n';
  out += "smoothing\t" + hex_double(model.smoothing()) + '\n';
  out += "prior\t" + hex_double(model.log_priors()[0]) + '\t' + hex_double(model.log_priors()[1]) + '\n';
  out += "vocabulary\t" + std::to_string(model.vocabulary().size()) + '\n';
  for (std::size_t i = 0; i < model.vocabulary().size(); ++i) {
    const auto& ll = model.log_likelihoods()[i];
    out += model.vocabulary()[i] + '\t' + hex_double(ll[0]) + '\t' + hex_double(ll[1]) + '\n';
  }
  write_file_atomic(path, out);
}

BaselineModel read_model(const std::filesystem::path& path) {
  const std::vector<std::string> lines = split_lines(read_file(path));
  const std::string name = path.string();
  auto where = [&](std::size_t line_index) { return name + ":" + std::to_string(line_index + 1); };
  auto expect_fields = [&](std::size_t line_index, std::string_view key, std::size_t count) {
    if (line_index >= lines.size()) throw DataError(name + ": truncated model file");
    auto fields = split_tabs(lines[line_index]);
    if (fields.size() != count || fields[0] != key) {
      throw DataError(where(line_index) + ": expected '" + std::string(key) + "' record");
    }
    return fields;
  };

  if (lines.empty() || lines[0] != kModelHeader) throw DataError(name + ": not a floodrel naive Bayes model");
  const auto smoothing_fields = expect_fields(1, "smoothing", 2);
  const double smoothing = parse_hex_double(smoothing_fields[1], where(1));
  const auto prior_fields = expect_fields(2, "prior", 3);
  const BaselineModel::ClassLogProbs priors{parse_hex_double(prior_fields[1], where(2)),
                                            parse_hex_double(prior_fields[2], where(2))};
  const auto vocab_fields = expect_fields(3, "vocabulary", 2);
  std::size_t vocab_size = 0;
  {
    std::istringstream in{std::string(vocab_fields[1])};
    if (!(in >> vocab_size) || !in.eof()) throw DataError(where(3) + ": bad vocabulary size");
  }
  if (lines.size() != 4 + vocab_size) throw DataError(name + ": vocabulary size does not match the number of entries");

  std::vector<std::string> vocabulary;
  std::vector<BaselineModel::ClassLogProbs> log_likelihoods;
  vocabulary.reserve(vocab_size);
  log_likelihoods.reserve(vocab_size);
  for (std::size_t i = 4; i < lines.size(); ++i) {
    const auto fields = split_tabs(lines[i]);
    if (fields.size() != 3 || fields[0].empty()) throw DataError(where(i) + ": malformed vocabulary entry");
    vocabulary.emplace_back(fields[0]);
    log_likelihoods.push_back({parse_hex_double(fields[1], where(i)), parse_hex_double(fields[2], where(i))});
  }
  return BaselineModel(std::move(vocabulary), priors, std::move(log_likelihoods), smoothing);
}

}  // namespace floodrel
