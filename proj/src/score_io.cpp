#include "floodrel/score_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <set>

#include "floodrel/file_util.hpp"
#include "floodrel/types.hpp"

namespace floodrel {

namespace {

constexpr std::string_view kModelPrefix = "#model=";

std::string format_probability(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

double parse_probability(std::string_view text, const std::string& where) {
  double value = 0.0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || end != text.data() + text.size()) {
    throw DataError(where + ": bad probability '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

void validate(const ScoreVector& score) {
  if (score.tweet_id.empty()) throw DataError("score vector with empty tweet id");
  const auto in_unit = [](double p) { return p >= 0.0 && p <= 1.0; };
  if (!in_unit(score.p_not_relevant) || !in_unit(score.p_relevant)) {
    throw DataError("probability outside [0,1] for tweet " + score.tweet_id);
  }
  if (std::abs(score.p_not_relevant + score.p_relevant - 1.0) > kProbabilitySumTolerance) {
    throw DataError("probabilities do not sum to 1 for tweet " + score.tweet_id);
  }
}

ScoreSet::ScoreSet(std::string model_name) : model_name_(std::move(model_name)) {
  if (model_name_.empty()) throw DataError("score set needs a model name");
  if (model_name_.find_first_of("\t\r\n") != std::string::npos) {
    throw DataError("model name may not contain tabs or line breaks");
  }
}

void ScoreSet::add(ScoreVector score) {
  validate(score);
  if (score.tweet_id.find_first_of("\t\r\n") != std::string::npos) {
    throw DataError("tweet id may not contain tabs or line breaks");
  }
  if (!index_.emplace(score.tweet_id, scores_.size()).second) {
    throw DataError("duplicate tweet id " + score.tweet_id + " in scores of model " + model_name_);
  }
  scores_.push_back(std::move(score));
}

const ScoreVector* ScoreSet::find(std::string_view tweet_id) const {
  const auto it = index_.find(std::string(tweet_id));
  return it == index_.end() ? nullptr : &scores_[it->second];
}

std::string format_scores(const ScoreSet& set) {
  std::string out;
  out += kModelPrefix;
  out += set.model_name();
  out += '\n';
  for (const ScoreVector& score : set.scores()) {
    out += score.tweet_id;
    out += '\t';
    out += format_probability(score.p_not_relevant);
    out += '\t';
    out += format_probability(score.p_relevant);
    out += '\n';
  }
  return out;
}

void write_scores(const ScoreSet& set, const std::filesystem::path& path) {
  write_file_atomic(path, format_scores(set));
}

ScoreSet parse_scores(std::string_view contents, std::string_view source) {
  const std::vector<std::string> lines = split_lines(contents);
  const std::string name(source);
  if (lines.empty() || !lines[0].starts_with(kModelPrefix) || lines[0].size() == kModelPrefix.size()) {
    throw DataError(name + ": missing '#model=<name>' header");
  }
  ScoreSet set(lines[0].substr(kModelPrefix.size()));
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::string& line = lines[i];
    if (line.empty() || line.front() == '#') continue;
    const std::string where = name + ":" + std::to_string(i + 1);
    const auto fields = split_tabs(line);
    if (fields.size() != 3) throw DataError(where + ": expected 3 tab-separated fields");
    ScoreVector score{std::string(fields[0]), parse_probability(fields[1], where), parse_probability(fields[2], where)};
    try {
      set.add(std::move(score));
    } catch (const DataError& e) {
      throw DataError(where + ": " + e.what());
    }
  }
  return set;
}

ScoreSet read_scores(const std::filesystem::path& path) {
  return parse_scores(read_file(path), path.string());
}

AlignedScores align(std::span<const ScoreSet> sets, const std::vector<std::string>& corpus_ids) {
  AlignedScores aligned;
  aligned.tweet_ids = corpus_ids;
  std::set<std::string_view> names;
  for (const ScoreSet& set : sets) {
    if (!names.insert(set.model_name()).second) throw DataError("model listed twice: " + set.model_name());
    aligned.model_names.push_back(set.model_name());
  }

  aligned.rows.resize(corpus_ids.size());
  for (std::size_t t = 0; t < corpus_ids.size(); ++t) {
    auto& row = aligned.rows[t];
    row.reserve(sets.size());
    for (const ScoreSet& set : sets) {
      const ScoreVector* score = set.find(corpus_ids[t]);
      if (score == nullptr) {
        throw DataError("model " + set.model_name() + " has no score for tweet " + corpus_ids[t]);
      }
      row.push_back(*score);
    }
  }

  const std::set<std::string_view> wanted(corpus_ids.begin(), corpus_ids.end());
  for (const ScoreSet& set : sets) {
    for (const ScoreVector& score : set.scores()) {
      if (!wanted.contains(score.tweet_id)) ++aligned.extra_ids;
    }
  }
  return aligned;
}

AlignedScores select_models(const AlignedScores& aligned, const std::vector<std::string>& model_names) {
  std::vector<std::size_t> columns;
  for (const std::string& name : model_names) {
    std::size_t column = 0;
    while (column < aligned.model_names.size() && aligned.model_names[column] != name) ++column;
    if (column == aligned.model_names.size()) throw DataError("unknown model: " + name);
    columns.push_back(column);
  }
  AlignedScores out;
  out.model_names = model_names;
  out.tweet_ids = aligned.tweet_ids;
  out.extra_ids = aligned.extra_ids;
  out.rows.reserve(aligned.rows.size());
  for (const auto& row : aligned.rows) {
    std::vector<ScoreVector> selected;
    selected.reserve(columns.size());
    for (std::size_t column : columns) selected.push_back(row[column]);
    out.rows.push_back(std::move(selected));
  }
  return out;
}

}  // namespace floodrel
