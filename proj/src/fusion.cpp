#include "floodrel/fusion.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cstdio>
#include <set>

#include "floodrel/file_util.hpp"

namespace floodrel {

namespace {

constexpr std::string_view kEnsemblePrefix = "#ensemble=";
constexpr std::size_t kMaxEnumeratedModels = 20;

// Summing in ascending order makes the result independent of input order.
double ordered_sum(std::vector<double>& values) {
  std::sort(values.begin(), values.end());
  double total = 0.0;
  for (double v : values) total += v;
  return total;
}

double parse_score(std::string_view text, const std::string& where) {
  double value = 0.0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || end != text.data() + text.size()) {
    throw DataError(where + ": bad score '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

EnsembleSpec make_ensemble(std::vector<std::string> model_names) {
  if (model_names.empty()) throw DataError("an ensemble needs at least one model");
  std::sort(model_names.begin(), model_names.end());
  for (std::size_t i = 0; i < model_names.size(); ++i) {
    if (model_names[i].empty()) throw DataError("empty model name in ensemble");
    if (i > 0 && model_names[i] == model_names[i - 1]) throw DataError("model repeated in ensemble: " + model_names[i]);
  }
  std::string name;
  for (const std::string& member : model_names) {
    if (!name.empty()) name += '+';
    name += member;
  }
  return EnsembleSpec{std::move(name), std::move(model_names)};
}

FusedScore fuse(std::span<const ScoreVector> per_model_scores) {
  if (per_model_scores.empty()) throw DataError("cannot fuse an empty list of scores");
  const std::string& tweet_id = per_model_scores.front().tweet_id;
  std::vector<double> not_relevant;
  std::vector<double> relevant;
  not_relevant.reserve(per_model_scores.size());
  relevant.reserve(per_model_scores.size());
  for (const ScoreVector& score : per_model_scores) {
    if (score.tweet_id != tweet_id) {
      throw DataError("fusing scores of different tweets: " + tweet_id + " and " + score.tweet_id);
    }
    validate(score);
    not_relevant.push_back(score.p_not_relevant);
    relevant.push_back(score.p_relevant);
  }
  FusedScore fused;
  fused.tweet_id = tweet_id;
  fused.s_final = {ordered_sum(not_relevant), ordered_sum(relevant)};
  fused.label = fused.s_final[1] > fused.s_final[0] ? Label::Relevant : Label::NotRelevant;
  return fused;
}

std::vector<FusedScore> fuse_ensemble(const EnsembleSpec& spec, const AlignedScores& aligned) {
  const std::set<std::string> wanted(spec.model_names.begin(), spec.model_names.end());
  const std::set<std::string> present(aligned.model_names.begin(), aligned.model_names.end());
  if (wanted != present || wanted.size() != aligned.model_names.size()) {
    throw DataError("aligned scores do not match the models of ensemble " + spec.name);
  }
  std::vector<FusedScore> fused;
  fused.reserve(aligned.rows.size());
  for (const auto& row : aligned.rows) fused.push_back(fuse(row));
  return fused;
}

std::vector<EnsembleSpec> enumerate_ensembles(const std::vector<std::string>& model_names, std::size_t min_size) {
  const std::size_t n = model_names.size();
  if (min_size < 1 || min_size > n) {
    throw DataError("minimum ensemble size must be between 1 and the number of models (" + std::to_string(n) + ")");
  }
  if (n > kMaxEnumeratedModels) throw DataError("too many models to enumerate ensembles");
  make_ensemble(model_names);  // rejects empty or repeated names

  std::vector<EnsembleSpec> specs;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    if (static_cast<std::size_t>(std::popcount(mask)) < min_size) continue;
    std::vector<std::string> members;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (1u << i)) members.push_back(model_names[i]);
    }
    specs.push_back(make_ensemble(std::move(members)));
  }
  std::sort(specs.begin(), specs.end(), [](const EnsembleSpec& a, const EnsembleSpec& b) {
    if (a.model_names.size() != b.model_names.size()) return a.model_names.size() < b.model_names.size();
    return a.model_names < b.model_names;
  });
  return specs;
}

LabelMap predicted_labels(std::span<const FusedScore> fused) {
  LabelMap labels;
  labels.reserve(fused.size());
  for (const FusedScore& score : fused) labels.emplace(score.tweet_id, score.label);
  return labels;
}

std::string format_fused(const std::string& ensemble_name, std::span<const FusedScore> fused) {
  std::string out;
  out += kEnsemblePrefix;
  out += ensemble_name;
  out += '\n';
  char buffer[96];
  for (const FusedScore& score : fused) {
    std::snprintf(buffer, sizeof buffer, "\t%.17g\t%.17g\t%d\n", score.s_final[0], score.s_final[1], to_int(score.label));
    out += score.tweet_id;
    out += buffer;
  }
  return out;
}

void write_fused(const std::string& ensemble_name, std::span<const FusedScore> fused,
                 const std::filesystem::path& path) {
  write_file_atomic(path, format_fused(ensemble_name, fused));
}

FusedPredictions parse_fused(std::string_view contents, std::string_view source) {
  const std::vector<std::string> lines = split_lines(contents);
  const std::string name(source);
  if (lines.empty() || !lines[0].starts_with(kEnsemblePrefix) || lines[0].size() == kEnsemblePrefix.size()) {
    throw DataError(name + ": missing '#ensemble=<name>' header");
  }
  FusedPredictions predictions;
  predictions.ensemble_name = lines[0].substr(kEnsemblePrefix.size());
  std::set<std::string> seen;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::string& line = lines[i];
    if (line.empty() || line.front() == '#') continue;
    const std::string where = name + ":" + std::to_string(i + 1);
    const auto fields = split_tabs(line);
    if (fields.size() != 4 || fields[0].empty()) throw DataError(where + ": expected 4 tab-separated fields");
    const auto label = parse_label(fields[3]);
    if (!label) throw DataError(where + ": label must be 0 or 1");
    FusedScore score{std::string(fields[0]), {parse_score(fields[1], where), parse_score(fields[2], where)}, *label};
    if (!seen.insert(score.tweet_id).second) throw DataError(where + ": duplicate tweet id " + score.tweet_id);
    predictions.scores.push_back(std::move(score));
  }
  return predictions;
}

FusedPredictions read_fused(const std::filesystem::path& path) {
  return parse_fused(read_file(path), path.string());
}

}  // namespace floodrel
