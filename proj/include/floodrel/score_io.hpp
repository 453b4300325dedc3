#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace floodrel {

/// Largest accepted deviation of p_not_relevant + p_relevant from 1.
inline constexpr double kProbabilitySumTolerance = 1e-6;

struct ScoreVector {
  std::string tweet_id;
  double p_not_relevant = 0.5;
  double p_relevant = 0.5;

  bool operator==(const ScoreVector&) const = default;
};

/// Throws DataError naming the tweet id if a probability lies outside [0,1]
/// or the pair does not sum to 1 within kProbabilitySumTolerance.
void validate(const ScoreVector& score);

/// Posterior scores of one model, in insertion order, unique by tweet id.
class ScoreSet {
 public:
  /// Throws DataError on an empty name.
  explicit ScoreSet(std::string model_name);

  const std::string& model_name() const { return model_name_; }
  const std::vector<ScoreVector>& scores() const { return scores_; }
  std::size_t size() const { return scores_.size(); }

  /// Validates the vector; throws DataError on a duplicate id.
  void add(ScoreVector score);
  const ScoreVector* find(std::string_view tweet_id) const;

 private:
  std::string model_name_;
  std::vector<ScoreVector> scores_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// Header `#model=<name>`, then `<tweet_id>\t<p_not_relevant>\t<p_relevant>`
/// per line with 17 significant digits.
std::string format_scores(const ScoreSet& set);
void write_scores(const ScoreSet& set, const std::filesystem::path& path);

/// `source` only labels error messages.
ScoreSet parse_scores(std::string_view contents, std::string_view source = "<scores>");
ScoreSet read_scores(const std::filesystem::path& path);

/// Per-tweet rows of per-model scores: rows[t][m] is model m's vector for
/// tweet_ids[t].
struct AlignedScores {
  std::vector<std::string> model_names;
  std::vector<std::string> tweet_ids;
  std::vector<std::vector<ScoreVector>> rows;
  /// Ids present in a score set but not in the corpus, summed over sets.
  std::size_t extra_ids = 0;
};

/// Arranges `sets` in corpus order. A corpus id missing from any set is a
/// DataError naming the model and the id; extra ids are only counted.
AlignedScores align(std::span<const ScoreSet> sets, const std::vector<std::string>& corpus_ids);

/// Sub-matrix with the named models, in the given order.
AlignedScores select_models(const AlignedScores& aligned, const std::vector<std::string>& model_names);

}  // namespace floodrel
