#pragma once

#include <array>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "floodrel/score_io.hpp"
#include "floodrel/types.hpp"

namespace floodrel {

/// A named subset of models to fuse.
struct EnsembleSpec {
  std::string name;
  std::vector<std::string> model_names;

  bool operator==(const EnsembleSpec&) const = default;
};

/// Sorts the members and names the ensemble by joining them with '+'.
/// Throws DataError on an empty list, an empty name or a repeated name.
EnsembleSpec make_ensemble(std::vector<std::string> model_names);

struct FusedScore {
  std::string tweet_id;
  /// Per-class sum of the member posteriors (index 0 = not relevant).
  std::array<double, 2> s_final{};
  Label label = Label::NotRelevant;

  bool operator==(const FusedScore&) const = default;
};

/// Unweighted late fusion: s_final is the componentwise sum of the inputs,
/// and the label is Relevant iff s_final[1] > s_final[0] (ties go to
/// NotRelevant). The result does not depend on input order, bit for bit.
/// All inputs must refer to the same tweet.
FusedScore fuse(std::span<const ScoreVector> per_model_scores);

/// Fuses every row. The aligned models must be exactly the spec's members.
std::vector<FusedScore> fuse_ensemble(const EnsembleSpec& spec, const AlignedScores& aligned);

/// Every subset with at least `min_size` members, ordered by size and then
/// lexicographically by sorted member list.
std::vector<EnsembleSpec> enumerate_ensembles(const std::vector<std::string>& model_names,
                                              std::size_t min_size);

LabelMap predicted_labels(std::span<const FusedScore> fused);

struct FusedPredictions {
  std::string ensemble_name;
  std::vector<FusedScore> scores;
};

/// Header `#ensemble=<name>`, then `<tweet_id>\t<s0>\t<s1>\t<label>`.
std::string format_fused(const std::string& ensemble_name, std::span<const FusedScore> fused);
void write_fused(const std::string& ensemble_name, std::span<const FusedScore> fused,
                 const std::filesystem::path& path);
FusedPredictions parse_fused(std::string_view contents, std::string_view source = "<fused>");
FusedPredictions read_fused(const std::filesystem::path& path);

}  // namespace floodrel
