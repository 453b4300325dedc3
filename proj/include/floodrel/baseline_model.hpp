#pragma once

#include <array>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "floodrel/normalize.hpp"
#include "floodrel/score_io.hpp"
#include "floodrel/types.hpp"

namespace floodrel {

/// Bag-of-words multinomial naive Bayes over normalized tokens.
///
/// P(token | class) = (count(token, class) + smoothing)
///                    / (tokens_in_class + smoothing * |vocabulary|)
/// Priors are the unsmoothed class frequencies of the training documents.
class BaselineModel {
 public:
  using ClassLogProbs = std::array<double, 2>;

  BaselineModel() = default;

  /// Assembles a model from stored parameters. Checks shapes only.
  BaselineModel(std::vector<std::string> vocabulary, ClassLogProbs log_priors,
                std::vector<ClassLogProbs> log_likelihoods, double smoothing);

  /// Sorted vocabulary; position is the token index.
  const std::vector<std::string>& vocabulary() const { return vocabulary_; }
  const ClassLogProbs& log_priors() const { return log_priors_; }
  /// One entry per vocabulary index.
  const std::vector<ClassLogProbs>& log_likelihoods() const { return log_likelihoods_; }
  double smoothing() const { return smoothing_; }

  /// Index of `token`, or -1 when out of vocabulary.
  std::ptrdiff_t index_of(std::string_view token) const;

  bool operator==(const BaselineModel& other) const;

 private:
  std::vector<std::string> vocabulary_;
  std::map<std::string, std::size_t, std::less<>> index_;
  ClassLogProbs log_priors_{};
  std::vector<ClassLogProbs> log_likelihoods_;
  double smoothing_ = 1.0;
};

/// Requires both classes among the labeled documents and smoothing > 0.
/// Every tweet must have an entry in `labels`.
BaselineModel train(const std::vector<NormalizedTweet>& normalized, const LabelMap& labels,
                    double smoothing = 1.0);

/// Posterior over the two classes. Out-of-vocabulary tokens are ignored, so
/// a tweet with no known tokens gets the prior.
ScoreVector predict(const BaselineModel& model, const NormalizedTweet& tweet);

ScoreSet predict_all(const BaselineModel& model, const std::vector<NormalizedTweet>& tweets,
                     std::string model_name);

/// Text file; every double is stored as a hex float so reading it back
/// reproduces each parameter bit for bit.
void write_model(const BaselineModel& model, const std::filesystem::path& path);
BaselineModel read_model(const std::filesystem::path& path);

}  // namespace floodrel
