#include <gtest/gtest.h>

#include <cmath>

#include "floodrel/baseline_model.hpp"
#include "support/test_support.hpp"

namespace floodrel {
namespace {

const std::vector<NormalizedTweet> kTwoDocs = {{"d1", {"flood"}}, {"d0", {"cat"}}};
const LabelMap kTwoLabels = {{"d1", Label::Relevant}, {"d0", Label::NotRelevant}};

TEST(TrainBaseline, SymmetricPriors) {
  const BaselineModel model = train(kTwoDocs, kTwoLabels, 1.0);
  EXPECT_DOUBLE_EQ(model.log_priors()[0], std::log(0.5));
  EXPECT_DOUBLE_EQ(model.log_priors()[1], std::log(0.5));
}

TEST(TrainBaseline, SmoothedLikelihood) {
  // (count 1 + 1) / (1 token in class + 1 * vocabulary 2) = 2/3.
  const BaselineModel model = train(kTwoDocs, kTwoLabels, 1.0);
  ASSERT_EQ(model.vocabulary(), (std::vector<std::string>{"cat", "flood"}));
  const auto flood = static_cast<std::size_t>(model.index_of("flood"));
  EXPECT_NEAR(std::exp(model.log_likelihoods()[flood][1]), 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(std::exp(model.log_likelihoods()[flood][0]), 1.0 / 3.0, 1e-15);
}

TEST(TrainBaseline, Deterministic) {
  EXPECT_EQ(train(kTwoDocs, kTwoLabels, 0.5), train(kTwoDocs, kTwoLabels, 0.5));
}

TEST(TrainBaseline, Errors) {
  EXPECT_THROW(train({{"a", {"x"}}}, {{"a", Label::Relevant}}, 1.0), DataError);
  EXPECT_THROW(train(kTwoDocs, kTwoLabels, 0.0), DataError);
  EXPECT_THROW(train(kTwoDocs, kTwoLabels, -1.0), DataError);
  EXPECT_THROW(train(kTwoDocs, {{"d1", Label::Relevant}}, 1.0), DataError);
}

TEST(TrainBaseline, DistributionsSumToOne) {
  std::mt19937_64 rng(3);
  const std::vector<std::string> pool = {"a", "b", "c", "d", "e", "f", "g", "h"};
  std::vector<NormalizedTweet> docs;
  LabelMap labels;
  for (int i = 0; i < 60; ++i) {
    NormalizedTweet doc{"t" + std::to_string(i), {}};
    for (auto k = testing::draw(rng, 0, 6); k > 0; --k) doc.tokens.push_back(pool[testing::draw(rng, 0, 7)]);
    labels[doc.id] = (i % 3 == 0) ? Label::Relevant : Label::NotRelevant;
    docs.push_back(std::move(doc));
  }
  const BaselineModel model = train(docs, labels, 0.7);
  EXPECT_NEAR(std::exp(model.log_priors()[0]) + std::exp(model.log_priors()[1]), 1.0, 1e-9);
  for (int c = 0; c < 2; ++c) {
    double total = 0.0;
    for (const auto& ll : model.log_likelihoods()) total += std::exp(ll[c]);
    EXPECT_NEAR(total, 1.0, 1e-9);
  }
}

TEST(Predict, EmptyTweetGetsPrior) {
  const BaselineModel model = train(kTwoDocs, kTwoLabels, 1.0);
  const ScoreVector score = predict(model, {"q", {}});
  EXPECT_EQ(score.tweet_id, "q");
  EXPECT_DOUBLE_EQ(score.p_not_relevant, 0.5);
  EXPECT_DOUBLE_EQ(score.p_relevant, 0.5);
}

TEST(Predict, KnownTokenPosterior) {
  // Bayes rule: 0.5 * 2/3 / (0.5 * 2/3 + 0.5 * 1/3) = 2/3.
  const BaselineModel model = train(kTwoDocs, kTwoLabels, 1.0);
  const ScoreVector score = predict(model, {"q", {"flood"}});
  EXPECT_GT(score.p_relevant, score.p_not_relevant);
  EXPECT_NEAR(score.p_relevant, 2.0 / 3.0, 1e-12);
}

TEST(Predict, UnseenTokensGiveExactlyThePrior) {
  const std::vector<NormalizedTweet> docs = {{"a", {"x"}}, {"b", {"y"}}, {"c", {"y", "z"}}};
  const LabelMap labels = {{"a", Label::Relevant}, {"b", Label::NotRelevant}, {"c", Label::NotRelevant}};
  const BaselineModel model = train(docs, labels, 1.0);
  const ScoreVector prior = predict(model, {"q", {}});
  const ScoreVector unseen = predict(model, {"q", {"never", "seen"}});
  EXPECT_EQ(unseen, prior);
  EXPECT_NEAR(prior.p_relevant, 1.0 / 3.0, 1e-12);
}

TEST(Predict, PosteriorInvariants) {
  std::mt19937_64 rng(17);
  const std::vector<std::string> pool = {"a", "b", "c", "d", "e"};
  std::vector<NormalizedTweet> docs;
  LabelMap labels;
  for (int i = 0; i < 40; ++i) {
    NormalizedTweet doc{"t" + std::to_string(i), {}};
    for (auto k = testing::draw(rng, 0, 5); k > 0; --k) doc.tokens.push_back(pool[testing::draw(rng, 0, 4)]);
    labels[doc.id] = testing::draw(rng, 0, 1) ? Label::Relevant : Label::NotRelevant;
    docs.push_back(std::move(doc));
  }
  labels["t0"] = Label::Relevant;
  labels["t1"] = Label::NotRelevant;
  const BaselineModel model = train(docs, labels, 1.0);
  for (int i = 0; i < 300; ++i) {
    NormalizedTweet tweet{"q", {}};
    for (auto k = testing::draw(rng, 0, 200); k > 0; --k) tweet.tokens.push_back(pool[testing::draw(rng, 0, 4)]);
    const ScoreVector score = predict(model, tweet);
    EXPECT_GE(score.p_relevant, 0.0);
    EXPECT_LE(score.p_relevant, 1.0);
    EXPECT_NEAR(score.p_relevant + score.p_not_relevant, 1.0, 1e-9);
    tweet.tokens.push_back("out-of-vocabulary");
    EXPECT_EQ(predict(model, tweet), score);
  }
}

TEST(ModelFile, RoundTripIsBitExact) {
  testing::TempDir dir;
  const std::vector<NormalizedTweet> docs = {{"a", {"flood", "water", "venice"}}, {"b", {"cat", "sun"}},
                                             {"c", {"flood", "flood"}}};
  const LabelMap labels = {{"a", Label::Relevant}, {"b", Label::NotRelevant}, {"c", Label::Relevant}};
  const BaselineModel model = train(docs, labels, 0.3);
  write_model(model, dir / "m.nb");
  const BaselineModel loaded = read_model(dir / "m.nb");
  EXPECT_EQ(loaded, model);
  EXPECT_EQ(loaded.smoothing(), 0.3);
}

TEST(ModelFile, RejectsCorruptFiles) {
  testing::TempDir dir;
  testing::write_text(dir / "bad.nb", "not a model\n");
  EXPECT_THROW(read_model(dir / "bad.nb"), DataError);
  testing::write_text(dir / "short.nb", "#floodrel-nb 1\nsmoothing\t0x1p+0\nprior\t-0x1.62e42fefa39efp-1\t-0x1.62e42fefa39efp-1\nvocabulary\t2\na\t0x1p-1\t0x1p-1\n");
  EXPECT_THROW(read_model(dir / "short.nb"), DataError);
}

}  // namespace
}  // namespace floodrel
