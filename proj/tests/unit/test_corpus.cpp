#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "floodrel/corpus.hpp"
#include "support/test_support.hpp"

namespace floodrel {
namespace {

using testing::TempDir;
using testing::write_text;

TEST(LoadCorpus, MapsFieldsOfLabeledLine) {
  TempDir dir;
  write_text(dir / "c.tsv", "t1\twater rising fast\t1\n");
  const Corpus corpus = load_corpus(dir / "c.tsv", true);
  ASSERT_EQ(corpus.size(), 1u);
  EXPECT_TRUE(corpus.labeled());
  EXPECT_EQ(corpus.tweets()[0], (Tweet{"t1", "water rising fast", Label::Relevant}));
}

TEST(LoadCorpus, CommentsOnlyGivesEmptyCorpus) {
  TempDir dir;
  write_text(dir / "c.tsv", "# id\ttext\tlabel\n# nothing here\n");
  const Corpus corpus = load_corpus(dir / "c.tsv", true);
  EXPECT_TRUE(corpus.empty());
  EXPECT_TRUE(corpus.labeled());
  EXPECT_FALSE(load_corpus(dir / "c.tsv", false).labeled());
}

TEST(LoadCorpus, DuplicateIdNamesTheId) {
  TempDir dir;
  write_text(dir / "c.tsv", "a\tx\t1\na\ty\t0\n");
  try {
    load_corpus(dir / "c.tsv", true);
    FAIL() << "expected DataError";
  } catch (const DataError& e) {
    EXPECT_NE(std::string(e.what()).find("duplicate tweet id: a"), std::string::npos) << e.what();
  }
}

TEST(LoadCorpus, MalformedLinesNameTheLineNumber) {
  TempDir dir;
  write_text(dir / "fields.tsv", "# header\na\tx\t1\nb\n");
  write_text(dir / "label.tsv", "a\tx\t1\nb\ty\t2\n");
  write_text(dir / "extra.tsv", "a\tx\t1\textra\n");
  write_text(dir / "noid.tsv", "\tx\t1\n");
  for (const auto& [file, line] : {std::pair{"fields.tsv", ":3:"}, {"label.tsv", ":2:"}, {"extra.tsv", ":1:"},
                                   {"noid.tsv", ":1:"}}) {
    try {
      load_corpus(dir / file, true);
      ADD_FAILURE() << file << " loaded";
    } catch (const DataError& e) {
      EXPECT_NE(std::string(e.what()).find(line), std::string::npos) << e.what();
    }
  }
}

TEST(LoadCorpus, RejectsInvalidUtf8) {
  TempDir dir;
  write_text(dir / "c.tsv", "a\tok\t1\nb\tbad \xC3\x28 byte\t0\n");
  EXPECT_THROW(load_corpus(dir / "c.tsv", true), DataError);
}

TEST(LoadCorpus, MissingFileIsDataError) {
  EXPECT_THROW(load_corpus("/definitely/not/here.tsv", true), DataError);
}

TEST(LoadCorpus, TwoFieldLinesMakeCorpusUnlabeled) {
  TempDir dir;
  write_text(dir / "c.tsv", "a\tx\t1\r\nb\t\r\n\n");
  const Corpus corpus = load_corpus(dir / "c.tsv", true);
  ASSERT_EQ(corpus.size(), 2u);
  EXPECT_FALSE(corpus.labeled());
  EXPECT_EQ(corpus.tweets()[1].text, "");
  EXPECT_FALSE(corpus.tweets()[1].label.has_value());
}

TEST(LoadCorpus, WithoutLabelsDropsThirdField) {
  TempDir dir;
  write_text(dir / "c.tsv", "a\tx\t1\n");
  const Corpus corpus = load_corpus(dir / "c.tsv", false);
  EXPECT_FALSE(corpus.tweets()[0].label.has_value());
  EXPECT_FALSE(corpus.labeled());
}

TEST(MakeTweet, ReplacesTabsAndNewlines) {
  EXPECT_EQ(make_tweet("a", "x\ty\nz\r").text, "x y z ");
}

TEST(Corpus, RejectsDuplicateIds) {
  EXPECT_THROW(Corpus({make_tweet("a", "x"), make_tweet("a", "y")}), DataError);
  EXPECT_THROW(Corpus({make_tweet("", "x")}), DataError);
}

TEST(CorpusRoundTrip, WriteThenLoadIsFieldIdentical) {
  TempDir dir;
  std::mt19937_64 rng(11);
  std::vector<Tweet> tweets;
  for (int i = 0; i < 300; ++i) {
    std::optional<Label> label = (i % 2) ? Label::Relevant : Label::NotRelevant;
    tweets.push_back(make_tweet("id" + std::to_string(i), testing::noisy_tweet(rng), label));
  }
  const Corpus original(tweets);
  write_corpus(original, dir / "c.tsv");
  const Corpus loaded = load_corpus(dir / "c.tsv", true);
  EXPECT_EQ(loaded.tweets(), original.tweets());
  EXPECT_TRUE(loaded.labeled());
}

Corpus balanced(std::size_t per_class) {
  std::vector<Tweet> tweets;
  for (std::size_t i = 0; i < 2 * per_class; ++i) {
    tweets.push_back(make_tweet("t" + std::to_string(i), "text", i % 2 ? Label::Relevant : Label::NotRelevant));
  }
  return Corpus(std::move(tweets));
}

std::array<std::size_t, 2> class_counts(const Corpus& corpus) {
  std::array<std::size_t, 2> counts{};
  for (const Tweet& t : corpus.tweets()) ++counts[to_int(*t.label)];
  return counts;
}

TEST(SplitCorpus, TenTweetsTwentyPercentTakesOnePerClass) {
  // round(0.2 * 5) = 1 tweet of each class.
  const CorpusSplit split = split_corpus(balanced(5), 0.2, 7);
  EXPECT_EQ(split.dev.size(), 2u);
  EXPECT_EQ(class_counts(split.dev), (std::array<std::size_t, 2>{1, 1}));
  EXPECT_EQ(split.train.size(), 8u);
}

TEST(SplitCorpus, SameSeedSamePartition) {
  const Corpus corpus = balanced(50);
  EXPECT_EQ(split_corpus(corpus, 0.3, 99).dev.ids(), split_corpus(corpus, 0.3, 99).dev.ids());
  EXPECT_NE(split_corpus(corpus, 0.3, 99).dev.ids(), split_corpus(corpus, 0.3, 100).dev.ids());
}

TEST(SplitCorpus, RejectsUnlabeledAndSingleClass) {
  EXPECT_THROW(split_corpus(Corpus({make_tweet("a", "x"), make_tweet("b", "y")}), 0.2, 1), DataError);
  EXPECT_THROW(split_corpus(Corpus({make_tweet("a", "x", Label::Relevant), make_tweet("b", "y", Label::Relevant)}),
                            0.2, 1),
               DataError);
  EXPECT_THROW(split_corpus(balanced(3), 1.0, 1), DataError);
  EXPECT_THROW(split_corpus(balanced(3), 0.0, 1), DataError);
}

TEST(SplitCorpus, PartitionAndStratificationProperties) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    const auto n0 = testing::draw(rng, 1, 60);
    const auto n1 = testing::draw(rng, 1, 60);
    std::vector<Tweet> tweets;
    for (std::uint64_t i = 0; i < n0 + n1; ++i) {
      tweets.push_back(make_tweet("t" + std::to_string(i), "", i < n0 ? Label::NotRelevant : Label::Relevant));
    }
    std::shuffle(tweets.begin(), tweets.end(), rng);
    const Corpus corpus(tweets);
    const double fraction = 0.05 + 0.9 * testing::unit(rng);
    const CorpusSplit split = split_corpus(corpus, fraction, rng());

    const auto train_vec = split.train.ids();
    std::set<std::string> train_ids(train_vec.begin(), train_vec.end());
    const auto dev_vec = split.dev.ids();
    std::set<std::string> dev_ids(dev_vec.begin(), dev_vec.end());
    for (const auto& id : dev_ids) EXPECT_FALSE(train_ids.contains(id));
    std::set<std::string> all(train_ids);
    all.insert(dev_ids.begin(), dev_ids.end());
    const auto ids = corpus.ids();
    EXPECT_EQ(all, std::set<std::string>(ids.begin(), ids.end()));

    const auto dev_counts = class_counts(split.dev);
    EXPECT_LT(std::abs(static_cast<double>(dev_counts[0]) - fraction * static_cast<double>(n0)), 1.0);
    EXPECT_LT(std::abs(static_cast<double>(dev_counts[1]) - fraction * static_cast<double>(n1)), 1.0);

    // Both halves keep corpus order.
    auto position = [&](const std::string& id) { return std::find(ids.begin(), ids.end(), id) - ids.begin(); };
    EXPECT_TRUE(std::is_sorted(dev_vec.begin(), dev_vec.end(),
                               [&](const auto& a, const auto& b) { return position(a) < position(b); }));
  }
}

}  // namespace
}  // namespace floodrel
