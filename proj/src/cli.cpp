#include "floodrel/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <sstream>

#include "floodrel/baseline_model.hpp"
#include "floodrel/corpus.hpp"
#include "floodrel/file_util.hpp"
#include "floodrel/fusion.hpp"
#include "floodrel/metrics.hpp"
#include "floodrel/normalize.hpp"
#include "floodrel/score_io.hpp"

namespace floodrel::cli {

namespace fs = std::filesystem;

namespace {

constexpr const char* kBaselineName = "baseline";

NormalizerConfig make_normalizer(const NormalizerFlags& flags) {
  NormalizerConfig config = NormalizerConfig::defaults();
  if (!flags.stopwords_path.empty()) config.stopwords = load_stopwords(flags.stopwords_path);
  config.keep_hashtag_words = !flags.drop_hashtag_words;
  config.unicode_fold = !flags.no_unicode_fold;
  return config;
}

void add_normalizer_flags(CLI::App& cmd, NormalizerFlags& flags) {
  cmd.add_option("--stopwords", flags.stopwords_path, "Stopword list, one word per line (default: bundled English list)");
  cmd.add_flag("--drop-hashtag-words", flags.drop_hashtag_words, "Remove hashtags entirely instead of keeping the word");
  cmd.add_flag("--no-unicode-fold", flags.no_unicode_fold, "Lowercase only; skip Unicode compatibility folding");
}

Corpus load_labeled(const fs::path& path) {
  Corpus corpus = load_corpus(path, true);
  if (!corpus.labeled()) throw DataError(path.string() + ": every line needs a 0/1 label");
  return corpus;
}

std::string hex64(std::uint64_t value) {
  char buffer[17];
  std::snprintf(buffer, sizeof buffer, "%016llx", static_cast<unsigned long long>(value));
  return buffer;
}

std::string describe(const ExperimentConfig& c) {
  std::ostringstream out;
  auto file_line = [&](const std::string& key, const fs::path& path) {
    if (path.empty()) return;
    out << key << '=' << path.string() << '\n';
    out << key << ".fnv1a64=" << hex64(fnv1a64(read_file(path))) << '\n';
  };
  file_line("train", c.train);
  file_line("dev", c.dev);
  file_line("test", c.test);
  for (const fs::path& scores : c.score_files) file_line("scores", scores);
  out << "baseline=" << (c.baseline ? "true" : "false") << '\n';
  if (c.baseline) {
    char smoothing[40];
    std::snprintf(smoothing, sizeof smoothing, "%.17g", c.smoothing);
    out << "smoothing=" << smoothing << '\n';
  }
  char fraction[40];
  std::snprintf(fraction, sizeof fraction, "%.17g", c.dev_fraction);
  out << "dev-fraction=" << fraction << '\n';
  file_line("stopwords", c.normalizer.stopwords_path);
  out << "drop-hashtag-words=" << (c.normalizer.drop_hashtag_words ? "true" : "false") << '\n';
  out << "no-unicode-fold=" << (c.normalizer.no_unicode_fold ? "true" : "false") << '\n';
  out << "min-ensemble-size=" << c.min_ensemble_size << '\n';
  out << "seed=" << c.seed << '\n';
  return out.str();
}

// Fills options not given on the command line from `key = value` lines
// (INI/TOML syntax, keys are long option names).
void apply_config_file(CLI::App& cmd, const std::string& path) {
  if (!fs::exists(path)) throw CLI::FileError::Missing(path);
  for (const CLI::ConfigItem& item : CLI::ConfigINI().from_file(path)) {
    if (!item.parents.empty() && !(item.parents.size() == 1 && item.parents[0] == cmd.get_name())) {
      throw CLI::ConfigError("unexpected section in " + path + ": " + item.parents.front());
    }
    if (item.name == "config") throw CLI::ConfigError("config files cannot include other config files");
    CLI::Option* option = cmd.get_option_no_throw("--" + item.name);
    if (option == nullptr) throw CLI::ConfigError::Extras(item.name);
    if (option->count() > 0) continue;
    option->add_result(item.inputs);
    option->run_callback();
  }
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& config, std::ostream& out, std::ostream& err) {
  if (config.score_files.empty() && !config.baseline) {
    throw UsageError("experiment needs at least one --scores file or --baseline");
  }

  Corpus evaluated;
  std::optional<Corpus> training;
  if (!config.test.empty()) {
    evaluated = load_labeled(config.test);
  } else if (!config.dev.empty()) {
    evaluated = load_labeled(config.dev);
  } else if (!config.train.empty()) {
    CorpusSplit split = split_corpus(load_labeled(config.train), config.dev_fraction, config.seed);
    evaluated = std::move(split.dev);
    training = std::move(split.train);
  } else {
    throw UsageError("experiment needs a labeled --test, --dev or --train corpus");
  }
  if (evaluated.empty()) throw DataError("the evaluated split is empty");
  if (!training && !config.train.empty()) training = load_labeled(config.train);

  const std::string settings = describe(config);
  const fs::path run_dir = config.output_dir / ("run-" + hex64(fnv1a64(settings)));
  if (fs::exists(run_dir) && !config.force) {
    throw DataError("run directory already exists: " + run_dir.string() + " (use --force to overwrite)");
  }

  std::vector<ScoreSet> sets;
  for (const fs::path& path : config.score_files) sets.push_back(read_scores(path));
  if (config.baseline) {
    if (!training) throw UsageError("--baseline needs a --train corpus");
    const NormalizerConfig normalizer = make_normalizer(config.normalizer);
    const Corpus& train_corpus = *training;
    LabelMap labels;
    for (const Tweet& tweet : train_corpus.tweets()) labels.emplace(tweet.id, *tweet.label);
    const BaselineModel model = train(normalize_corpus(train_corpus, normalizer), labels, config.smoothing);
    ScoreSet baseline = predict_all(model, normalize_corpus(evaluated, normalizer), kBaselineName);
    write_model(model, run_dir / "baseline.nbmodel");
    write_scores(baseline, run_dir / "scores" / "baseline.tsv");
    sets.push_back(std::move(baseline));
  }

  const AlignedScores aligned = align(sets, evaluated.ids());
  if (aligned.extra_ids > 0) {
    err << "warning: " << aligned.extra_ids << " score entries refer to tweets outside the evaluated corpus\n";
  }

  LabelMap gold;
  for (const Tweet& tweet : evaluated.tweets()) gold.emplace(tweet.id, *tweet.label);

  ExperimentResult result;
  result.run_dir = run_dir;
  for (const EnsembleSpec& spec : enumerate_ensembles(aligned.model_names, config.min_ensemble_size)) {
    const std::vector<FusedScore> fused = fuse_ensemble(spec, select_models(aligned, spec.model_names));
    write_fused(spec.name, fused, run_dir / "predictions" / (spec.name + ".tsv"));
    result.reports.push_back(evaluate(predicted_labels(fused), gold, spec.name));
  }

  write_file_atomic(run_dir / "config.txt", settings);
  write_file_atomic(run_dir / "report.txt", render_report(result.reports, ReportFormat::Table));
  write_file_atomic(run_dir / "report.tsv", render_report(result.reports, ReportFormat::Delimited));

  out << render_report(result.reports, config.format);
  out << "run directory: " << run_dir.string() << '\n';
  return result;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Flood-relevance tweet classification: preprocessing, baseline scoring, late fusion and evaluation",
               "floodrel"};
  app.require_subcommand(1);

  // preprocess
  std::string pre_in;
  std::string pre_out;
  NormalizerFlags pre_norm;
  auto* preprocess = app.add_subcommand("preprocess", "Normalize a corpus into `<id>\\t<tokens>` lines");
  preprocess->add_option("-i,--input", pre_in, "Corpus file")->required();
  preprocess->add_option("-o,--output", pre_out, "Normalized output file")->required();
  add_normalizer_flags(*preprocess, pre_norm);

  // train-baseline
  std::string train_corpus_path;
  std::string train_model_path;
  double train_smoothing = 1.0;
  NormalizerFlags train_norm;
  auto* train_cmd = app.add_subcommand("train-baseline", "Train the naive Bayes baseline on a labeled corpus");
  train_cmd->add_option("-c,--corpus", train_corpus_path, "Labeled corpus file")->required();
  train_cmd->add_option("-m,--model", train_model_path, "Output model file")->required();
  train_cmd->add_option("--smoothing", train_smoothing, "Additive smoothing constant")->capture_default_str();
  add_normalizer_flags(*train_cmd, train_norm);

  // score
  std::string score_model_path;
  std::string score_corpus_path;
  std::string score_out;
  std::string score_name = kBaselineName;
  NormalizerFlags score_norm;
  auto* score_cmd = app.add_subcommand("score", "Write baseline posteriors for every tweet of a corpus");
  score_cmd->add_option("-m,--model", score_model_path, "Model file from train-baseline")->required();
  score_cmd->add_option("-c,--corpus", score_corpus_path, "Corpus file")->required();
  score_cmd->add_option("-o,--output", score_out, "Output score file")->required();
  score_cmd->add_option("--name", score_name, "Model name written to the score file header")->capture_default_str();
  add_normalizer_flags(*score_cmd, score_norm);

  // fuse
  std::vector<std::string> fuse_scores;
  std::string fuse_corpus_path;
  std::string fuse_out;
  std::string fuse_name;
  auto* fuse_cmd = app.add_subcommand("fuse", "Add the posteriors of several models and write fused predictions");
  fuse_cmd->add_option("-s,--scores", fuse_scores, "Score file (repeat for each model)")->required();
  fuse_cmd->add_option("-c,--corpus", fuse_corpus_path, "Corpus fixing the tweet ids and their order")->required();
  fuse_cmd->add_option("-o,--output", fuse_out, "Fused prediction file")->required();
  fuse_cmd->add_option("--name", fuse_name, "Ensemble name (default: member names joined by '+')");

  // evaluate
  std::string eval_predictions;
  std::string eval_gold;
  std::string eval_format = "table";
  auto* eval_cmd = app.add_subcommand("evaluate", "Precision, recall and F1 of a prediction or score file");
  eval_cmd->add_option("-p,--predictions", eval_predictions, "Fused prediction file or score file")->required();
  eval_cmd->add_option("-g,--gold", eval_gold, "Labeled corpus")->required();
  eval_cmd->add_option("--format", eval_format, "Report format")
      ->check(CLI::IsMember({"table", "delimited"}))
      ->capture_default_str();

  // experiment
  ExperimentConfig exp;
  std::string exp_train;
  std::string exp_dev;
  std::string exp_test;
  std::vector<std::string> exp_scores;
  std::string exp_output = "runs";
  std::string exp_format = "table";
  auto* exp_cmd = app.add_subcommand("experiment", "Fuse and evaluate every ensemble of the given models");
  std::string exp_config;
  exp_cmd->add_option("--config", exp_config, "Key-value config file; command-line flags take precedence");
  exp_cmd->add_option("--train", exp_train, "Labeled training corpus");
  exp_cmd->add_option("--dev", exp_dev, "Labeled development corpus");
  exp_cmd->add_option("--test", exp_test, "Labeled test corpus (evaluated when given)");
  exp_cmd->add_option("-s,--scores", exp_scores, "Score file (repeat for each model)");
  exp_cmd->add_flag("--baseline", exp.baseline, "Train the naive Bayes baseline on --train and add it as a model");
  exp_cmd->add_option("--smoothing", exp.smoothing, "Baseline smoothing constant")->capture_default_str();
  exp_cmd->add_option("--dev-fraction", exp.dev_fraction, "Dev share when splitting --train")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  exp_cmd->add_option("--min-ensemble-size", exp.min_ensemble_size, "Smallest ensemble to evaluate")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  exp_cmd->add_option("--output-dir", exp_output, "Directory receiving run-<hash> folders")->capture_default_str();
  exp_cmd->add_option("--seed", exp.seed, "Seed for the dev split")->capture_default_str();
  exp_cmd->add_option("--format", exp_format, "Report format on stdout")
      ->check(CLI::IsMember({"table", "delimited"}))
      ->capture_default_str();
  exp_cmd->add_flag("--force", exp.force, "Overwrite an existing run directory");
  add_normalizer_flags(*exp_cmd, exp.normalizer);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
    if (*exp_cmd && !exp_config.empty()) apply_config_file(*exp_cmd, exp_config);
  } catch (const CLI::ParseError& e) {
    std::ostringstream cli_out;
    std::ostringstream cli_err;
    const int code = app.exit(e, cli_out, cli_err);
    out << cli_out.str();
    err << cli_err.str();
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*preprocess) {
      const Corpus corpus = load_corpus(pre_in, true);
      write_normalized(normalize_corpus(corpus, make_normalizer(pre_norm)), pre_out);
      out << "normalized " << corpus.size() << " tweets -> " << pre_out << '\n';
    } else if (*train_cmd) {
      const Corpus corpus = load_labeled(train_corpus_path);
      LabelMap labels;
      for (const Tweet& tweet : corpus.tweets()) labels.emplace(tweet.id, *tweet.label);
      const BaselineModel model = train(normalize_corpus(corpus, make_normalizer(train_norm)), labels, train_smoothing);
      write_model(model, train_model_path);
      out << "trained on " << corpus.size() << " tweets, vocabulary " << model.vocabulary().size() << " -> "
          << train_model_path << '\n';
    } else if (*score_cmd) {
      const BaselineModel model = read_model(score_model_path);
      const Corpus corpus = load_corpus(score_corpus_path, false);
      const ScoreSet set = predict_all(model, normalize_corpus(corpus, make_normalizer(score_norm)), score_name);
      write_scores(set, score_out);
      out << "scored " << set.size() << " tweets -> " << score_out << '\n';
    } else if (*fuse_cmd) {
      std::vector<ScoreSet> sets;
      for (const std::string& path : fuse_scores) sets.push_back(read_scores(path));
      const Corpus corpus = load_corpus(fuse_corpus_path, false);
      const AlignedScores aligned = align(sets, corpus.ids());
      if (aligned.extra_ids > 0) {
        err << "warning: " << aligned.extra_ids << " score entries refer to tweets outside the corpus\n";
      }
      EnsembleSpec spec = make_ensemble(aligned.model_names);
      if (!fuse_name.empty()) spec.name = fuse_name;
      const std::vector<FusedScore> fused = fuse_ensemble(spec, aligned);
      write_fused(spec.name, fused, fuse_out);
      out << "fused " << fused.size() << " tweets (" << spec.name << ") -> " << fuse_out << '\n';
    } else if (*eval_cmd) {
      const std::string contents = read_file(eval_predictions);
      FusedPredictions predictions;
      if (contents.starts_with("#model=")) {
        const ScoreSet set = parse_scores(contents, eval_predictions);
        predictions.ensemble_name = set.model_name();
        for (const ScoreVector& score : set.scores()) predictions.scores.push_back(fuse(std::span(&score, 1)));
      } else {
        predictions = parse_fused(contents, eval_predictions);
      }
      const Corpus gold_corpus = load_labeled(eval_gold);
      LabelMap gold;
      for (const Tweet& tweet : gold_corpus.tweets()) gold.emplace(tweet.id, *tweet.label);
      const EvalReport report = evaluate(predicted_labels(predictions.scores), gold, predictions.ensemble_name);
      out << render_report(std::span(&report, 1), *parse_report_format(eval_format));
    } else if (*exp_cmd) {
      exp.train = exp_train;
      exp.dev = exp_dev;
      exp.test = exp_test;
      exp.score_files.assign(exp_scores.begin(), exp_scores.end());
      exp.output_dir = exp_output;
      exp.format = *parse_report_format(exp_format);
      run_experiment(exp, out, err);
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DataError& e) {
    err << "error: " << e.what() << '\n';
    return kExitDataError;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitDataError;
  }
  return kExitOk;
}

}  // namespace floodrel::cli
