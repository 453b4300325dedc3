#pragma once

#include <cstdint>
#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "floodrel/metrics.hpp"

namespace floodrel::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDataError = 1;
inline constexpr int kExitUsage = 2;

inline constexpr std::uint64_t kDefaultSeed = 2022;

/// Raised for inconsistent flag combinations the parser cannot catch.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct NormalizerFlags {
  std::string stopwords_path;  // empty: bundled list
  bool drop_hashtag_words = false;
  bool no_unicode_fold = false;
};

/// Effective settings of one `experiment` run.
struct ExperimentConfig {
  std::filesystem::path train;
  std::filesystem::path dev;
  std::filesystem::path test;
  std::vector<std::filesystem::path> score_files;
  bool baseline = false;
  double smoothing = 1.0;
  double dev_fraction = 0.2;
  NormalizerFlags normalizer;
  std::size_t min_ensemble_size = 1;
  std::filesystem::path output_dir = "runs";
  std::uint64_t seed = kDefaultSeed;
  ReportFormat format = ReportFormat::Table;
  bool force = false;
};

struct ExperimentResult {
  std::filesystem::path run_dir;
  std::vector<EvalReport> reports;
};

/// Enumerates ensembles over every model, fuses, evaluates, and writes the
/// report plus per-ensemble predictions under `<output_dir>/run-<hash>`,
/// where the hash covers the settings and the contents of every input file.
ExperimentResult run_experiment(const ExperimentConfig& config, std::ostream& out, std::ostream& err);

/// Runs the command line. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace floodrel::cli
