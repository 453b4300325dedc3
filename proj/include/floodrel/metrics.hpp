#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "floodrel/types.hpp"

namespace floodrel {

/// Confusion counts and derived scores for one prediction set, with
/// Relevant as the positive class. Undefined ratios are reported as 0.
struct EvalReport {
  std::string ensemble_name;
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  std::size_t tn = 0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;

  std::size_t total() const { return tp + fp + fn + tn; }
};

/// Both maps must cover the same non-empty id set; otherwise DataError
/// listing up to ten offending ids.
EvalReport evaluate(const LabelMap& predictions, const LabelMap& gold,
                    std::string ensemble_name = {});

/// Harmonic mean of precision and recall; 0 when both are 0.
double f1_from_pr(double precision, double recall);

enum class ReportFormat { Table, Delimited };

std::optional<ReportFormat> parse_report_format(std::string_view name);

/// One row per report, in the given order, scores to four decimals.
/// Delimited rows are `ensemble\tprecision\trecall\tf1`.
std::string render_report(std::span<const EvalReport> reports, ReportFormat format);

}  // namespace floodrel
