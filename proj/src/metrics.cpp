#include "floodrel/metrics.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>
#include <vector>

namespace floodrel {

namespace {

double ratio(std::size_t numerator, std::size_t denominator) {
  return denominator == 0 ? 0.0 : static_cast<double>(numerator) / static_cast<double>(denominator);
}

[[noreturn]] void report_mismatch(std::vector<std::string> offending) {
  std::sort(offending.begin(), offending.end());
  std::ostringstream msg;
  msg << "prediction and gold ids differ (" << offending.size() << " offending):";
  for (std::size_t i = 0; i < offending.size() && i < 10; ++i) msg << ' ' << offending[i];
  if (offending.size() > 10) msg << " ...";
  throw DataError(msg.str());
}

}  // namespace

EvalReport evaluate(const LabelMap& predictions, const LabelMap& gold, std::string ensemble_name) {
  if (predictions.empty() && gold.empty()) throw DataError("nothing to evaluate");

  std::vector<std::string> offending;
  for (const auto& [id, _] : predictions) {
    if (!gold.contains(id)) offending.push_back(id);
  }
  for (const auto& [id, _] : gold) {
    if (!predictions.contains(id)) offending.push_back(id);
  }
  if (!offending.empty()) report_mismatch(std::move(offending));

  EvalReport report;
  report.ensemble_name = std::move(ensemble_name);
  for (const auto& [id, predicted] : predictions) {
    const Label truth = gold.at(id);
    if (predicted == Label::Relevant) {
      ++(truth == Label::Relevant ? report.tp : report.fp);
    } else {
      ++(truth == Label::Relevant ? report.fn : report.tn);
    }
  }
  report.precision = ratio(report.tp, report.tp + report.fp);
  report.recall = ratio(report.tp, report.tp + report.fn);
  report.f1 = f1_from_pr(report.precision, report.recall);
  return report;
}

double f1_from_pr(double precision, double recall) {
  const double sum = precision + recall;
  return sum > 0.0 ? 2.0 * precision * recall / sum : 0.0;
}

std::optional<ReportFormat> parse_report_format(std::string_view name) {
  if (name == "table") return ReportFormat::Table;
  if (name == "delimited") return ReportFormat::Delimited;
  return std::nullopt;
}

std::string render_report(std::span<const EvalReport> reports, ReportFormat format) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(4);
  if (format == ReportFormat::Delimited) {
    out << "ensemble\tprecision\trecall\tf1\n";
    for (const EvalReport& r : reports) {
      out << r.ensemble_name << '\t' << r.precision << '\t' << r.recall << '\t' << r.f1 << '\n';
    }
    return out.str();
  }

  std::size_t width = std::string_view("Ensemble").size();
  for (const EvalReport& r : reports) width = std::max(width, r.ensemble_name.size());
  out << std::left << std::setw(static_cast<int>(width)) << "Ensemble" << std::right << "  " << std::setw(9)
      << "Precision" << "  " << std::setw(9) << "Recall" << "  " << std::setw(9) << "F1-Score" << '\n';
  for (const EvalReport& r : reports) {
    out << std::left << std::setw(static_cast<int>(width)) << r.ensemble_name << std::right << "  " << std::setw(9)
        << r.precision << "  " << std::setw(9) << r.recall << "  " << std::setw(9) << r.f1 << '\n';
  }
  return out.str();
}

}  // namespace floodrel
