#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>

namespace floodrel {

/// Binary relevance label. The positive class is `Relevant`.
enum class Label : int { NotRelevant = 0, Relevant = 1 };

constexpr int to_int(Label label) { return static_cast<int>(label); }

/// Parses "0" or "1"; anything else yields nullopt.
inline std::optional<Label> parse_label(std::string_view text) {
  if (text == "0") return Label::NotRelevant;
  if (text == "1") return Label::Relevant;
  return std::nullopt;
}

/// Class label per tweet id.
using LabelMap = std::unordered_map<std::string, Label>;

/// Raised for malformed or inconsistent input data (bad files, violated
/// preconditions on data). The CLI maps it to exit code 1.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace floodrel
