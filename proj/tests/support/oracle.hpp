#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace floodrel::testing {

/// Brute-force confusion counts over parallel 0/1 vectors, positive class 1.
/// Returns {tp, fp, fn, tn}.
inline std::array<std::size_t, 4> count_confusion(const std::vector<int>& predicted, const std::vector<int>& gold) {
  std::array<std::size_t, 4> counts{};
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    const int p = predicted[i];
    const int g = gold[i];
    if (p == 1 && g == 1) ++counts[0];
    if (p == 1 && g == 0) ++counts[1];
    if (p == 0 && g == 1) ++counts[2];
    if (p == 0 && g == 0) ++counts[3];
  }
  return counts;
}

}  // namespace floodrel::testing
