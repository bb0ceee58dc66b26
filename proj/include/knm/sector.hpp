#pragma once

// Pseudovacuum sector labels {l_1..l_{n-1}; k_1..k_{m-1}} and their
// enumeration.  r = sum(l) + sum(k) counts the complement-mode quanta; the
// associated root system has N - r unknowns.

#include <string>
#include <utility>
#include <vector>

namespace knm {

struct SectorLabel {
  std::vector<int> l;  // size n-1
  std::vector<int> k;  // size m-1

  int sum_l() const;
  int sum_k() const;
  int r() const { return sum_l() + sum_k(); }

  // grouping key: labels with equal (sum_l, sum_k) share one root system
  std::pair<int, int> group() const { return {sum_l(), sum_k()}; }

  bool operator==(const SectorLabel& other) const = default;
  std::string to_string() const;  // e.g. "l=(1,0) k=(0)"
};

// All labels with r <= N, ordered by r ascending then lexicographically.
std::vector<SectorLabel> enumerate_sectors(int n, int m, int N);

}  // namespace knm
