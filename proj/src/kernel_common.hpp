#pragma once

#include <bit>
#include <cstdint>
#include <numeric>
#include <span>
#include <vector>

#include "smc/permutation.hpp"

namespace smc::kernels::detail {

inline constexpr std::uint64_t kChunk = 4096;

// All m-subsets of {0..n-1} in lexicographic order.
inline std::vector<std::vector<int>> subsets(int n, int m) {
  std::vector<std::vector<int>> out;
  std::vector<int> s(static_cast<std::size_t>(m));
  std::iota(s.begin(), s.end(), 0);
  while (true) {
    out.push_back(s);
    int t = m - 1;
    while (t >= 0 && s[static_cast<std::size_t>(t)] == n - m + t) --t;
    if (t < 0) break;
    ++s[static_cast<std::size_t>(t)];
    for (int u = t + 1; u < m; ++u) s[static_cast<std::size_t>(u)] = s[static_cast<std::size_t>(u - 1)] + 1;
  }
  return out;
}

// Rank of the injection F -> values, (perm[F_0], ..., perm[F_{m-1}]), in [0, n!/(n-m)!).
inline std::uint32_t injection_key(const int* perm, const std::vector<int>& fixed, int n) {
  std::uint32_t used = 0;
  std::uint32_t key = 0;
  for (std::size_t i = 0; i < fixed.size(); ++i) {
    const int v = perm[fixed[i]];
    const std::uint32_t below = (std::uint32_t{1} << (v - 1)) - 1;
    const auto digit = static_cast<std::uint32_t>((v - 1) - std::popcount(used & below));
    key = key * static_cast<std::uint32_t>(n - static_cast<int>(i)) + digit;
    used |= std::uint32_t{1} << (v - 1);
  }
  return key;
}


}  // namespace smc::kernels::detail
