#include "smc/permutation.hpp"

#include <bit>
#include <limits>
#include <numeric>

#include "smc/errors.hpp"

namespace smc {

bool is_permutation_of_1_to_n(std::span<const int> items) {
  std::vector<bool> seen(items.size() + 1, false);
  for (int v : items) {
    if (v < 1 || static_cast<std::size_t>(v) > items.size() || seen[static_cast<std::size_t>(v)])
      return false;
    seen[static_cast<std::size_t>(v)] = true;
  }
  return true;
}

Permutation::Permutation(std::vector<int> items) : items_(std::move(items)) {
  if (!is_permutation_of_1_to_n(items_))
    throw DomainError("not a permutation of 1..N: [" + to_string() + "]");
}

Permutation::Permutation(std::initializer_list<int> items)
    : Permutation(std::vector<int>(items)) {}

Permutation Permutation::identity(int n) {
  std::vector<int> v(static_cast<std::size_t>(n));
  std::iota(v.begin(), v.end(), 1);
  return Permutation(std::move(v));
}

Permutation Permutation::reversed(int n) {
  std::vector<int> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = n - i;
  return Permutation(std::move(v));
}

void Permutation::swap_positions(int i, int j) {
  std::swap(items_[static_cast<std::size_t>(i)], items_[static_cast<std::size_t>(j)]);
}

std::string Permutation::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < items_.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(items_[i]);
  }
  return out;
}

std::uint64_t factorial_u64(int n) {
  if (n < 0 || n > 20) throw DomainError("factorial out of 64-bit range: " + std::to_string(n));
  std::uint64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

std::uint64_t falling_factorial_u64(int n, int k) {
  if (k < 0 || k > n) throw DomainError("falling factorial needs 0 <= k <= n");
  std::uint64_t f = 1;
  for (int i = 0; i < k; ++i) {
    const auto factor = static_cast<std::uint64_t>(n - i);
    if (f > std::numeric_limits<std::uint64_t>::max() / factor)
      throw DomainError("falling factorial overflows 64 bits");
    f *= factor;
  }
  return f;
}

std::uint64_t binomial_u64(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t c = 1;
  for (int i = 1; i <= k; ++i) c = c * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return c;
}

Rank lehmer_rank(std::span<const int> items) {
  const int n = static_cast<int>(items.size());
  // Values fit in a 64-bit mask for every n we can rank (n <= 20).
  std::uint64_t used = 0;
  Rank rank = 0;
  for (int i = 0; i < n; ++i) {
    const int v = items[static_cast<std::size_t>(i)];
    const std::uint64_t below = (std::uint64_t{1} << (v - 1)) - 1;
    const int smaller_unused = (v - 1) - std::popcount(used & below);
    rank = rank * static_cast<Rank>(n - i) + static_cast<Rank>(smaller_unused);
    used |= std::uint64_t{1} << (v - 1);
  }
  return rank;
}

void lehmer_unrank_into(Rank rank, std::span<int> out) {
  const int n = static_cast<int>(out.size());
  std::vector<int> digits(static_cast<std::size_t>(n));
  for (int i = n - 1; i >= 0; --i) {
    const auto base = static_cast<Rank>(n - i);
    digits[static_cast<std::size_t>(i)] = static_cast<int>(rank % base);
    rank /= base;
  }
  std::vector<int> pool(static_cast<std::size_t>(n));
  std::iota(pool.begin(), pool.end(), 1);
  for (int i = 0; i < n; ++i) {
    auto it = pool.begin() + digits[static_cast<std::size_t>(i)];
    out[static_cast<std::size_t>(i)] = *it;
    pool.erase(it);
  }
}

Permutation lehmer_unrank(Rank rank, int n) {
  if (n > 20) throw DomainError("cannot unrank permutations with N > 20");
  if (rank >= factorial_u64(n)) throw DomainError("rank out of range");
  std::vector<int> items(static_cast<std::size_t>(n));
  lehmer_unrank_into(rank, items);
  return Permutation(std::move(items));
}

}  // namespace smc
