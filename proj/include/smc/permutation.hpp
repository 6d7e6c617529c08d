#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace smc {

using Rank = std::uint64_t;

// A bijection on {1..N}, stored as its one-line notation.
class Permutation {
 public:
  Permutation() = default;
  // Throws DomainError unless items is a bijection on {1..items.size()}.
  explicit Permutation(std::vector<int> items);
  Permutation(std::initializer_list<int> items);

  static Permutation identity(int n);
  static Permutation reversed(int n);

  int size() const noexcept { return static_cast<int>(items_.size()); }
  std::span<const int> items() const noexcept { return items_; }
  int operator[](int i) const { return items_[static_cast<std::size_t>(i)]; }

  void swap_positions(int i, int j);

  // Space-separated values, e.g. "3 1 2".
  std::string to_string() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  std::vector<int> items_;
};

bool is_permutation_of_1_to_n(std::span<const int> items);

// n! as an unsigned 64-bit value; throws DomainError when it does not fit (n > 20).
std::uint64_t factorial_u64(int n);

// n!/(n-k)! (falling factorial) as an unsigned 64-bit value.
std::uint64_t falling_factorial_u64(int n, int k);

std::uint64_t binomial_u64(int n, int k);

// Lehmer-code rank in [0, n!). Rank order equals lexicographic order, so the
// identity has rank 0 and std::next_permutation steps the rank by one.
Rank lehmer_rank(std::span<const int> items);
Permutation lehmer_unrank(Rank rank, int n);
// Writes the permutation of the given rank into out (size n, values 1..n).
void lehmer_unrank_into(Rank rank, std::span<int> out);

}  // namespace smc
