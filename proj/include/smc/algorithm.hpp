#pragma once

#include <array>
#include <string>
#include <string_view>

namespace smc {

enum class Algorithm { Quicksort, M3Quicksort, BubblesortOpt, Mergesort };

// Asymptotic class of a worst- or average-case runtime.
enum class Regime { Quadratic, NLogN };

struct AlgorithmId {
  Algorithm name;
  Regime worst_regime;
  Regime avg_regime;

  friend bool operator==(const AlgorithmId&, const AlgorithmId&) = default;
};

// Regime tags per sorter:
//   quicksort, m3quicksort  worst N^2,     average N log N
//   bubblesort (optimized)  worst N^2,     average N^2
//   mergesort               worst N log N, average N log N
constexpr AlgorithmId algorithm_id(Algorithm a) {
  switch (a) {
    case Algorithm::Quicksort:
      return {a, Regime::Quadratic, Regime::NLogN};
    case Algorithm::M3Quicksort:
      return {a, Regime::Quadratic, Regime::NLogN};
    case Algorithm::BubblesortOpt:
      return {a, Regime::Quadratic, Regime::Quadratic};
    case Algorithm::Mergesort:
      return {a, Regime::NLogN, Regime::NLogN};
  }
  return {a, Regime::Quadratic, Regime::Quadratic};
}

inline constexpr std::array<Algorithm, 4> kAllAlgorithms = {
    Algorithm::Quicksort, Algorithm::M3Quicksort, Algorithm::BubblesortOpt,
    Algorithm::Mergesort};

// Canonical lowercase name used in CSV files and on the command line.
std::string_view to_string(Algorithm a);

// Accepts the canonical names plus a few aliases ("bubblesort_opt", "m3q").
// Throws DomainError for anything else.
Algorithm parse_algorithm(std::string_view name);

}  // namespace smc
