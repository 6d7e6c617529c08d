#include "smc/algorithm.hpp"

#include <algorithm>
#include <cctype>
#include <string>

#include "smc/errors.hpp"

namespace smc {

std::string_view to_string(Algorithm a) {
  switch (a) {
    case Algorithm::Quicksort:
      return "quicksort";
    case Algorithm::M3Quicksort:
      return "m3quicksort";
    case Algorithm::BubblesortOpt:
      return "bubblesort";
    case Algorithm::Mergesort:
      return "mergesort";
  }
  return "unknown";
}

Algorithm parse_algorithm(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "quicksort" || lower == "qs") return Algorithm::Quicksort;
  if (lower == "m3quicksort" || lower == "m3q" || lower == "m3") return Algorithm::M3Quicksort;
  if (lower == "bubblesort" || lower == "bubblesort_opt" || lower == "bubble")
    return Algorithm::BubblesortOpt;
  if (lower == "mergesort" || lower == "merge") return Algorithm::Mergesort;
  throw DomainError("unknown algorithm '" + std::string(name) +
                    "' (expected quicksort, m3quicksort, bubblesort or mergesort)");
}

}  // namespace smc
