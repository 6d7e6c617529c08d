#pragma once

#include <map>
#include <optional>
#include <string_view>
#include <tuple>
#include <vector>

#include "smc/algorithm.hpp"

namespace smc {

// Where an SC value came from.
enum class Source { EmpiricalExact, EmpiricalHillclimb, Modular, Predicted };

std::string_view to_string(Source s);
Source parse_source(std::string_view name);

struct SCRecord {
  Algorithm algorithm;
  int n = 0;
  int k = 0;
  double value = 0.0;
  Source source = Source::EmpiricalExact;
};

// Throws DomainError unless 1 <= K <= N, value is finite, 0 <= value <= N(N-1)/2.
void validate(const SCRecord& r);

struct RecordKey {
  Algorithm algorithm;
  int n;
  int k;
  Source source;

  friend auto operator<=>(const RecordKey&, const RecordKey&) = default;
};

// Records ordered by (algorithm, N, K, source); keys are unique.
class Dataset {
 public:
  Dataset() = default;

  // Throws DomainError on a malformed record or a duplicate key.
  void insert(const SCRecord& r);
  void merge(const Dataset& other);

  std::size_t size() const noexcept { return records_.size(); }
  bool empty() const noexcept { return records_.empty(); }
  std::vector<SCRecord> records() const;

  std::optional<SCRecord> find(Algorithm alg, int n, int k, Source source) const;
  // Records of one algorithm keyed by (N, K), any source. Throws DomainError
  // when two sources supply the same (N, K).
  std::map<std::pair<int, int>, double> values_by_nk(Algorithm alg) const;

 private:
  std::map<RecordKey, SCRecord> records_;
};

}  // namespace smc
