#include "smc/dataset.hpp"

#include <cmath>
#include <string>

#include "smc/errors.hpp"

namespace smc {

std::string_view to_string(Source s) {
  switch (s) {
    case Source::EmpiricalExact:
      return "empirical_exact";
    case Source::EmpiricalHillclimb:
      return "empirical_hillclimb";
    case Source::Modular:
      return "modular";
    case Source::Predicted:
      return "predicted";
  }
  return "unknown";
}

Source parse_source(std::string_view name) {
  if (name == "empirical_exact") return Source::EmpiricalExact;
  if (name == "empirical_hillclimb") return Source::EmpiricalHillclimb;
  if (name == "modular") return Source::Modular;
  if (name == "predicted") return Source::Predicted;
  throw DomainError("unknown source '" + std::string(name) + "'");
}

void validate(const SCRecord& r) {
  if (r.k < 1 || r.k > r.n)
    throw DomainError("record needs 1 <= K <= N (got N=" + std::to_string(r.n) +
                      ", K=" + std::to_string(r.k) + ")");
  if (!std::isfinite(r.value) || r.value < 0.0)
    throw DomainError("record value must be finite and nonnegative");
  // Predictions are extrapolations and may overshoot the worst case slightly.
  const double worst = 0.5 * r.n * (r.n - 1.0);
  if (r.source != Source::Predicted && r.value > worst * (1.0 + 1e-9))
    throw DomainError("record value exceeds N(N-1)/2 for N=" + std::to_string(r.n));
}

void Dataset::insert(const SCRecord& r) {
  validate(r);
  const RecordKey key{r.algorithm, r.n, r.k, r.source};
  if (!records_.emplace(key, r).second)
    throw DomainError("duplicate record (" + std::string(to_string(r.algorithm)) + ", N=" +
                      std::to_string(r.n) + ", K=" + std::to_string(r.k) + ", " +
                      std::string(to_string(r.source)) + ")");
}

void Dataset::merge(const Dataset& other) {
  for (const auto& [key, r] : other.records_) insert(r);
}

std::vector<SCRecord> Dataset::records() const {
  std::vector<SCRecord> out;
  out.reserve(records_.size());
  for (const auto& [key, r] : records_) out.push_back(r);
  return out;
}

std::optional<SCRecord> Dataset::find(Algorithm alg, int n, int k, Source source) const {
  auto it = records_.find(RecordKey{alg, n, k, source});
  if (it == records_.end()) return std::nullopt;
  return it->second;
}

std::map<std::pair<int, int>, double> Dataset::values_by_nk(Algorithm alg) const {
  std::map<std::pair<int, int>, double> out;
  for (const auto& [key, r] : records_) {
    if (r.algorithm != alg) continue;
    if (!out.emplace(std::pair{r.n, r.k}, r.value).second)
      throw DomainError("ambiguous data: several sources for (" + std::string(to_string(alg)) +
                        ", N=" + std::to_string(r.n) + ", K=" + std::to_string(r.k) + ")");
  }
  return out;
}

}  // namespace smc
