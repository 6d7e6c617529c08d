#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "smc/algorithm.hpp"
#include "smc/dataset.hpp"
#include "smc/regression.hpp"
#include "smc/sorters.hpp"

namespace smc {

// Transformed feature (K + a)^b * MaxRuntime.
struct TlrConfig {
  double a = 2.2;
  double b = -0.7;
};

double tlr_feature(int n, int k, std::uint64_t max_runtime, const TlrConfig& cfg);

struct MaxRuntimeSettings {
  std::uint64_t seed = 0;
  int restarts = 50;
  SorterOptions sorter{};
};

// MaxRuntime per (algorithm, N), cached. Closed form for quicksort and
// bubblesort, hill climbing for the others. Thread-safe.
class MaxRuntimeProvider {
 public:
  explicit MaxRuntimeProvider(MaxRuntimeSettings s = {}) : settings_(s) {}

  std::uint64_t operator()(Algorithm alg, int n);
  const MaxRuntimeSettings& settings() const { return settings_; }

 private:
  MaxRuntimeSettings settings_;
  std::mutex mu_;
  std::map<std::pair<Algorithm, int>, std::uint64_t> cache_;
};

struct TlrModel {
  Algorithm algorithm;
  TlrConfig cfg;
  LinearModel lm;  // basis {feature, N, K, 1}
};

// Throws FitError with fewer than 4 records, fewer than 2 distinct N, mixed
// algorithms, or a rank-deficient design.
TlrModel tlr_fit(const Dataset& train, const TlrConfig& cfg, MaxRuntimeProvider& max_runtime);

// PREDICTED records for 2 <= K <= N at each target N.
Dataset tlr_predict(const TlrModel& model, const std::vector<int>& target_ns,
                    MaxRuntimeProvider& max_runtime);

struct TlrGridResult {
  TlrConfig cfg;
  double validation_mae = 0.0;
};

// (a, b) with the lowest validation MAE; ties go to smaller |b|, then smaller a.
// Cells whose fit fails are skipped. Throws DomainError on an empty grid and
// FitError when no cell fits.
TlrGridResult tlr_grid_search(const Dataset& train, const Dataset& validation,
                              const std::vector<double>& a_values, const std::vector<double>& b_values,
                              MaxRuntimeProvider& max_runtime);

struct NlrConfig {
  int t = 5;
  std::vector<int> small_anchor_ks;  // fixed K anchors
  bool uses_big_anchor = true;       // the K = N anchor
  // Fit the curve with c held at this value (3-parameter variant).
  std::optional<double> fixed_c;
};

// Small anchors {2..t} (m3quicksort {4..t+2}) plus K = N.
NlrConfig default_nlr_config(Algorithm alg, int t);

struct NlrAnchors {
  Algorithm algorithm;
  std::map<int, LinearModel> small;  // keyed by K
  std::optional<LinearModel> big;
};

// One OLS model per anchor: worst-regime basis (+N, +1) for fixed K,
// average-regime basis (+N, +1) for K = N. Throws FitError naming the anchor
// when it has fewer than 3 distinct N.
NlrAnchors nlr_fit_anchors(Algorithm alg, const Dataset& train, const NlrConfig& cfg);

struct NlrTargetDiagnostics {
  int n = 0;
  bool fitted = false;
  bool converged = false;
  bool monotone = true;
  int iterations = 0;
  double rss = 0.0;
  CurveParams params;
  int anchor_points = 0;
  std::string error;
};

struct NlrPrediction {
  Dataset data;
  std::vector<NlrTargetDiagnostics> diagnostics;  // one per target, in input order
};

// Per target: anchors at N* become curve points, the curve is fitted with
// N_context = N*, and K = 2..N* is emitted with anchor K values from the
// anchor models and the rest from the curve. A failed target is reported in
// its diagnostics and produces no records.
NlrPrediction nlr_predict(const NlrAnchors& anchors, const std::vector<int>& target_ns,
                          const NlrConfig& cfg);
NlrPrediction nlr_predict(Algorithm alg, const Dataset& train, const std::vector<int>& target_ns,
                          const NlrConfig& cfg);

}  // namespace smc
