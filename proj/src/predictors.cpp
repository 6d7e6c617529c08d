#include "smc/predictors.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "smc/errors.hpp"

namespace smc {

double tlr_feature(int n, int k, std::uint64_t max_runtime, const TlrConfig& cfg) {
  (void)n;
  if (k + cfg.a <= 0.0) throw DomainError("tlr_feature: K + a must be positive");
  return std::pow(k + cfg.a, cfg.b) * static_cast<double>(max_runtime);
}

std::uint64_t MaxRuntimeProvider::operator()(Algorithm alg, int n) {
  std::lock_guard lock(mu_);
  const auto key = std::pair{alg, n};
  if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  const MaxStrategy strategy = alg == Algorithm::Quicksort || alg == Algorithm::BubblesortOpt
                                   ? MaxStrategy::ClosedForm
                                   : MaxStrategy::HillClimb;
  const auto r = max_runtime(alg, n, strategy, settings_.seed, settings_.restarts, settings_.sorter);
  cache_.emplace(key, r.count.comparisons);
  return r.count.comparisons;
}

namespace {

std::vector<BasisTerm> tlr_basis(const TlrConfig& cfg) {
  return {BasisTerm::tlr(cfg.a, cfg.b), BasisTerm::n(), BasisTerm::k(), BasisTerm::constant()};
}

Algorithm single_algorithm(const Dataset& d, const char* what) {
  if (d.empty()) throw FitError(std::string(what) + ": empty dataset");
  const auto recs = d.records();
  const Algorithm alg = recs.front().algorithm;
  for (const auto& r : recs)
    if (r.algorithm != alg) throw FitError(std::string(what) + ": dataset mixes algorithms");
  return alg;
}

std::vector<BasisTerm> regime_basis(Regime r) {
  if (r == Regime::Quadratic) return {BasisTerm::n_squared(), BasisTerm::n(), BasisTerm::constant()};
  return {BasisTerm::n_log_n(), BasisTerm::n(), BasisTerm::constant()};
}

}  // namespace

TlrModel tlr_fit(const Dataset& train, const TlrConfig& cfg, MaxRuntimeProvider& max_runtime) {
  const Algorithm alg = single_algorithm(train, "tlr_fit");
  const auto recs = train.records();
  std::set<int> ns;
  for (const auto& r : recs) ns.insert(r.n);
  if (recs.size() < 4 || ns.size() < 2)
    throw FitError("tlr_fit: need at least 4 records over 2 distinct N");
  std::vector<FeatureRow> x;
  std::vector<double> y;
  for (const auto& r : recs) {
    if (r.k + cfg.a <= 0.0) throw DomainError("tlr_fit: K + a must be positive");
    x.push_back({double(r.n), double(r.k), double(max_runtime(alg, r.n))});
    y.push_back(r.value);
  }
  return {alg, cfg, ols_fit(x, y, tlr_basis(cfg))};
}

Dataset tlr_predict(const TlrModel& model, const std::vector<int>& target_ns,
                    MaxRuntimeProvider& max_runtime) {
  Dataset out;
  for (int n : target_ns) {
    const double mr = double(max_runtime(model.algorithm, n));
    for (int k = 2; k <= n; ++k) {
      const double v = model.lm.predict({double(n), double(k), mr});
      if (!std::isfinite(v) || v < 0.0)
        throw FitError("tlr_predict: invalid prediction at N=" + std::to_string(n) + ", K=" + std::to_string(k));
      out.insert({model.algorithm, n, k, v, Source::Predicted});
    }
  }
  return out;
}

TlrGridResult tlr_grid_search(const Dataset& train, const Dataset& validation,
                              const std::vector<double>& a_values, const std::vector<double>& b_values,
                              MaxRuntimeProvider& max_runtime) {
  if (a_values.empty() || b_values.empty()) throw DomainError("tlr_grid_search: empty grid");
  const Algorithm alg = single_algorithm(validation, "tlr_grid_search");
  const auto vrecs = validation.records();

  std::optional<TlrGridResult> best;
  auto better = [](const TlrGridResult& x, const TlrGridResult& y) {
    if (x.validation_mae != y.validation_mae) return x.validation_mae < y.validation_mae;
    if (std::abs(x.cfg.b) != std::abs(y.cfg.b)) return std::abs(x.cfg.b) < std::abs(y.cfg.b);
    if (x.cfg.a != y.cfg.a) return x.cfg.a < y.cfg.a;
    return x.cfg.b < y.cfg.b;
  };
  for (double a : a_values) {
    for (double b : b_values) {
      const TlrConfig cfg{a, b};
      TlrModel model;
      try {
        model = tlr_fit(train, cfg, max_runtime);
      } catch (const FitError&) {
        continue;
      } catch (const DomainError&) {
        continue;
      }
      if (model.algorithm != alg) throw FitError("tlr_grid_search: train and validation algorithms differ");
      std::vector<double> pred, truth;
      for (const auto& r : vrecs) {
        pred.push_back(model.lm.predict({double(r.n), double(r.k), double(max_runtime(alg, r.n))}));
        truth.push_back(r.value);
      }
      const TlrGridResult cand{cfg, error_report(pred, truth).mae};
      if (!std::isfinite(cand.validation_mae)) continue;
      if (!best || better(cand, *best)) best = cand;
    }
  }
  if (!best) throw FitError("tlr_grid_search: no grid cell could be fitted");
  return *best;
}

NlrConfig default_nlr_config(Algorithm alg, int t) {
  if (t < 3) throw DomainError("NLR needs t >= 3");
  NlrConfig cfg;
  cfg.t = t;
  const int first = alg == Algorithm::M3Quicksort ? 4 : 2;
  for (int k = first; k < first + t - 1; ++k) cfg.small_anchor_ks.push_back(k);
  return cfg;
}

NlrAnchors nlr_fit_anchors(Algorithm alg, const Dataset& train, const NlrConfig& cfg) {
  const AlgorithmId id = algorithm_id(alg);
  const auto values = train.values_by_nk(alg);
  NlrAnchors anchors{alg, {}, std::nullopt};

  auto fit = [&](const std::string& label, const std::vector<std::pair<int, double>>& pts, Regime regime) {
    std::set<int> ns;
    for (const auto& [n, v] : pts) ns.insert(n);
    if (ns.size() < 3)
      throw FitError("missing anchor data for " + label + ": " + std::to_string(ns.size()) +
                     " distinct N, need 3");
    std::vector<FeatureRow> x;
    std::vector<double> y;
    for (const auto& [n, v] : pts) {
      x.push_back({double(n), 0.0, 0.0});
      y.push_back(v);
    }
    return ols_fit(x, y, regime_basis(regime));
  };

  for (int k : cfg.small_anchor_ks) {
    std::vector<std::pair<int, double>> pts;
    for (const auto& [nk, v] : values)
      if (nk.second == k) pts.emplace_back(nk.first, v);
    anchors.small.emplace(k, fit("anchor K=" + std::to_string(k), pts, id.worst_regime));
  }
  if (cfg.uses_big_anchor) {
    std::vector<std::pair<int, double>> pts;
    for (const auto& [nk, v] : values)
      if (nk.first == nk.second) pts.emplace_back(nk.first, v);
    anchors.big = fit("anchor K=N", pts, id.avg_regime);
  }
  return anchors;
}

namespace {

struct TargetOutput {
  std::vector<SCRecord> records;
  NlrTargetDiagnostics diag;
};

TargetOutput predict_target(const NlrAnchors& anchors, int n, const NlrConfig& cfg) {
  TargetOutput out;
  out.diag.n = n;
  const FeatureRow at{double(n), 0.0, 0.0};
  std::map<int, double> anchor_values;
  for (const auto& [k, model] : anchors.small)
    if (k < n) anchor_values[k] = model.predict(at);
  if (anchors.big) anchor_values[n] = anchors.big->predict(at);

  std::vector<CurvePoint> pts;
  for (const auto& [k, v] : anchor_values) pts.push_back({double(k), v});
  out.diag.anchor_points = static_cast<int>(pts.size());

  CurveModel curve;
  try {
    NlsOptions opts;
    opts.fixed_c = cfg.fixed_c;
    curve = nls_fit(pts, n, opts);
  } catch (const Error& e) {
    out.diag.error = e.what();
    return out;
  }
  out.diag.converged = curve.diagnostics.converged;
  out.diag.iterations = curve.diagnostics.iterations;
  out.diag.rss = curve.diagnostics.rss;
  out.diag.params = curve.p;

  std::vector<SCRecord> recs;
  double prev = 0.0;
  for (int k = 2; k <= n; ++k) {
    const auto it = anchor_values.find(k);
    const double v = it != anchor_values.end() ? it->second : curve(k);
    if (!std::isfinite(v) || v < 0.0) {
      out.diag.error = "invalid prediction at K=" + std::to_string(k);
      return out;
    }
    if (k > 2 && v > prev) out.diag.monotone = false;
    prev = v;
    recs.push_back({anchors.algorithm, n, k, v, Source::Predicted});
  }
  out.diag.fitted = true;
  out.records = std::move(recs);
  return out;
}

}  // namespace

NlrPrediction nlr_predict(const NlrAnchors& anchors, const std::vector<int>& target_ns,
                          const NlrConfig& cfg) {
  if (target_ns.empty()) throw DomainError("no targets");
  for (int n : target_ns)
    if (n < 2) throw DomainError("target N must be >= 2");
  std::vector<TargetOutput> outs(target_ns.size());
  const auto count = static_cast<long long>(target_ns.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (long long i = 0; i < count; ++i)
    outs[static_cast<std::size_t>(i)] = predict_target(anchors, target_ns[static_cast<std::size_t>(i)], cfg);

  NlrPrediction pred;
  for (auto& o : outs) {
    for (const auto& r : o.records) pred.data.insert(r);
    pred.diagnostics.push_back(std::move(o.diag));
  }
  return pred;
}

NlrPrediction nlr_predict(Algorithm alg, const Dataset& train, const std::vector<int>& target_ns,
                          const NlrConfig& cfg) {
  return nlr_predict(nlr_fit_anchors(alg, train, cfg), target_ns, cfg);
}

}  // namespace smc
