#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "smc/errors.hpp"
#include "smc/modular.hpp"
#include "smc/predictors.hpp"

using namespace smc;

namespace {

Dataset modular_quicksort(std::initializer_list<int> ns, int k_min = 2) {
  Dataset d;
  for (int n : ns)
    for (int k = k_min; k <= n; ++k) d.insert({Algorithm::Quicksort, n, k, modular_sc_quicksort(n, k), Source::Modular});
  return d;
}

ErrorReport against_modular(const Dataset& pred, Algorithm alg = Algorithm::Quicksort) {
  std::vector<double> p, t;
  for (const auto& r : pred.records()) {
    if (alg == Algorithm::M3Quicksort && r.k < 4) continue;
    p.push_back(r.value);
    t.push_back(alg == Algorithm::Quicksort ? modular_sc_quicksort(r.n, r.k) : modular_sc_m3quicksort(r.n, r.k));
  }
  return error_report(p, t);
}

}  // namespace

TEST_CASE("tlr feature") {
  CHECK(tlr_feature(10, 2, 45, {}) == doctest::Approx(45 * std::pow(4.2, -0.7)));
  CHECK(tlr_feature(10, 2, 45, {}) == doctest::Approx(16.479272).epsilon(1e-6));
  CHECK(tlr_feature(10, 3, 0, {}) == 0.0);
  CHECK(tlr_feature(10, 3, 45, {0.0, 0.0}) == 45.0);
  CHECK_THROWS_AS(tlr_feature(10, 2, 45, {-3.0, -0.7}), DomainError);
}

TEST_CASE("max runtime provider") {
  MaxRuntimeProvider mr;
  CHECK(mr(Algorithm::Quicksort, 10) == 45);
  CHECK(mr(Algorithm::Quicksort, 15) == 105);
  CHECK(mr(Algorithm::BubblesortOpt, 10) == 45);
  CHECK(mr(Algorithm::Mergesort, 10) == 25);
  CHECK(mr(Algorithm::Mergesort, 10) == 25);
}

TEST_CASE("tlr recovers an exact linear relationship") {
  MaxRuntimeProvider mr;
  Dataset d;
  for (int n : {10, 15, 20})
    for (int k = 2; k <= n; ++k) d.insert({Algorithm::Quicksort, n, k, tlr_feature(n, k, mr(Algorithm::Quicksort, n), {}), Source::Modular});
  const auto m = tlr_fit(d, {}, mr);
  CHECK(m.lm.coefficients[0] == doctest::Approx(1.0).epsilon(1e-9));
  for (int i = 1; i < 4; ++i) CHECK(std::abs(m.lm.coefficients[static_cast<std::size_t>(i)]) <= 1e-9);
}

TEST_CASE("tlr on modular quicksort data") {
  MaxRuntimeProvider mr;
  const auto m = tlr_fit(modular_quicksort({10, 15, 20}), {}, mr);
  const auto near = against_modular(tlr_predict(m, {40, 45, 50}, mr));
  CHECK(near.mape_percent <= 4.0);
  CHECK(near.mae <= 12.0);
  CHECK(against_modular(tlr_predict(m, {90, 95, 100}, mr)).mape_percent <= 6.5);
}

TEST_CASE("tlr input checks") {
  MaxRuntimeProvider mr;
  CHECK_THROWS_AS(tlr_fit(modular_quicksort({10}), {}, mr), FitError);
  CHECK_THROWS_AS(tlr_fit(Dataset{}, {}, mr), FitError);
}

TEST_CASE("tlr grid search") {
  MaxRuntimeProvider mr;
  const auto train = modular_quicksort({10, 15, 20});
  const auto val = modular_quicksort({40});
  std::vector<double> as = {1.8, 2.0, 2.2, 2.4};
  std::vector<double> bs = {-0.6, -0.64, -0.68, -0.7, -0.72};
  const auto best = tlr_grid_search(train, val, as, bs, mr);
  CHECK(best.validation_mae <= 7.5);

  std::mt19937_64 rng(4);
  for (int rep = 0; rep < 5; ++rep) {
    std::shuffle(as.begin(), as.end(), rng);
    std::shuffle(bs.begin(), bs.end(), rng);
    const auto again = tlr_grid_search(train, val, as, bs, mr);
    CHECK(again.cfg.a == best.cfg.a);
    CHECK(again.cfg.b == best.cfg.b);
  }

  const auto single = tlr_grid_search(train, val, {0.0}, {-0.5}, mr);
  CHECK(single.cfg.a == 0.0);
  CHECK(single.cfg.b == -0.5);
  CHECK_THROWS_AS(tlr_grid_search(train, val, {}, {-0.5}, mr), DomainError);
}

TEST_CASE("tlr grid ties prefer smaller |b| then smaller a") {
  // a has no effect when b = 0, so every a ties.
  MaxRuntimeProvider mr;
  const auto train = modular_quicksort({10, 15, 20});
  const auto val = modular_quicksort({25});
  const auto r = tlr_grid_search(train, val, {3.0, 1.0, 2.0}, {0.0}, mr);
  CHECK(r.cfg.a == 1.0);
}

TEST_CASE("nlr configuration") {
  const auto q = default_nlr_config(Algorithm::Quicksort, 5);
  CHECK(q.small_anchor_ks == std::vector<int>{2, 3, 4, 5});
  CHECK(q.uses_big_anchor);
  const auto m3 = default_nlr_config(Algorithm::M3Quicksort, 5);
  CHECK(m3.small_anchor_ks == std::vector<int>{4, 5, 6, 7});
  const auto b = default_nlr_config(Algorithm::BubblesortOpt, 4);
  CHECK(b.small_anchor_ks == std::vector<int>{2, 3, 4});
  for (auto alg : kAllAlgorithms)
    for (int t = 3; t <= 10; ++t) {
      const auto lo = default_nlr_config(alg, t);
      const auto hi = default_nlr_config(alg, t + 1);
      CHECK(static_cast<int>(lo.small_anchor_ks.size()) + 1 == t);
      CHECK(std::includes(hi.small_anchor_ks.begin(), hi.small_anchor_ks.end(), lo.small_anchor_ks.begin(),
                          lo.small_anchor_ks.end()));
    }
  CHECK_THROWS_AS(default_nlr_config(Algorithm::Quicksort, 2), DomainError);
}

TEST_CASE("nlr anchors") {
  const auto train = modular_quicksort({10, 15, 20});
  const auto a = nlr_fit_anchors(Algorithm::Quicksort, train, default_nlr_config(Algorithm::Quicksort, 5));
  CHECK(std::abs(a.small.at(2).predict({40, 0, 0}) - 673.8558) <= 1e-3);
  // Three N values and three basis functions interpolate the training data.
  for (int k : {2, 3, 4, 5})
    for (int n : {10, 15, 20})
      CHECK(a.small.at(k).predict({double(n), 0, 0}) == doctest::Approx(modular_sc_quicksort(n, k)).epsilon(1e-9));
  for (int n : {10, 15, 20}) CHECK(a.big->predict({double(n), 0, 0}) == doctest::Approx(modular_sc_quicksort(n, n)).epsilon(1e-9));
  CHECK(a.small.at(2).basis[0].kind == BasisKind::NSquared);
  CHECK(a.big->basis[0].kind == BasisKind::NLogN);

  Dataset merge, bubble;
  for (int n = 5; n <= 8; ++n)
    for (int k = 2; k <= n; ++k) {
      merge.insert({Algorithm::Mergesort, n, k, 1.0 + n - 0.1 * k, Source::EmpiricalExact});
      bubble.insert({Algorithm::BubblesortOpt, n, k, 1.0 + n - 0.1 * k, Source::EmpiricalExact});
    }
  const auto am = nlr_fit_anchors(Algorithm::Mergesort, merge, default_nlr_config(Algorithm::Mergesort, 4));
  CHECK(am.small.at(2).basis[0].kind == BasisKind::NLogN);
  CHECK(am.big->basis[0].kind == BasisKind::NLogN);
  const auto ab = nlr_fit_anchors(Algorithm::BubblesortOpt, bubble, default_nlr_config(Algorithm::BubblesortOpt, 4));
  CHECK(ab.small.at(2).basis[0].kind == BasisKind::NSquared);
  CHECK(ab.big->basis[0].kind == BasisKind::NSquared);
}

TEST_CASE("missing anchor data names the anchor") {
  try {
    nlr_fit_anchors(Algorithm::Quicksort, modular_quicksort({10, 15}), default_nlr_config(Algorithm::Quicksort, 5));
    FAIL("expected FitError");
  } catch (const FitError& e) {
    CHECK(std::string(e.what()).find("anchor K=2") != std::string::npos);
  }
  try {
    nlr_fit_anchors(Algorithm::Quicksort, modular_quicksort({10, 15, 20}, 8), default_nlr_config(Algorithm::Quicksort, 5));
    FAIL("expected FitError");
  } catch (const FitError& e) {
    CHECK(std::string(e.what()).find("anchor K=2") != std::string::npos);
  }
}

TEST_CASE("nlr on modular quicksort data") {
  const auto train = modular_quicksort({10, 15, 20});
  const auto cfg = default_nlr_config(Algorithm::Quicksort, 5);
  const auto pred = nlr_predict(Algorithm::Quicksort, train, {40, 45, 50}, cfg);
  const auto rep = against_modular(pred.data);
  CHECK(rep.mape_percent <= 1.5);
  CHECK(rep.mae <= 4.0);
  CHECK(rep.rmse <= 5.0);
  CHECK(pred.data.size() == 39 + 44 + 49);

  const auto anchors = nlr_fit_anchors(Algorithm::Quicksort, train, cfg);
  for (const auto& d : pred.diagnostics) {
    CHECK(d.fitted);
    CHECK(d.converged);
    CHECK(d.monotone);
    CHECK(d.anchor_points == 5);
    // Endpoint and anchors come straight from the anchor models.
    CHECK(pred.data.find(Algorithm::Quicksort, d.n, d.n, Source::Predicted)->value == anchors.big->predict({double(d.n), 0, 0}));
    CHECK(pred.data.find(Algorithm::Quicksort, d.n, 3, Source::Predicted)->value == anchors.small.at(3).predict({double(d.n), 0, 0}));
  }

  const auto again = nlr_predict(Algorithm::Quicksort, train, {40, 45, 50}, cfg);
  const auto r1 = pred.data.records(), r2 = again.data.records();
  REQUIRE(r1.size() == r2.size());
  for (std::size_t i = 0; i < r1.size(); ++i) CHECK(r1[i].value == r2[i].value);
}

TEST_CASE("nlr m3quicksort") {
  Dataset train;
  for (int n : {15, 20, 25})
    for (int k = 4; k <= n; ++k) train.insert({Algorithm::M3Quicksort, n, k, modular_sc_m3quicksort(n, k), Source::Modular});
  const auto pred = nlr_predict(Algorithm::M3Quicksort, train, {40, 45, 50}, default_nlr_config(Algorithm::M3Quicksort, 5));
  CHECK(against_modular(pred.data, Algorithm::M3Quicksort).mape_percent <= 2.0);
}

TEST_CASE("nlr per-target failures do not stop other targets") {
  const auto train = modular_quicksort({10, 15, 20});
  // At N*=4 only anchors 2, 3 and K=N remain: too few points for the curve.
  const auto pred = nlr_predict(Algorithm::Quicksort, train, {4, 40}, default_nlr_config(Algorithm::Quicksort, 5));
  REQUIRE(pred.diagnostics.size() == 2);
  CHECK_FALSE(pred.diagnostics[0].fitted);
  CHECK_FALSE(pred.diagnostics[0].error.empty());
  CHECK(pred.diagnostics[1].fitted);
  CHECK(pred.data.size() == 39);
  CHECK_THROWS_AS(nlr_predict(Algorithm::Quicksort, train, {}, default_nlr_config(Algorithm::Quicksort, 5)), DomainError);
}

TEST_CASE("nlr three-parameter variant") {
  auto cfg = default_nlr_config(Algorithm::Quicksort, 5);
  cfg.fixed_c = 0.05;
  const auto pred = nlr_predict(Algorithm::Quicksort, modular_quicksort({10, 15, 20}), {40}, cfg);
  CHECK(pred.diagnostics[0].params.c == 0.05);
  CHECK(pred.diagnostics[0].fitted);
}
