// Acceptance criteria AC-1..AC-10. One PASS/FAIL line per criterion on
// stdout; exit status is nonzero when any criterion fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "smc/empirical.hpp"
#include "smc/modular.hpp"
#include "smc/predictors.hpp"
#include "smc/regression.hpp"

using namespace smc;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
  void note(const std::string& what) { detail += (detail.empty() ? "" : "; ") + what; }
};

std::string f(double v, int prec = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", prec, v);
  return buf;
}

Dataset modular_quicksort(const std::vector<int>& ns) {
  Dataset d;
  for (int n : ns)
    for (int k = 2; k <= n; ++k) d.insert({Algorithm::Quicksort, n, k, modular_sc_quicksort(n, k), Source::Modular});
  return d;
}

ErrorReport against(const Dataset& pred, const std::function<double(int, int)>& truth) {
  std::vector<double> p, t;
  for (const auto& r : pred.records()) {
    p.push_back(r.value);
    t.push_back(truth(r.n, r.k));
  }
  return error_report(p, t);
}

std::string metrics(const ErrorReport& r) {
  return "MAE " + f(r.mae) + ", RMSE " + f(r.rmse) + ", MAPE " + f(r.mape_percent, 3) + "%";
}

// ---------------------------------------------------------------------------

Outcome ac1() {
  Outcome o;
  struct Row {
    int n, k;
    double v;
  };
  const Row rows[] = {{10, 2, 39.7305}, {10, 3, 35.6077}, {10, 4, 32.4413}, {10, 10, 24.4373},
                      {15, 2, 91.8248}, {15, 3, 81.6957}, {15, 4, 73.8442}, {40, 2, 673.8097},
                      {45, 2, 854.5003}, {50, 2, 1056.6209}};
  double worst = 0.0;
  for (const auto& r : rows) {
    const double d = std::abs(modular_sc_quicksort(r.n, r.k) - r.v);
    worst = std::max(worst, d);
    o.require(d <= 5e-4, "(" + std::to_string(r.n) + "," + std::to_string(r.k) + ") off by " + f(d, 6));
  }
  o.note("max |diff| " + f(worst, 6));

  const auto t0 = Clock::now();
  const int n_max = 3000;
  std::vector<std::vector<double>> columns(n_max + 1);
#pragma omp parallel for schedule(dynamic, 16)
  for (int k = 1; k <= n_max; ++k) columns[static_cast<std::size_t>(k)] = modular_quicksort_column(k, n_max);
  const double secs = seconds_since(t0);
  std::size_t cells = 0;
  bool finite = true;
  for (int k = 1; k <= n_max; ++k)
    for (int n = k; n <= n_max; ++n) {
      ++cells;
      finite = finite && std::isfinite(columns[static_cast<std::size_t>(k)][static_cast<std::size_t>(n)]);
    }
  o.require(finite, "non-finite table cell");
  o.require(secs < 60.0, "full table took " + f(secs, 1) + " s");
  o.note("full table N<=3000 (" + std::to_string(cells) + " cells) in " + f(secs, 2) + " s");
  return o;
}

Outcome ac2() {
  Outcome o;
  const std::vector<FeatureRow> x = {{10, 0, 0}, {15, 0, 0}, {20, 0, 0}};
  const auto m = ols_fit(x, {39.7305, 91.8248, 165.3564},
                         {BasisTerm::n_squared(), BasisTerm::n(), BasisTerm::constant()});
  const double expected[] = {673.8558, 854.5739, 1056.7293};
  const int ns[] = {40, 45, 50};
  for (int i = 0; i < 3; ++i) {
    const double v = m.predict({double(ns[i]), 0, 0});
    o.require(std::abs(v - expected[i]) <= 1e-3, "N=" + std::to_string(ns[i]) + " gives " + f(v));
    o.note("N=" + std::to_string(ns[i]) + " -> " + f(v));
  }
  return o;
}

Outcome ac3() {
  Outcome o;
  const auto t0 = Clock::now();
  const auto train = modular_quicksort({10, 15, 20});
  const auto pred = nlr_predict(Algorithm::Quicksort, train, {40, 45, 50}, default_nlr_config(Algorithm::Quicksort, 5));
  const auto rep = against(pred.data, [](int n, int k) { return modular_sc_quicksort(n, k); });
  const double secs = seconds_since(t0);
  o.require(rep.mape_percent <= 1.5, "MAPE");
  o.require(rep.mae <= 4.0, "MAE");
  o.require(rep.rmse <= 5.0, "RMSE");
  o.require(secs < 10.0, "runtime");
  o.require(rep.n == 39 + 44 + 49, "pair count");
  o.note(metrics(rep) + " over " + std::to_string(rep.n) + " pairs in " + f(secs, 2) + " s");
  return o;
}

Outcome ac4() {
  Outcome o;
  const auto t0 = Clock::now();
  const int n = 3000;
  std::vector<double> truth(n + 1, 0.0);
#pragma omp parallel for schedule(dynamic, 16)
  for (int k = 2; k <= n; ++k) truth[static_cast<std::size_t>(k)] = modular_quicksort_column(k, n)[n];
  const auto train = modular_quicksort({10, 15, 20});
  for (auto [t, limit] : {std::pair{5, 6.0}, std::pair{8, 4.5}}) {
    const auto pred = nlr_predict(Algorithm::Quicksort, train, {n}, default_nlr_config(Algorithm::Quicksort, t));
    const auto rep = against(pred.data, [&](int, int k) { return truth[static_cast<std::size_t>(k)]; });
    o.require(rep.mape_percent <= limit, "t=" + std::to_string(t) + " MAPE " + f(rep.mape_percent, 3) + "%");
    o.note("t=" + std::to_string(t) + " MAPE " + f(rep.mape_percent, 3) + "% (limit " + f(limit, 1) + "%)");
  }
  const double secs = seconds_since(t0);
  o.require(secs < 120.0, "runtime");
  o.note(f(secs, 2) + " s including truth");
  return o;
}

Outcome ac5() {
  Outcome o;
  MaxRuntimeProvider mr;
  const auto model = tlr_fit(modular_quicksort({10, 15, 20}), {2.2, -0.7}, mr);
  const auto truth = [](int n, int k) { return modular_sc_quicksort(n, k); };
  const auto near = against(tlr_predict(model, {40, 45, 50}, mr), truth);
  const auto far = against(tlr_predict(model, {500}, mr), truth);
  o.require(near.mape_percent <= 4.0, "N=40..50 MAPE");
  o.require(near.mae <= 12.0, "N=40..50 MAE");
  o.require(far.mape_percent <= 20.0, "N=500 MAPE");
  o.note("N=40..50: " + metrics(near) + "; N=500: MAPE " + f(far.mape_percent, 3) + "%");
  return o;
}

Outcome ac6() {
  Outcome o;
  const auto t0 = Clock::now();
  double worst = 0.0;
  std::string worst_cell;
  int over = 0, cells = 0;
  for (int n = 3; n <= 8; ++n) {
    const auto memo = RuntimeMemo::build(Algorithm::Quicksort, n);
    for (int k = 2; k <= n; ++k) {
      const double ex = sc_exhaustive(Algorithm::Quicksort, n, k, {}, &memo).record.value;
      const double mod = modular_sc_quicksort(n, k);
      const double rel = std::abs(ex - mod) / mod;
      ++cells;
      if (rel > worst) {
        worst = rel;
        worst_cell = "(" + std::to_string(n) + "," + std::to_string(k) + ")";
      }
      if (rel > 0.02) {
        ++over;
        o.require(false, "(" + std::to_string(n) + "," + std::to_string(k) + ") exhaustive " + f(ex, 6) +
                             " vs modular " + f(mod, 6) + " = " + f(100 * rel, 3) + "%");
      }
      if (k == n) o.require(rel <= 1e-9, "K=N mismatch at N=" + std::to_string(n));
    }
  }
  const auto hand = sc_exhaustive(Algorithm::Quicksort, 3, 2);
  o.require(hand.exact == Rational(17, 6), "(3,2) exhaustive is not 17/6");
  o.require(std::abs(modular_sc_quicksort(3, 2) - 17.0 / 6.0) <= 1e-9, "(3,2) modular is not 17/6");
  const double secs = seconds_since(t0);
  o.require(secs < 300.0, "runtime");
  o.note(std::to_string(cells - over) + "/" + std::to_string(cells) + " cells within 2%, worst " + worst_cell + " " +
         f(100 * worst, 3) + "%, " + f(secs, 2) + " s");
  return o;
}

Outcome ac7() {
  Outcome o;
  for (int n = 1; n <= 8; ++n) {
    Rational h = 0;
    for (int i = 1; i <= n; ++i) h += Rational(1, i);
    o.require(average_runtime_exact(Algorithm::Quicksort, n) == 2 * (n + 1) * h - 4 * n,
              "n=" + std::to_string(n) + " differs");
  }
  const double v10 = to_double(average_runtime_exact(Algorithm::Quicksort, 10));
  o.require(std::abs(v10 - 24.4373) < 5e-5, "n=10 gives " + f(v10, 6));
  o.note("exact for n<=8; n=10 -> " + f(v10, 6));
  return o;
}

Outcome ac8() {
  Outcome o;
  const auto t0 = Clock::now();
  for (auto alg : {Algorithm::BubblesortOpt, Algorithm::Mergesort}) {
    Dataset train, test;
    for (int n = 5; n <= 10; ++n) {
      std::vector<int> ks;
      for (int k = 2; k <= n; ++k) ks.push_back(k);
      const auto memo = RuntimeMemo::build(alg, n);
      const auto sweep = sc_exhaustive_sweep(alg, n, ks, {}, &memo);
      if (!sweep.skipped.empty()) {
        o.require(false, std::string(to_string(alg)) + " N=" + std::to_string(n) + " skipped: " + sweep.skipped.front());
        continue;
      }
      for (const auto& r : sweep.results) (n <= 8 ? train : test).insert(r.record);
    }
    const auto pred = nlr_predict(alg, train, {9, 10}, default_nlr_config(alg, 4));
    std::vector<double> p, t;
    for (const auto& r : test.records()) {
      const auto hit = pred.data.find(alg, r.n, r.k, Source::Predicted);
      if (!hit) continue;
      p.push_back(hit->value);
      t.push_back(r.value);
    }
    for (const auto& d : pred.diagnostics)
      if (!d.fitted) o.require(false, std::string(to_string(alg)) + " N=" + std::to_string(d.n) + ": " + d.error);
    if (p.empty()) continue;
    const auto rep = error_report(p, t);
    o.require(rep.mae <= 0.5, std::string(to_string(alg)) + " MAE");
    o.require(rep.mape_percent <= 2.0, std::string(to_string(alg)) + " MAPE");
    o.note(std::string(to_string(alg)) + ": " + metrics(rep));
  }
  const double secs = seconds_since(t0);
  o.require(secs < 1800.0, "runtime");
  o.note("exact truth, " + f(secs, 1) + " s");
  return o;
}

Outcome ac9() {
  Outcome o;
  const auto zero = error_report({3, 4, 5}, {3, 4, 5});
  o.require(zero.mae == 0 && zero.rmse == 0 && zero.mape_percent == 0, "identity report not zero");

  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(0.1, 1000.0);
  int bad = 0;
  for (int rep = 0; rep < 1000; ++rep) {
    std::vector<double> p(25), t(25);
    for (std::size_t i = 0; i < p.size(); ++i) {
      p[i] = u(rng);
      t[i] = u(rng);
    }
    const auto r = error_report(p, t);
    bad += r.rmse < r.mae;
  }
  o.require(bad == 0, std::to_string(bad) + " vectors with RMSE < MAE");

  double worst_jac = 0.0;
  std::uniform_real_distribution<double> ua(-500, 500), ub(-2.5, -0.1), uc(0.01, 0.5), ud(-100, 100);
  for (int rep = 0; rep < 500; ++rep) {
    const CurveParams p{ua(rng), ub(rng), uc(rng), ud(rng)};
    const double k = 1 + static_cast<int>(rng() % 50);
    const auto g = curve_jacobian(p, k, 50);
    for (int i = 0; i < 4; ++i) {
      CurveParams hi = p, lo = p;
      double* ph[] = {&hi.a, &hi.b, &hi.c, &hi.d};
      double* pl[] = {&lo.a, &lo.b, &lo.c, &lo.d};
      const double h = 1e-6 * std::max(1.0, std::abs(*ph[i]));
      *ph[i] += h;
      *pl[i] -= h;
      const double fd = (curve_value(hi, k, 50) - curve_value(lo, k, 50)) / (2 * h);
      const double gi = g[static_cast<std::size_t>(i)];
      worst_jac = std::max(worst_jac, std::abs(fd - gi) / std::max(1.0, std::abs(gi)));
    }
  }
  o.require(worst_jac <= 1e-5, "Jacobian relative error " + std::to_string(worst_jac));

  const CurveParams gen{100, -0.7, 0.05, 20};
  std::vector<CurvePoint> pts;
  for (int k : {2, 3, 4, 5, 40}) pts.push_back({double(k), curve_value(gen, k, 40)});
  const auto fit = nls_fit(pts, 40);
  o.require(fit.diagnostics.rss < 1e-8, "round-trip residual " + std::to_string(fit.diagnostics.rss));
  std::ostringstream os;
  os << "Jacobian rel err " << worst_jac << ", round-trip rss " << fit.diagnostics.rss;
  o.note(os.str());
  return o;
}

// ---------------------------------------------------------------------------
// AC-10 drives the installed CLI binary.

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

int sh(const std::string& cmd) { return std::system((cmd + " 2>/dev/null").c_str()); }

Outcome ac10() {
  Outcome o;
  const fs::path dir = fs::temp_directory_path() / "smc_acceptance_ac10";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const std::string cli = SMC_CLI_PATH;
  const std::string d = dir.string() + "/";

  // Inputs shared by the later commands.
  if (sh(cli + " oracle --alg quicksort --mode modular --n 10..20:5 --out " + d + "train.csv") != 0 ||
      sh(cli + " oracle --alg quicksort --mode modular --n 40..50:5 --out " + d + "truth.csv") != 0) {
    o.require(false, "could not create inputs");
    return o;
  }

  struct Cmd {
    std::string name, args, out;
    std::vector<std::string> extra;  // sidecars besides the manifest
  };
  const std::vector<Cmd> cmds = {
      {"oracle-modular", "oracle --alg m3quicksort --mode modular --n 10..40:10 --k 4..N", "o1.csv", {}},
      {"oracle-exhaustive", "oracle --alg quicksort --mode exhaustive --n 3..8 --k 2..N", "o2.csv", {}},
      {"oracle-hillclimb", "oracle --alg mergesort --mode hillclimb --n 7 --k 2..4 --seed 3 --restarts 4", "o3.csv", {}},
      {"maxruntime", "maxruntime --alg m3quicksort --n 8..12 --strategy hillclimb --seed 5 --restarts 10", "m.csv", {}},
      {"predict-nlr", "predict --model nlr --alg quicksort --train " + d + "train.csv --targets 40,45,50 --t 5",
       "pn.csv", {".diag.json"}},
      {"predict-tlr", "predict --model tlr --alg quicksort --train " + d + "train.csv --targets 40..50", "pt.csv",
       {".diag.json"}},
      {"evaluate", "evaluate --pred " + d + "train.csv --truth " + d + "train.csv", "e.csv", {}},
      {"plotdata", "plotdata --data " + d + "truth.csv --slice surface", "pl.csv", {}},
  };
  int passed = 0;
  for (const auto& c : cmds) {
    bool same = true;
    std::vector<std::string> reference;
    for (int run = 0; run < 3; ++run) {
      const int workers = run == 0 ? 1 : (run == 1 ? 1 : 4);
      const std::string out = d + c.name + "_" + std::to_string(run) + "_" + c.out;
      if (sh(cli + " " + c.args + " --workers " + std::to_string(workers) + " --out " + out) != 0) {
        same = false;
        break;
      }
      std::vector<std::string> files = {slurp(out)};
      for (const auto& e : c.extra) files.push_back(slurp(out + e));
      // Manifests record their own output path; compare with it normalised.
      std::string manifest = slurp(out + ".manifest.json");
      for (std::size_t pos; (pos = manifest.find(out)) != std::string::npos;) manifest.replace(pos, out.size(), "<out>");
      files.push_back(manifest);
      if (run == 0)
        reference = files;
      else
        same = same && files == reference;
    }
    // Replaying the manifest reproduces the output bytes.
    const std::string first = d + c.name + "_0_" + c.out;
    const std::string replayed = d + c.name + "_replay_" + c.out;
    same = same && sh(cli + " replay --manifest " + first + ".manifest.json --workers 2 --out " + replayed) == 0 &&
           slurp(replayed) == slurp(first);
    o.require(same, c.name + " not reproducible");
    passed += same;
  }
  o.note(std::to_string(passed) + "/" + std::to_string(cmds.size()) +
         " commands byte-identical across reruns, --workers 1/4 and manifest replay");
  fs::remove_all(dir);
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"AC-1", ac1}, {"AC-2", ac2}, {"AC-3", ac3}, {"AC-4", ac4}, {"AC-5", ac5},
      {"AC-6", ac6}, {"AC-7", ac7}, {"AC-8", ac8}, {"AC-9", ac9}, {"AC-10", ac10}};
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    failed += !o.pass;
    std::printf("%s %s  %s\n", name.c_str(), o.pass ? "PASS" : "FAIL", o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
