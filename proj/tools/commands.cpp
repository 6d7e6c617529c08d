#include "commands.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "manifest.hpp"
#include "smc/empirical.hpp"
#include "smc/errors.hpp"
#include "smc/io.hpp"
#include "smc/kernels.hpp"
#include "smc/modular.hpp"
#include "smc/predictors.hpp"

namespace smc::cli {

namespace {

using nlohmann::json;

struct Common {
  int workers = 0;
  std::string out = "-";
  std::string cache_dir;
  std::string convention = "fixed";
};

struct OracleArgs {
  std::string alg, mode, n, k = "2..N", route = "marginal";
  std::uint64_t seed = 0;
  int restarts = 20;
  std::uint64_t budget_lookups = 1'000'000'000;
  std::uint64_t group_budget = 10'000'000;
  int max_enum_n = 10;
};

struct MaxArgs {
  std::string alg, n, strategy = "auto";
  std::uint64_t seed = 0;
  int restarts = 20;
  int max_enum_n = 10;
};

struct PredictArgs {
  std::string model, alg, train, targets;
  int t = 5;
  double a = 2.2, b = -0.7;
  std::string anchors;
  bool no_big_anchor = false;
  std::optional<double> fixed_c;
  std::uint64_t seed = 0;
  int restarts = 50;
  std::string diag;
  std::string validation, grid_a, grid_b;
};

struct EvaluateArgs {
  std::string pred, truth, format = "csv";
};

struct PlotArgs {
  std::string data, slice, alg, source;
  std::optional<int> n, k;
};

struct ReplayArgs {
  std::string manifest, out;
};

M3Convention parse_convention(const std::string& s) {
  if (s == "fixed") return M3Convention::Fixed;
  if (s == "instrumented") return M3Convention::Instrumented;
  throw DomainError("unknown m3 convention '" + s + "' (fixed | instrumented)");
}

std::string cache_dir_or_env(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("SMC_CACHE_DIR")) return env;
  return {};
}

std::string fmt(double v) { return format_sc(v); }

// Writes data to --out (atomically) or the data stream, plus the manifest.
void emit(const Common& c, const std::string& text, std::ostream& out, RunManifest manifest) {
  if (c.out == "-") {
    out << text;
    return;
  }
  write_file_atomic(c.out, text);
  manifest.outputs.insert(manifest.outputs.begin(), c.out);
  write_manifest(manifest_path_for(c.out), manifest);
}

std::string dataset_text(const Dataset& d) {
  std::ostringstream os;
  write_dataset_csv(os, d);
  return os.str();
}

// ---------------------------------------------------------------------------
// oracle

int cmd_oracle(const OracleArgs& a, const Common& c, std::ostream& out, std::ostream& err,
               RunManifest manifest) {
  const Algorithm alg = parse_algorithm(a.alg);
  const auto ns = parse_int_list(a.n);
  const auto krange = parse_k_range(a.k);

  OracleOptions opts;
  opts.sorter.m3 = parse_convention(c.convention);
  opts.budgets.exhaustive_lookups = a.budget_lookups;
  opts.budgets.hillclimb_group = a.group_budget;
  opts.budgets.enumeration.max_n = a.max_enum_n;
  if (a.route == "marginal")
    opts.route = ScanRoute::Marginal;
  else if (a.route == "direct")
    opts.route = ScanRoute::Direct;
  else
    throw DomainError("unknown route '" + a.route + "' (marginal | direct)");
  const std::string cache = cache_dir_or_env(c.cache_dir);

  Dataset data;
  bool budget_skip = false;
  auto skip = [&](int n, int k, const std::string& why) {
    err << "skipped " << to_string(alg) << " N=" << n << " K=" << k << ": " << why << '\n';
  };

  if (a.mode == "modular") {
    if (alg != Algorithm::Quicksort && alg != Algorithm::M3Quicksort)
      throw DomainError("mode modular supports only quicksort and m3quicksort, not " +
                        std::string(to_string(alg)));
    std::vector<std::vector<int>> ks;
    for (int n : ns) ks.push_back(krange(n));
    M3ModularOptions mo;
    mo.base = M3BaseValues::for_convention(opts.sorter.m3);
    const auto table = modular_table(alg, ns, ks, mo);
    for (const auto& w : table.warnings) err << w << '\n';
    data = table.data;
    const int cap = alg == Algorithm::Quicksort ? mo.limits.quicksort_max_n : mo.limits.m3_max_n;
    budget_skip = ns.back() > cap;
  } else if (a.mode == "exhaustive" || a.mode == "hillclimb") {
    const bool exhaustive = a.mode == "exhaustive";
    for (int n : ns) {
      std::vector<int> ks;
      for (int k : krange(n)) {
        if (k < 1 || k > n)
          skip(n, k, "K must satisfy 1 <= K <= N");
        else
          ks.push_back(k);
      }
      if (ks.empty()) continue;
      std::optional<RuntimeMemo> memo;
      if (n <= opts.budgets.enumeration.max_n) {
        memo = cache.empty() ? RuntimeMemo::build(alg, n, opts.sorter, opts.budgets.enumeration)
                             : RuntimeMemo::load_or_build(cache, alg, n, opts.sorter, opts.budgets.enumeration);
      }
      if (exhaustive) {
        if (!memo) {
          for (int k : ks) {
            const auto cost = oracle_cost(alg, n, k, true);
            skip(n, k, "N! enumeration above the cap N=" + std::to_string(opts.budgets.enumeration.max_n) +
                           " (estimated " + cost.member_evaluations.str() + " group-member evaluations)");
          }
          budget_skip = true;
          continue;
        }
        const auto sweep = sc_exhaustive_sweep(alg, n, ks, opts, &*memo);
        for (const auto& r : sweep.results) data.insert(r.record);
        for (const auto& s : sweep.skipped) err << "skipped " << to_string(alg) << " N=" << n << ": " << s << '\n';
        budget_skip = budget_skip || !sweep.skipped.empty();
      } else {
        for (int k : ks) {
          try {
            data.insert(sc_hillclimb(alg, n, k, a.restarts, a.seed, opts, memo ? &*memo : nullptr).record);
          } catch (const BudgetExceeded& e) {
            skip(n, k, e.what());
            budget_skip = true;
          }
        }
      }
    }
  } else {
    throw DomainError("unknown mode '" + a.mode + "' (exhaustive | hillclimb | modular)");
  }

  if (data.empty()) {
    err << "no records written\n";
    return static_cast<int>(budget_skip ? ExitCode::Infeasible : ExitCode::Usage);
  }
  manifest.config = {{"algorithm", std::string(to_string(alg))},
                     {"mode", a.mode},
                     {"n", a.n},
                     {"k", a.k},
                     {"seed", a.seed},
                     {"restarts", a.restarts},
                     {"budget_lookups", a.budget_lookups},
                     {"hillclimb_group_budget", a.group_budget},
                     {"max_enumeration_n", a.max_enum_n},
                     {"m3_convention", c.convention},
                     {"route", a.route}};
  emit(c, dataset_text(data), out, std::move(manifest));
  return 0;
}

// ---------------------------------------------------------------------------
// maxruntime

int cmd_maxruntime(const MaxArgs& a, const Common& c, std::ostream& out, std::ostream& err,
                   RunManifest manifest) {
  (void)err;
  const Algorithm alg = parse_algorithm(a.alg);
  const auto ns = parse_int_list(a.n);
  SorterOptions sorter;
  sorter.m3 = parse_convention(c.convention);
  EnumerationLimits limits{a.max_enum_n};

  MaxStrategy strategy;
  if (a.strategy == "auto")
    strategy = alg == Algorithm::Quicksort || alg == Algorithm::BubblesortOpt ? MaxStrategy::ClosedForm
                                                                              : MaxStrategy::HillClimb;
  else if (a.strategy == "closed-form" || a.strategy == "closed")
    strategy = MaxStrategy::ClosedForm;
  else if (a.strategy == "exhaustive")
    strategy = MaxStrategy::Exhaustive;
  else if (a.strategy == "hillclimb")
    strategy = MaxStrategy::HillClimb;
  else
    throw DomainError("unknown strategy '" + a.strategy + "' (auto | closed-form | exhaustive | hillclimb)");
  const std::string cache = cache_dir_or_env(c.cache_dir);

  std::ostringstream os;
  os << "algorithm,N,max_runtime,witness\n";
  for (int n : ns) {
    if (n < 1) throw DomainError("N must be >= 1");
    std::uint64_t value = 0;
    std::string witness;
    if (strategy == MaxStrategy::Exhaustive && !cache.empty()) {
      const auto memo = RuntimeMemo::load_or_build(cache, alg, n, sorter, limits);
      const auto counts = memo.counts();
      const auto it = std::max_element(counts.begin(), counts.end());
      value = *it;
      witness = Permutation(lehmer_unrank(static_cast<Rank>(it - counts.begin()), n)).to_string();
    } else {
      const auto r = max_runtime(alg, n, strategy, a.seed, a.restarts, sorter, limits);
      value = r.count.comparisons;
      witness = r.witness.to_string();
    }
    os << to_string(alg) << ',' << n << ',' << value << ',' << witness << '\n';
  }
  manifest.config = {{"algorithm", std::string(to_string(alg))}, {"n", a.n},
                     {"strategy", a.strategy},                   {"seed", a.seed},
                     {"restarts", a.restarts},                   {"m3_convention", c.convention},
                     {"max_enumeration_n", a.max_enum_n}};
  emit(c, os.str(), out, std::move(manifest));
  return 0;
}

// ---------------------------------------------------------------------------
// predict

Dataset only_algorithm(const Dataset& d, Algorithm alg) {
  Dataset out;
  for (const auto& r : d.records())
    if (r.algorithm == alg) out.insert(r);
  return out;
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw DomainError("bad number '" + item + "' in '" + text + "'");
    }
  }
  if (out.empty()) throw DomainError("empty list '" + text + "'");
  return out;
}

int cmd_predict(const PredictArgs& a, const Common& c, std::ostream& out, std::ostream& err,
                RunManifest manifest) {
  const Algorithm alg = parse_algorithm(a.alg);
  if (a.targets.find_first_not_of(" \t") == std::string::npos) throw DomainError("no targets");
  const auto targets = parse_int_list(a.targets);
  if (targets.empty()) throw DomainError("no targets");
  const Dataset train = only_algorithm(read_dataset_csv(a.train), alg);
  if (train.empty()) throw FitError("training file has no " + std::string(to_string(alg)) + " records");

  SorterOptions sorter;
  sorter.m3 = parse_convention(c.convention);
  json diag;
  Dataset data;
  int status = 0;
  manifest.inputs.push_back(a.train);

  if (a.model == "tlr") {
    MaxRuntimeProvider mr({a.seed, a.restarts, sorter});
    TlrConfig cfg{a.a, a.b};
    if (!a.validation.empty()) {
      const Dataset val = only_algorithm(read_dataset_csv(a.validation), alg);
      const auto as = a.grid_a.empty() ? std::vector<double>{a.a} : parse_double_list(a.grid_a);
      const auto bs = a.grid_b.empty() ? std::vector<double>{a.b} : parse_double_list(a.grid_b);
      const auto best = tlr_grid_search(train, val, as, bs, mr);
      cfg = best.cfg;
      diag["grid_search"] = {{"a", cfg.a}, {"b", cfg.b}, {"validation_mae", best.validation_mae}};
      manifest.inputs.push_back(a.validation);
    }
    const auto model = tlr_fit(train, cfg, mr);
    data = tlr_predict(model, targets, mr);
    json terms = json::array();
    for (std::size_t i = 0; i < model.lm.basis.size(); ++i)
      terms.push_back({{"term", model.lm.basis[i].name()}, {"coefficient", model.lm.coefficients[i]}});
    diag["model"] = "tlr";
    diag["a"] = cfg.a;
    diag["b"] = cfg.b;
    diag["terms"] = terms;
    json mrs = json::object();
    for (int n : targets) mrs[std::to_string(n)] = mr(alg, n);
    diag["max_runtime"] = mrs;
  } else if (a.model == "nlr") {
    NlrConfig cfg = default_nlr_config(alg, a.t);
    if (!a.anchors.empty()) {
      cfg.small_anchor_ks = parse_int_list(a.anchors);
      cfg.t = static_cast<int>(cfg.small_anchor_ks.size()) + 1;
    }
    cfg.uses_big_anchor = !a.no_big_anchor;
    if (!cfg.uses_big_anchor) cfg.t -= 1;
    cfg.fixed_c = a.fixed_c;
    const auto pred = nlr_predict(alg, train, targets, cfg);
    data = pred.data;
    json targets_diag = json::array();
    for (const auto& d : pred.diagnostics) {
      targets_diag.push_back({{"N", d.n},
                              {"fitted", d.fitted},
                              {"converged", d.converged},
                              {"monotone", d.monotone},
                              {"iterations", d.iterations},
                              {"rss", d.rss},
                              {"a", d.params.a},
                              {"b", d.params.b},
                              {"c", d.params.c},
                              {"d", d.params.d},
                              {"anchor_points", d.anchor_points},
                              {"error", d.error}});
      if (!d.fitted) {
        err << "target N=" << d.n << " failed: " << d.error << '\n';
        status = static_cast<int>(ExitCode::FitFailure);
      } else {
        if (!d.converged) err << "target N=" << d.n << ": curve fit did not converge\n";
        if (!d.monotone) err << "target N=" << d.n << ": predictions not monotone in K\n";
      }
    }
    diag["model"] = "nlr";
    diag["t"] = cfg.t;
    diag["small_anchors"] = cfg.small_anchor_ks;
    diag["big_anchor"] = cfg.uses_big_anchor;
    diag["targets"] = targets_diag;
  } else {
    throw DomainError("unknown model '" + a.model + "' (tlr | nlr)");
  }

  manifest.config = {{"model", a.model},
                     {"algorithm", std::string(to_string(alg))},
                     {"targets", a.targets},
                     {"t", a.t},
                     {"anchors", a.anchors},
                     {"big_anchor", !a.no_big_anchor},
                     {"fixed_c", a.fixed_c ? json(*a.fixed_c) : json(nullptr)},
                     {"tlr_a", a.a},
                     {"tlr_b", a.b},
                     {"grid_a", a.grid_a},
                     {"grid_b", a.grid_b},
                     {"seed", a.seed},
                     {"restarts", a.restarts},
                     {"m3_convention", c.convention}};

  const std::string diag_text = diag.dump(2) + "\n";
  std::string diag_path = a.diag;
  if (diag_path.empty() && c.out != "-") diag_path = c.out + ".diag.json";
  if (diag_path.empty() || diag_path == "-")
    err << diag_text;
  else {
    write_file_atomic(diag_path, diag_text);
    manifest.outputs.push_back(diag_path);
  }

  if (data.empty()) {
    err << "no predictions produced\n";
    return static_cast<int>(ExitCode::FitFailure);
  }
  emit(c, dataset_text(data), out, std::move(manifest));
  return status;
}

// ---------------------------------------------------------------------------
// evaluate

std::string report_line(const std::string& scope, const std::string& n, const ErrorReport& r) {
  return scope + "," + n + "," + std::to_string(r.n) + "," + fmt(r.mae) + "," + fmt(r.rmse) + "," +
         fmt(r.mape_percent) + "\n";
}

int cmd_evaluate(const EvaluateArgs& a, const Common& c, std::ostream& out, std::ostream& err,
                 RunManifest manifest) {
  (void)err;
  if (a.format != "csv" && a.format != "plain") throw DomainError("unknown format '" + a.format + "' (csv | plain)");
  const Dataset pred = read_dataset_csv(a.pred);
  const Dataset truth = read_dataset_csv(a.truth);

  std::map<std::tuple<Algorithm, int, int>, double> truth_by_key;
  for (const auto& r : truth.records())
    if (!truth_by_key.emplace(std::tuple{r.algorithm, r.n, r.k}, r.value).second)
      throw DomainError("truth file has several sources for (" + std::string(to_string(r.algorithm)) +
                        ", N=" + std::to_string(r.n) + ", K=" + std::to_string(r.k) + ")");

  std::map<int, std::pair<std::vector<double>, std::vector<double>>> by_n;
  std::vector<double> all_p, all_t;
  std::map<std::tuple<Algorithm, int, int>, int> seen;
  for (const auto& r : pred.records()) {
    const auto key = std::tuple{r.algorithm, r.n, r.k};
    const auto it = truth_by_key.find(key);
    if (it == truth_by_key.end()) continue;
    if (seen[key]++)
      throw DomainError("prediction file has several sources for (" + std::string(to_string(r.algorithm)) +
                        ", N=" + std::to_string(r.n) + ", K=" + std::to_string(r.k) + ")");
    by_n[r.n].first.push_back(r.value);
    by_n[r.n].second.push_back(it->second);
    all_p.push_back(r.value);
    all_t.push_back(it->second);
  }
  if (all_p.empty()) throw DomainError("empty join");

  const auto overall = error_report(all_p, all_t);
  std::ostringstream os;
  if (a.format == "csv") {
    os << "scope,N,pairs,mae,rmse,mape_percent\n";
    os << report_line("all", "", overall);
    for (const auto& [n, pt] : by_n) os << report_line("N", std::to_string(n), error_report(pt.first, pt.second));
  } else {
    auto line = [&](const std::string& label, const ErrorReport& r) {
      os << std::left << std::setw(8) << label << std::right << std::setw(7) << r.n << "  MAE " << fmt(r.mae)
         << "  RMSE " << fmt(r.rmse) << "  MAPE " << fmt(r.mape_percent) << "%\n";
    };
    line("all", overall);
    for (const auto& [n, pt] : by_n) line("N=" + std::to_string(n), error_report(pt.first, pt.second));
  }
  manifest.inputs = {a.pred, a.truth};
  manifest.config = {{"format", a.format}, {"join", "algorithm,N,K"}};
  emit(c, os.str(), out, std::move(manifest));
  return 0;
}

// ---------------------------------------------------------------------------
// plotdata

int cmd_plotdata(const PlotArgs& a, const Common& c, std::ostream& out, std::ostream& err,
                 RunManifest manifest) {
  (void)err;
  const Dataset data = read_dataset_csv(a.data);
  std::optional<Algorithm> alg;
  std::optional<Source> src;
  if (!a.alg.empty()) alg = parse_algorithm(a.alg);
  if (!a.source.empty()) src = parse_source(a.source);

  struct Row {
    std::string alg, source;
    int x, z;
    double y;
  };
  std::vector<Row> rows;
  std::string header;
  if (a.slice == "fixN") {
    if (!a.n) throw DomainError("slice fixN needs --n");
    header = "algorithm,source,K,sc";
  } else if (a.slice == "fixK") {
    if (!a.k) throw DomainError("slice fixK needs --k");
    header = "algorithm,source,N,sc";
  } else if (a.slice == "surface") {
    header = "algorithm,source,N,K,sc";
  } else {
    throw DomainError("unknown slice '" + a.slice + "' (fixN | fixK | surface)");
  }
  for (const auto& r : data.records()) {
    if (alg && r.algorithm != *alg) continue;
    if (src && r.source != *src) continue;
    const std::string an(to_string(r.algorithm)), sn(to_string(r.source));
    if (a.slice == "fixN" && r.n == *a.n) rows.push_back({an, sn, r.k, 0, r.value});
    if (a.slice == "fixK" && r.k == *a.k) rows.push_back({an, sn, r.n, 0, r.value});
    if (a.slice == "surface") rows.push_back({an, sn, r.n, r.k, r.value});
  }
  if (rows.empty()) throw DomainError("empty slice");
  std::sort(rows.begin(), rows.end(), [](const Row& l, const Row& r) {
    return std::tie(l.alg, l.source, l.x, l.z) < std::tie(r.alg, r.source, r.x, r.z);
  });

  std::ostringstream os;
  os << header << '\n';
  for (const auto& r : rows) {
    os << r.alg << ',' << r.source << ',' << r.x << ',';
    if (a.slice == "surface") os << r.z << ',';
    os << fmt(r.y) << '\n';
  }
  manifest.inputs = {a.data};
  manifest.config = {{"slice", a.slice},
                     {"n", a.n ? json(*a.n) : json(nullptr)},
                     {"k", a.k ? json(*a.k) : json(nullptr)},
                     {"algorithm", a.alg},
                     {"source", a.source}};
  emit(c, os.str(), out, std::move(manifest));
  return 0;
}

// ---------------------------------------------------------------------------
// replay

int cmd_replay(const ReplayArgs& a, const Common& c, std::ostream& out, std::ostream& err) {
  const RunManifest m = read_manifest(a.manifest);
  if (m.command == "replay") throw DomainError("cannot replay a replay manifest");
  std::vector<std::string> args = m.args;
  if (!a.out.empty()) {
    bool replaced = false;
    for (std::size_t i = 0; i < args.size(); ++i) {
      if (args[i] == "--out" && i + 1 < args.size()) {
        args[i + 1] = a.out;
        replaced = true;
      } else if (args[i].rfind("--out=", 0) == 0) {
        args[i] = "--out=" + a.out;
        replaced = true;
      }
    }
    if (!replaced) {
      args.push_back("--out");
      args.push_back(a.out);
    }
  }
  if (c.workers > 0) {
    args.push_back("--workers");
    args.push_back(std::to_string(c.workers));
  }
  return run(args, out, err);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Smoothed complexity of comparison sorts: oracles, predictors, evaluation"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", kToolVersion);

  Common common;
  app.add_option("--workers", common.workers, "OpenMP threads (0 = runtime default)")->check(CLI::NonNegativeNumber);

  auto add_out = [&](CLI::App* sub) {
    sub->add_option("--out,-o", common.out, "output path, '-' for stdout")->capture_default_str();
  };
  auto add_conv = [&](CLI::App* sub) {
    sub->add_option("--m3-convention", common.convention, "median-of-three charge: fixed | instrumented")
        ->capture_default_str();
  };
  auto add_cache = [&](CLI::App* sub) {
    sub->add_option("--cache-dir", common.cache_dir, "runtime memo directory (default $SMC_CACHE_DIR)");
  };

  OracleArgs oa;
  auto* oracle = app.add_subcommand("oracle", "compute SC records (exhaustive, hillclimb or modular)");
  oracle->add_option("--alg", oa.alg, "quicksort | m3quicksort | bubblesort | mergesort")->required();
  oracle->add_option("--mode", oa.mode, "exhaustive | hillclimb | modular")->required();
  oracle->add_option("--n", oa.n, "N values, e.g. 10..20:5")->required();
  oracle->add_option("--k", oa.k, "K values, N allowed, e.g. 2..N")->capture_default_str();
  oracle->add_option("--seed", oa.seed)->capture_default_str();
  oracle->add_option("--restarts", oa.restarts)->capture_default_str()->check(CLI::PositiveNumber);
  oracle->add_option("--budget-lookups", oa.budget_lookups, "table lookups per exhaustive scan")->capture_default_str();
  oracle->add_option("--group-budget", oa.group_budget, "largest group per hill-climb evaluation")->capture_default_str();
  oracle->add_option("--max-enum-n", oa.max_enum_n, "largest N enumerated exhaustively")->capture_default_str();
  oracle->add_option("--route", oa.route, "marginal | direct")->capture_default_str();
  add_out(oracle);
  add_conv(oracle);
  add_cache(oracle);

  MaxArgs ma;
  auto* maxrt = app.add_subcommand("maxruntime", "largest comparison count per N");
  maxrt->add_option("--alg", ma.alg)->required();
  maxrt->add_option("--n", ma.n)->required();
  maxrt->add_option("--strategy", ma.strategy, "auto | closed-form | exhaustive | hillclimb")->capture_default_str();
  maxrt->add_option("--seed", ma.seed)->capture_default_str();
  maxrt->add_option("--restarts", ma.restarts)->capture_default_str()->check(CLI::PositiveNumber);
  maxrt->add_option("--max-enum-n", ma.max_enum_n)->capture_default_str();
  add_out(maxrt);
  add_conv(maxrt);
  add_cache(maxrt);

  PredictArgs pa;
  auto* predict = app.add_subcommand("predict", "fit TLR or NLR on a training file and predict");
  predict->add_option("--model", pa.model, "tlr | nlr")->required();
  predict->add_option("--alg", pa.alg)->required();
  predict->add_option("--train", pa.train, "training dataset CSV")->required()->check(CLI::ExistingFile);
  predict->add_option("--targets", pa.targets, "target N values")->required();
  predict->add_option("--t", pa.t, "NLR anchor count")->capture_default_str();
  predict->add_option("--anchors", pa.anchors, "NLR small anchor K override, e.g. 4..7");
  predict->add_flag("--no-big-anchor", pa.no_big_anchor, "NLR without the K=N anchor");
  predict->add_option("--fixed-c", pa.fixed_c, "NLR 3-parameter curve with c held fixed");
  predict->add_option("--a", pa.a, "TLR shift")->capture_default_str();
  predict->add_option("--b", pa.b, "TLR exponent")->capture_default_str();
  predict->add_option("--validation", pa.validation, "TLR grid search validation CSV");
  predict->add_option("--grid-a", pa.grid_a, "TLR grid of a values, comma separated");
  predict->add_option("--grid-b", pa.grid_b, "TLR grid of b values, comma separated");
  predict->add_option("--seed", pa.seed, "MaxRuntime hill-climb seed")->capture_default_str();
  predict->add_option("--restarts", pa.restarts, "MaxRuntime hill-climb restarts")->capture_default_str();
  predict->add_option("--diag", pa.diag, "diagnostics JSON path (default <out>.diag.json)");
  add_out(predict);
  add_conv(predict);

  EvaluateArgs ea;
  auto* evaluate = app.add_subcommand("evaluate", "MAE, RMSE, MAPE of predictions against truth");
  evaluate->add_option("--pred", ea.pred)->required()->check(CLI::ExistingFile);
  evaluate->add_option("--truth", ea.truth)->required()->check(CLI::ExistingFile);
  evaluate->add_option("--format", ea.format, "csv | plain")->capture_default_str();
  add_out(evaluate);

  PlotArgs pl;
  auto* plot = app.add_subcommand("plotdata", "long-format slices for external plotting");
  plot->add_option("--data", pl.data)->required()->check(CLI::ExistingFile);
  plot->add_option("--slice", pl.slice, "fixN | fixK | surface")->required();
  plot->add_option("--n", pl.n, "N for fixN");
  plot->add_option("--k", pl.k, "K for fixK");
  plot->add_option("--alg", pl.alg, "keep one algorithm");
  plot->add_option("--source", pl.source, "keep one source");
  add_out(plot);

  ReplayArgs ra;
  auto* replay = app.add_subcommand("replay", "re-run the command recorded in a manifest");
  replay->add_option("--manifest", ra.manifest)->required()->check(CLI::ExistingFile);
  replay->add_option("--out", ra.out, "write to this path instead of the recorded one");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : static_cast<int>(ExitCode::Usage);
  }

  if (common.workers > 0) kernels::omp::set_threads(common.workers);

  RunManifest manifest;
  manifest.args = strip_workers(args);
  try {
    if (oracle->parsed()) {
      manifest.command = "oracle";
      return cmd_oracle(oa, common, out, err, manifest);
    }
    if (maxrt->parsed()) {
      manifest.command = "maxruntime";
      return cmd_maxruntime(ma, common, out, err, manifest);
    }
    if (predict->parsed()) {
      manifest.command = "predict";
      return cmd_predict(pa, common, out, err, manifest);
    }
    if (evaluate->parsed()) {
      manifest.command = "evaluate";
      return cmd_evaluate(ea, common, out, err, manifest);
    }
    if (plot->parsed()) {
      manifest.command = "plotdata";
      return cmd_plotdata(pl, common, out, err, manifest);
    }
    if (replay->parsed()) return cmd_replay(ra, common, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return static_cast<int>(e.exit_code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return static_cast<int>(ExitCode::Usage);
  }
  return static_cast<int>(ExitCode::Usage);
}

}  // namespace smc::cli
