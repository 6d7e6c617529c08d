#include "smc/empirical.hpp"

#include <optional>

#include "smc/errors.hpp"
#include "smc/hillclimb.hpp"
#include "smc/kernels.hpp"

namespace smc {

OracleCost oracle_cost(Algorithm, int n, int k, bool memoized) {
  PerturbationSpec spec(n, k);
  const BigInt inputs = factorial(n);
  const BigInt members = inputs * inputs / factorial(n - k);
  OracleCost cost;
  cost.member_evaluations = members;
  cost.sort_evaluations = memoized ? inputs : members;
  cost.table_lookups = memoized ? members : BigInt(0);
  return cost;
}

namespace {

std::string cost_message(Algorithm alg, int n, int k, std::uint64_t scan_cost,
                         std::uint64_t budget) {
  const OracleCost c = oracle_cost(alg, n, k, true);
  return "exhaustive SC for " + std::string(to_string(alg)) + " N=" + std::to_string(n) +
         " K=" + std::to_string(k) + " needs " + std::to_string(scan_cost) +
         " table lookups (budget " + std::to_string(budget) + "; full group enumeration would be " +
         c.member_evaluations.str() + " evaluations)";
}

std::uint64_t scan_cost(ScanRoute route, int n, int k) {
  return route == ScanRoute::Direct ? kernels::direct_sweep_cost(n, k)
                                    : kernels::marginal_sweep_cost(n, k);
}

std::vector<std::uint64_t> group_sums(const RuntimeMemo& memo, int k, const OracleOptions& opts) {
  const auto counts = memo.counts();
  const int n = memo.n();
  if (opts.backend == Backend::Serial) {
    return opts.route == ScanRoute::Direct ? kernels::serial::group_sums_direct(counts, n, k)
                                           : kernels::serial::group_sums_marginal(counts, n, k);
  }
  return opts.route == ScanRoute::Direct ? kernels::omp::group_sums_direct(counts, n, k)
                                         : kernels::omp::group_sums_marginal(counts, n, k);
}

const RuntimeMemo& ensure_memo(Algorithm alg, int n, const OracleOptions& opts,
                               const RuntimeMemo* memo, std::optional<RuntimeMemo>& owned) {
  if (memo) {
    if (!memo->matches(alg, n, opts.sorter))
      throw DomainError("runtime memo does not match the requested algorithm/N/options");
    return *memo;
  }
  owned.emplace(RuntimeMemo::build(alg, n, opts.sorter, opts.budgets.enumeration));
  return *owned;
}

OracleResult average_case_result(Algorithm alg, int n, const OracleOptions& opts,
                                 const RuntimeMemo* memo) {
  Rational avg;
  if (memo && memo->matches(alg, n, opts.sorter)) {
    std::uint64_t total = 0;
    for (auto c : memo->counts()) total += c;
    avg = Rational(BigInt(total), BigInt(memo->counts().size()));
  } else {
    avg = average_runtime_exact(alg, n, opts.sorter, opts.budgets.enumeration);
  }
  return {{alg, n, n, to_double(avg), Source::EmpiricalExact}, avg, Permutation::identity(n)};
}

OracleResult scan(Algorithm alg, int n, int k, const OracleOptions& opts, const RuntimeMemo& memo) {
  const auto sums = group_sums(memo, k, opts);
  const auto best = opts.backend == Backend::Serial ? kernels::serial::argmax(sums)
                                                    : kernels::omp::argmax(sums);
  const std::uint64_t size = falling_factorial_u64(n, k);
  Rational exact(BigInt(best.value), BigInt(size));
  return {{alg, n, k, to_double(exact), Source::EmpiricalExact}, exact, lehmer_unrank(best.rank, n)};
}

}  // namespace

OracleResult sc_exhaustive(Algorithm alg, int n, int k, const OracleOptions& opts,
                           const RuntimeMemo* memo) {
  PerturbationSpec spec(n, k);
  if (k == n) return average_case_result(alg, n, opts, memo);
  if (n > opts.budgets.enumeration.max_n)
    throw BudgetExceeded(cost_message(alg, n, k, scan_cost(opts.route, std::min(n, 20), k),
                                      opts.budgets.exhaustive_lookups) +
                         "; N is above the enumeration cap " +
                         std::to_string(opts.budgets.enumeration.max_n));
  const std::uint64_t cost = scan_cost(opts.route, n, k);
  if (cost > opts.budgets.exhaustive_lookups)
    throw BudgetExceeded(cost_message(alg, n, k, cost, opts.budgets.exhaustive_lookups));
  std::optional<RuntimeMemo> owned;
  return scan(alg, n, k, opts, ensure_memo(alg, n, opts, memo, owned));
}

ExhaustiveSweep sc_exhaustive_sweep(Algorithm alg, int n, const std::vector<int>& ks,
                                    const OracleOptions& opts, const RuntimeMemo* memo) {
  ExhaustiveSweep sweep;
  std::optional<RuntimeMemo> owned;
  const RuntimeMemo* shared = memo;
  for (int k : ks) {
    try {
      PerturbationSpec spec(n, k);
      if (k != n && !shared) shared = &ensure_memo(alg, n, opts, nullptr, owned);
      sweep.results.push_back(sc_exhaustive(alg, n, k, opts, shared));
    } catch (const BudgetExceeded& e) {
      sweep.skipped.emplace_back(e.what());
    }
  }
  return sweep;
}

OracleResult sc_hillclimb(Algorithm alg, int n, int k, int restarts, std::uint64_t seed,
                          const OracleOptions& opts, const RuntimeMemo* memo) {
  PerturbationSpec spec(n, k);
  const std::uint64_t size = group_size_u64(n, k);
  if (size > opts.budgets.hillclimb_group)
    throw BudgetExceeded("hill-climb objective for " + std::string(to_string(alg)) + " N=" +
                         std::to_string(n) + " K=" + std::to_string(k) + " evaluates groups of " +
                         std::to_string(size) + " members (budget " +
                         std::to_string(opts.budgets.hillclimb_group) + ")");
  if (k == n) {
    OracleResult r = average_case_result(alg, n, opts, memo);
    r.record.source = Source::EmpiricalHillclimb;
    return r;
  }

  std::optional<RuntimeMemo> owned;
  const RuntimeMemo* table = nullptr;
  if (memo) {
    table = &ensure_memo(alg, n, opts, memo, owned);
  } else if (n <= opts.budgets.enumeration.max_n) {
    table = &ensure_memo(alg, n, opts, nullptr, owned);
  }

  GroupBudget group_budget{opts.budgets.hillclimb_group};
  auto objective = [&](std::span<const int> p) {
    return avg_perturbed_runtime(alg, p, k, table, opts.sorter, group_budget).sum;
  };
  HillClimbOptions hc;
  hc.restarts = restarts;
  hc.seed = seed;
  hc.parallel_neighbours = opts.backend == Backend::OpenMP;
  HillClimbOutcome out = hill_climb_max(n, objective, hc);
  Rational exact(BigInt(out.best_value), BigInt(size));
  return {{alg, n, k, to_double(exact), Source::EmpiricalHillclimb}, exact, std::move(out.witness)};
}

}  // namespace smc
