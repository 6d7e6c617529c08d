#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "smc/algorithm.hpp"
#include "smc/dataset.hpp"
#include "smc/exact.hpp"
#include "smc/perturb.hpp"
#include "smc/sorters.hpp"

namespace smc {

enum class ScanRoute {
  // Enumerate every member of every group (the definition, taken literally).
  Direct,
  // Sum marginal tables over the fixed positions; same integers, far fewer lookups.
  Marginal,
};

enum class Backend { Serial, OpenMP };

struct OracleBudgets {
  // Table lookups allowed for one exhaustive (N, K) scan.
  std::uint64_t exhaustive_lookups = 1'000'000'000;
  // Largest perturbed group evaluated per hill-climb objective call.
  std::uint64_t hillclimb_group = 10'000'000;
  EnumerationLimits enumeration{};
};

struct OracleOptions {
  SorterOptions sorter{};
  OracleBudgets budgets{};
  ScanRoute route = ScanRoute::Marginal;
  Backend backend = Backend::OpenMP;
};

// Evaluation counts following the cost model of the exhaustive approach:
//   member_evaluations = (N!)^2 / (N-K)!   sorts without a memo,
//                                          table lookups with one
//   sort_evaluations   = N! with a memo, equal to member_evaluations without
struct OracleCost {
  BigInt member_evaluations;
  BigInt sort_evaluations;
  BigInt table_lookups;
};

OracleCost oracle_cost(Algorithm alg, int n, int k, bool memoized);

struct OracleResult {
  SCRecord record;
  Rational exact;
  // Input attaining the maximum (lowest Lehmer rank on ties for exhaustive scans).
  Permutation witness;
};

// Exact SC: the maximum over all N! inputs of the perturbed-group average.
// K = N returns the average case directly. Throws BudgetExceeded (message
// carries the cost estimate) when the scan exceeds opts.budgets.
OracleResult sc_exhaustive(Algorithm alg, int n, int k, const OracleOptions& opts = {},
                           const RuntimeMemo* memo = nullptr);

// sc_exhaustive for K = 1..N sharing one memo; infeasible K are skipped and
// reported in `skipped`.
struct ExhaustiveSweep {
  std::vector<OracleResult> results;
  std::vector<std::string> skipped;
};
ExhaustiveSweep sc_exhaustive_sweep(Algorithm alg, int n, const std::vector<int>& ks,
                                    const OracleOptions& opts = {},
                                    const RuntimeMemo* memo = nullptr);

// Lower bound on SC from transposition hill climbing over inputs. Deterministic
// for fixed (restarts, seed). Uses `memo` (or builds one when N is within the
// enumeration cap) for objective evaluations, direct sorting otherwise.
OracleResult sc_hillclimb(Algorithm alg, int n, int k, int restarts, std::uint64_t seed,
                          const OracleOptions& opts = {}, const RuntimeMemo* memo = nullptr);

}  // namespace smc
