#pragma once

#include <string>
#include <vector>

#include "smc/algorithm.hpp"
#include "smc/dataset.hpp"
#include "smc/exact.hpp"
#include "smc/sorters.hpp"

namespace smc {

// Pivot-rank weights of the quicksort recurrence at list length n:
// rank n gets beta_n, every other rank beta_other.
struct QuicksortBeta {
  int n;
  int k;
  double beta_n;
  double beta_other;

  static QuicksortBeta make(int n, int k);
};

// Pivot-rank weights of the median-of-three recurrence at list length n,
// exact. beta[j] is defined for 2 <= j <= n-1; j = n-1 uses the closed form
// for the last rank, 2 <= j <= n-2 the general one. Binomials outside their
// domain are zero.
struct M3Beta {
  int n;
  int k;
  std::vector<Rational> beta;  // indexed by j; entries 0 and 1 unused

  static M3Beta make(int n, int k);
  const Rational& last() const { return beta[static_cast<std::size_t>(n - 1)]; }
};

struct ModularLimits {
  int quicksort_max_n = 3000;
  int m3_max_n = 130;
};

// Values the M3 recurrence uses for lists of length 2 and 3.
struct M3BaseValues {
  double f2 = 1.0;
  double f3 = 3.0;

  // f3 = exact M3 average at n = 3 under the given counting convention.
  static M3BaseValues for_convention(M3Convention conv);
};

struct M3ModularOptions {
  ModularLimits limits{};
  M3BaseValues base{};
};

// Sub-lists shorter than K are evaluated with K replaced by their length.

// f(n, K) for 1 <= K <= n <= limits.quicksort_max_n.
double modular_sc_quicksort(int n, int k, const ModularLimits& limits = {});
// f(m, K) for m = 0..n_max at fixed K (>= 1), one O(n_max) prefix-sum sweep.
std::vector<double> modular_quicksort_column(int k, int n_max);

// f(n, K) for 4 <= K <= n <= limits.m3_max_n.
double modular_sc_m3quicksort(int n, int k, const M3ModularOptions& opts = {});
// f(m, K) for m = 0..n_max at fixed K >= 4.
std::vector<double> modular_m3_column(int k, int n_max, const M3ModularOptions& opts = {});

struct ModularTable {
  Dataset data;
  std::vector<std::string> warnings;
};


// MODULAR records for every (N, K) in ns x ks(N); invalid cells are skipped
// with a warning. Throws DomainError on empty ranges or an algorithm without
// a recurrence. Parallel over K.
ModularTable modular_table(Algorithm alg, const std::vector<int>& ns,
                           const std::vector<std::vector<int>>& ks_per_n,
                           const M3ModularOptions& opts = {});

}  // namespace smc
