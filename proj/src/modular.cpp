#include "smc/modular.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "smc/errors.hpp"

namespace smc {

QuicksortBeta QuicksortBeta::make(int n, int k) {
  if (n < 2 || k < 1 || k > n) throw DomainError("QuicksortBeta needs n >= 2 and 1 <= K <= n");
  const double nn = n;
  return {n, k, (nn - k + 1.0) / nn, (k - 1.0) / (nn * (nn - 1.0))};
}

namespace {

void check_quicksort_domain(int n, int k, const ModularLimits& limits) {
  if (k < 1 || k > n)
    throw DomainError("K must satisfy 1 <= K <= N (got N=" + std::to_string(n) +
                      ", K=" + std::to_string(k) + ")");
  if (n > limits.quicksort_max_n)
    throw BudgetExceeded("N=" + std::to_string(n) + " is above the quicksort recurrence cap " +
                         std::to_string(limits.quicksort_max_n));
}

void check_m3_domain(int n, int k, const ModularLimits& limits) {
  if (k < 4) throw DomainError("K must be ≥ 4 for the m3quicksort recurrence (got K=" + std::to_string(k) + ")");
  if (k > n)
    throw DomainError("K must satisfy K <= N (got N=" + std::to_string(n) + ", K=" + std::to_string(k) + ")");
  if (n > limits.m3_max_n)
    throw BudgetExceeded("N=" + std::to_string(n) + " is above the m3quicksort recurrence cap " +
                         std::to_string(limits.m3_max_n));
}

// Exact pieces of the M3 weights at (n, k), n >= 4, k >= 4:
//   beta_j = (j - 1) * (alpha + gamma * (n - j))   for 2 <= j <= n-2
//   beta_{n-1} = last
struct M3Pieces {
  Rational alpha;
  Rational gamma;
  Rational last;
};

M3Pieces m3_pieces(int n, int k) {
  const Rational denom = Rational(BigInt(k) * (n - 2) * binomial(n, k));
  const Rational inner_const =
      Rational(2 * binomial(n - 4, k - 2)) +
      Rational(BigInt(2 * (k + 1)), BigInt(k - 1)) * Rational(binomial(n - 4, k - 3));
  const Rational inner_slope = Rational(BigInt(3), BigInt(k - 1)) * Rational(binomial(n - 4, k - 4));
  M3Pieces p;
  p.alpha = 2 * inner_const / denom;
  p.gamma = 2 * inner_slope / denom;
  const BigInt bracket = factorial(k) * binomial(n - 3, k) +
                         factorial(k - 1) * binomial(n - 3, k - 1) * (2 + k) +
                         2 * factorial(k - 2) * binomial(n - 3, k - 2) * (2 * k - 1) +
                         6 * factorial(k - 2) * binomial(n - 3, k - 3);
  p.last = Rational(bracket * factorial(n - k), factorial(n));
  return p;
}

}  // namespace

M3Beta M3Beta::make(int n, int k) {
  if (n < 4 || k < 4 || k > n) throw DomainError("M3Beta needs 4 <= K <= n");
  const M3Pieces p = m3_pieces(n, k);
  M3Beta b{n, k, std::vector<Rational>(static_cast<std::size_t>(n))};
  for (int j = 2; j <= n - 2; ++j)
    b.beta[static_cast<std::size_t>(j)] = (j - 1) * (p.alpha + p.gamma * (n - j));
  b.beta[static_cast<std::size_t>(n - 1)] = p.last;
  return b;
}

M3BaseValues M3BaseValues::for_convention(M3Convention conv) {
  SorterOptions opts;
  opts.m3 = conv;
  M3BaseValues base;
  base.f2 = to_double(average_runtime_exact(Algorithm::M3Quicksort, 2, opts));
  base.f3 = to_double(average_runtime_exact(Algorithm::M3Quicksort, 3, opts));
  return base;
}

std::vector<double> modular_quicksort_column(int k, int n_max) {
  if (k < 1) throw DomainError("K must be >= 1");
  std::vector<double> f(static_cast<std::size_t>(std::max(n_max, 1) + 1), 0.0);
  std::vector<double> prefix(f.size(), 0.0);  // prefix[m] = f(1) + ... + f(m)
  for (int m = 2; m <= n_max; ++m) {
    const auto beta = QuicksortBeta::make(m, std::min(k, m));
    const auto i = static_cast<std::size_t>(m);
    f[i] = (m - 1) + beta.beta_n * f[i - 1] + beta.beta_other * (prefix[i - 1] + prefix[i - 2]);
    prefix[i] = prefix[i - 1] + f[i];
  }
  f.resize(static_cast<std::size_t>(n_max + 1));
  return f;
}

double modular_sc_quicksort(int n, int k, const ModularLimits& limits) {
  check_quicksort_domain(n, k, limits);
  return modular_quicksort_column(k, n)[static_cast<std::size_t>(n)];
}

std::vector<double> modular_m3_column(int k, int n_max, const M3ModularOptions& opts) {
  if (k < 4) throw DomainError("K must be ≥ 4 for the m3quicksort recurrence");
  std::vector<double> f(static_cast<std::size_t>(std::max(n_max, 3) + 1), 0.0);
  f[2] = opts.base.f2;
  f[3] = opts.base.f3;
  std::vector<double> weight;
  for (int m = 4; m <= n_max; ++m) {
    const M3Pieces p = m3_pieces(m, std::min(k, m));
    const double alpha = to_double(p.alpha);
    const double gamma = to_double(p.gamma);
    weight.assign(static_cast<std::size_t>(m), 0.0);
    for (int j = 2; j <= m - 2; ++j) weight[static_cast<std::size_t>(j)] = (j - 1) * (alpha + gamma * (m - j));
    weight[static_cast<std::size_t>(m - 1)] = to_double(p.last);
    double s = m;
    for (int j = 2; j <= m - 1; ++j)
      s += (weight[static_cast<std::size_t>(m + 1 - j)] + weight[static_cast<std::size_t>(j)]) *
           f[static_cast<std::size_t>(j - 1)];
    f[static_cast<std::size_t>(m)] = s;
  }
  f.resize(static_cast<std::size_t>(n_max + 1));
  return f;
}

double modular_sc_m3quicksort(int n, int k, const M3ModularOptions& opts) {
  check_m3_domain(n, k, opts.limits);
  return modular_m3_column(k, n, opts)[static_cast<std::size_t>(n)];
}

ModularTable modular_table(Algorithm alg, const std::vector<int>& ns,
                           const std::vector<std::vector<int>>& ks_per_n,
                           const M3ModularOptions& opts) {
  if (alg != Algorithm::Quicksort && alg != Algorithm::M3Quicksort)
    throw DomainError("no modular recurrence for " + std::string(to_string(alg)) +
                      " (only quicksort and m3quicksort)");
  if (ns.empty()) throw DomainError("empty N range");
  if (ks_per_n.size() != ns.size()) throw DomainError("K lists must match the N list");

  ModularTable table;
  // Valid cells grouped by K; each K column is one independent sweep.
  std::map<int, std::vector<int>> cells;
  bool any_k = false;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    const int n = ns[i];
    for (int k : ks_per_n[i]) {
      any_k = true;
      try {
        if (alg == Algorithm::Quicksort)
          check_quicksort_domain(n, k, opts.limits);
        else
          check_m3_domain(n, k, opts.limits);
        cells[k].push_back(n);
      } catch (const Error& e) {
        table.warnings.push_back("skipped N=" + std::to_string(n) + " K=" + std::to_string(k) +
                                 ": " + e.what());
      }
    }
  }
  if (!any_k) throw DomainError("empty K range");

  std::vector<std::pair<int, std::vector<int>>> columns(cells.begin(), cells.end());
  std::vector<std::vector<double>> values(columns.size());
  const auto count = static_cast<long long>(columns.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (long long c = 0; c < count; ++c) {
    const auto& [k, col_ns] = columns[static_cast<std::size_t>(c)];
    const int n_max = *std::max_element(col_ns.begin(), col_ns.end());
    values[static_cast<std::size_t>(c)] = alg == Algorithm::Quicksort
                                              ? modular_quicksort_column(k, n_max)
                                              : modular_m3_column(k, n_max, opts);
  }
  for (std::size_t c = 0; c < columns.size(); ++c) {
    const int k = columns[c].first;
    for (int n : std::set<int>(columns[c].second.begin(), columns[c].second.end()))
      table.data.insert({alg, n, k, values[c][static_cast<std::size_t>(n)], Source::Modular});
  }
  return table;
}

}  // namespace smc
