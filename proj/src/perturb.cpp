#include "smc/perturb.hpp"

#include <algorithm>
#include <array>
#include <cstring>
#include <fstream>
#include <numeric>
#include <string>

#include "smc/errors.hpp"
#include "smc/kernels.hpp"

namespace smc {

PerturbationSpec::PerturbationSpec(int n, int k) : n_(n), k_(k) {
  if (k < 1 || k > n)
    throw DomainError("K must satisfy 1 <= K <= N (got N=" + std::to_string(n) +
                      ", K=" + std::to_string(k) + ")");
}

BigInt group_size(int n, int k) {
  PerturbationSpec spec(n, k);
  BigInt size = 1;
  for (int i = 0; i < k; ++i) size *= n - i;
  return size;
}

std::uint64_t group_size_u64(int n, int k) {
  PerturbationSpec spec(n, k);
  return falling_factorial_u64(n, k);
}

void for_each_group_member(std::span<const int> p, int k, const MemberVisitor& visit) {
  const int n = static_cast<int>(p.size());
  PerturbationSpec spec(n, k);
  std::vector<int> member(p.begin(), p.end());
  std::vector<int> positions(static_cast<std::size_t>(k));
  std::iota(positions.begin(), positions.end(), 0);
  std::vector<int> order(static_cast<std::size_t>(k));
  while (true) {
    std::iota(order.begin(), order.end(), 0);
    do {
      for (int t = 0; t < k; ++t)
        member[static_cast<std::size_t>(positions[static_cast<std::size_t>(t)])] =
            p[static_cast<std::size_t>(positions[static_cast<std::size_t>(order[static_cast<std::size_t>(t)])])];
      visit(member);
    } while (std::next_permutation(order.begin(), order.end()));
    for (int t = 0; t < k; ++t)
      member[static_cast<std::size_t>(positions[static_cast<std::size_t>(t)])] =
          p[static_cast<std::size_t>(positions[static_cast<std::size_t>(t)])];

    // Next k-subset of {0..n-1} in lexicographic order.
    int t = k - 1;
    while (t >= 0 && positions[static_cast<std::size_t>(t)] == n - k + t) --t;
    if (t < 0) break;
    ++positions[static_cast<std::size_t>(t)];
    for (int u = t + 1; u < k; ++u)
      positions[static_cast<std::size_t>(u)] = positions[static_cast<std::size_t>(u - 1)] + 1;
  }
}

std::vector<Permutation> perturbed_group(const Permutation& p, int k) {
  std::vector<Permutation> out;
  out.reserve(static_cast<std::size_t>(group_size_u64(p.size(), k)));
  for_each_group_member(p.items(), k, [&](std::span<const int> member) {
    out.emplace_back(std::vector<int>(member.begin(), member.end()));
  });
  return out;
}

RuntimeMemo::RuntimeMemo(Algorithm alg, int n, SorterOptions opts, std::vector<Count> counts)
    : alg_(alg), n_(n), opts_(opts), counts_(std::move(counts)) {
  if (counts_.size() != factorial_u64(n)) throw DomainError("memo table length must be N!");
}

RuntimeMemo RuntimeMemo::build(Algorithm alg, int n, const SorterOptions& opts,
                               const EnumerationLimits& limits) {
  if (n < 0) throw DomainError("N must be nonnegative");
  if (n > limits.max_n)
    throw BudgetExceeded("runtime memo for N=" + std::to_string(n) + " needs " +
                         std::to_string(n) + "! entries, above the cap N <= " +
                         std::to_string(limits.max_n));
  return RuntimeMemo(alg, n, opts, kernels::omp::memo_counts(alg, n, opts));
}

namespace {

constexpr std::array<char, 8> kMagic = {'S', 'M', 'C', 'M', 'E', 'M', 'O', '1'};

template <typename T>
void put_le(std::ostream& out, T value) {
  for (std::size_t i = 0; i < sizeof(T); ++i)
    out.put(static_cast<char>((static_cast<std::uint64_t>(value) >> (8 * i)) & 0xFF));
}

template <typename T>
bool get_le(std::istream& in, T& value) {
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    const int c = in.get();
    if (c == std::char_traits<char>::eof()) return false;
    v |= static_cast<std::uint64_t>(static_cast<unsigned char>(c)) << (8 * i);
  }
  value = static_cast<T>(v);
  return true;
}

std::uint32_t algorithm_code(Algorithm a) { return static_cast<std::uint32_t>(a); }
std::uint32_t convention_code(const SorterOptions& o) {
  return o.m3 == M3Convention::Fixed ? 0u : 1u;
}

}  // namespace

void RuntimeMemo::save(const std::filesystem::path& path) const {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  const auto tmp = std::filesystem::path(path.string() + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write memo cache " + tmp.string());
    out.write(kMagic.data(), kMagic.size());
    put_le<std::uint32_t>(out, algorithm_code(alg_));
    put_le<std::uint32_t>(out, static_cast<std::uint32_t>(n_));
    put_le<std::uint32_t>(out, convention_code(opts_));
    put_le<std::uint64_t>(out, counts_.size());
    for (Count c : counts_) put_le<std::uint16_t>(out, c);
    if (!out) throw Error("failed writing memo cache " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::optional<RuntimeMemo> RuntimeMemo::load(const std::filesystem::path& path, Algorithm alg,
                                             int n, const SorterOptions& opts) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::array<char, 8> magic{};
  in.read(magic.data(), magic.size());
  if (!in || magic != kMagic) return std::nullopt;
  std::uint32_t a = 0, nn = 0, conv = 0;
  std::uint64_t size = 0;
  if (!get_le(in, a) || !get_le(in, nn) || !get_le(in, conv) || !get_le(in, size)) return std::nullopt;
  if (a != algorithm_code(alg) || nn != static_cast<std::uint32_t>(n) ||
      conv != convention_code(opts) || n > 20 || size != factorial_u64(n))
    return std::nullopt;
  std::vector<Count> counts(static_cast<std::size_t>(size));
  for (auto& c : counts)
    if (!get_le(in, c)) return std::nullopt;
  return RuntimeMemo(alg, n, opts, std::move(counts));
}

RuntimeMemo RuntimeMemo::load_or_build(const std::filesystem::path& dir, Algorithm alg, int n,
                                       const SorterOptions& opts,
                                       const EnumerationLimits& limits) {
  const std::string name = std::string(to_string(alg)) +
                           (opts.m3 == M3Convention::Fixed ? "_fixed_" : "_instrumented_") +
                           std::to_string(n) + ".memo";
  const auto path = dir / name;
  if (auto cached = load(path, alg, n, opts)) return std::move(*cached);
  RuntimeMemo memo = build(alg, n, opts, limits);
  memo.save(path);
  return memo;
}

GroupAverage avg_perturbed_runtime(Algorithm alg, std::span<const int> p, int k,
                                   const RuntimeMemo* memo, const SorterOptions& opts,
                                   const GroupBudget& budget) {
  const int n = static_cast<int>(p.size());
  if (!is_permutation_of_1_to_n(p)) throw DomainError("input is not a permutation of 1..N");
  PerturbationSpec spec(n, k);
  const BigInt size = group_size(n, k);
  if (size > budget.max_group_size)
    throw BudgetExceeded("perturbed group of size " + size.str() + " (N=" + std::to_string(n) +
                         ", K=" + std::to_string(k) + ") exceeds the per-input budget of " +
                         std::to_string(budget.max_group_size));
  if (memo && !memo->matches(alg, n, opts))
    throw DomainError("runtime memo does not match the requested algorithm/N/options");

  GroupAverage avg;
  if (memo) {
    for_each_group_member(p, k, [&](std::span<const int> m) {
      avg.sum += memo->lookup(m);
      ++avg.size;
    });
  } else {
    ComparisonCounter counter(alg, opts);
    for_each_group_member(p, k, [&](std::span<const int> m) {
      avg.sum += counter.count(m);
      ++avg.size;
    });
  }
  return avg;
}

}  // namespace smc
