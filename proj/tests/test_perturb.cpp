#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "smc/errors.hpp"
#include "smc/hillclimb.hpp"
#include "smc/perturb.hpp"

using namespace smc;

TEST_CASE("perturbation spec") {
  CHECK(PerturbationSpec(10, 5).sigma() == doctest::Approx(0.5));
  CHECK_THROWS_AS(PerturbationSpec(5, 0), DomainError);
  CHECK_THROWS_AS(PerturbationSpec(5, 6), DomainError);
}

TEST_CASE("group sizes") {
  CHECK(group_size_u64(3, 2) == 6);
  CHECK(group_size_u64(10, 5) == 30240);
  CHECK(group_size(30, 30) == factorial(30));
  for (int n = 1; n <= 6; ++n)
    for (int k = 1; k <= n; ++k) {
      std::uint64_t members = 0;
      for_each_group_member(Permutation::identity(n).items(), k, [&](std::span<const int>) { ++members; });
      CHECK(members == group_size_u64(n, k));
    }
}

TEST_CASE("group of 1 2 3 with K=2") {
  const auto g = perturbed_group(Permutation::identity(3), 2);
  REQUIRE(g.size() == 6);
  const std::vector<std::string> expected = {"1 2 3", "2 1 3", "1 2 3", "3 2 1", "1 2 3", "1 3 2"};
  for (std::size_t i = 0; i < g.size(); ++i) CHECK(g[i].to_string() == expected[i]);
  const auto avg = avg_perturbed_runtime(Algorithm::Quicksort, Permutation::identity(3).items(), 2);
  CHECK(avg.exact() == Rational(17, 6));
}

TEST_CASE("group members are permutations of the same values") {
  std::mt19937_64 rng(5);
  const auto p = random_permutation(6, rng);
  for_each_group_member(p.items(), 3, [&](std::span<const int> m) {
    CHECK(is_permutation_of_1_to_n(m));
    int moved = 0;
    for (int i = 0; i < 6; ++i) moved += m[static_cast<std::size_t>(i)] != p[i];
    CHECK(moved <= 3);
  });
}

TEST_CASE("K=1 leaves the input unchanged and K=N averages over all inputs") {
  std::mt19937_64 rng(9);
  for (auto alg : kAllAlgorithms) {
    const auto p = random_permutation(6, rng);
    CHECK(avg_perturbed_runtime(alg, p.items(), 1).value() ==
          doctest::Approx(double(count_comparisons(alg, p).comparisons)));
    CHECK(avg_perturbed_runtime(alg, p.items(), 6).exact() == average_runtime_exact(alg, 6));
  }
}

TEST_CASE("memo lookups agree with direct sorting") {
  std::mt19937_64 rng(3);
  for (auto alg : kAllAlgorithms) {
    const auto memo = RuntimeMemo::build(alg, 7);
    CHECK(memo.counts().size() == 5040);
    for (int rep = 0; rep < 10; ++rep) {
      const auto p = random_permutation(7, rng);
      CHECK(memo.lookup(p.items()) == count_comparisons(alg, p).comparisons);
      for (int k = 1; k <= 7; k += 2) {
        const auto a = avg_perturbed_runtime(alg, p.items(), k, &memo);
        const auto b = avg_perturbed_runtime(alg, p.items(), k);
        CHECK(a.sum == b.sum);
        CHECK(a.size == b.size);
      }
    }
  }
}

TEST_CASE("group budget") {
  GroupBudget tiny{100};
  CHECK_THROWS_AS(avg_perturbed_runtime(Algorithm::Quicksort, Permutation::identity(6).items(), 4, nullptr, {}, tiny),
                  BudgetExceeded);
}

TEST_CASE("memo file round trip") {
  const auto dir = std::filesystem::temp_directory_path() / "smc_test_memo";
  std::filesystem::remove_all(dir);
  SorterOptions inst{M3Convention::Instrumented};
  const auto built = RuntimeMemo::load_or_build(dir, Algorithm::M3Quicksort, 6, inst);
  CHECK(std::filesystem::exists(dir / "m3quicksort_instrumented_6.memo"));
  const auto loaded = RuntimeMemo::load(dir / "m3quicksort_instrumented_6.memo", Algorithm::M3Quicksort, 6, inst);
  REQUIRE(loaded.has_value());
  CHECK(std::equal(built.counts().begin(), built.counts().end(), loaded->counts().begin()));
  CHECK_FALSE(RuntimeMemo::load(dir / "m3quicksort_instrumented_6.memo", Algorithm::M3Quicksort, 6, {}).has_value());
  CHECK_FALSE(RuntimeMemo::load(dir / "missing.memo", Algorithm::M3Quicksort, 6, inst).has_value());
  {
    std::ofstream bad(dir / "bad.memo", std::ios::binary);
    bad << "SMCMEMO1garbage";
  }
  CHECK_FALSE(RuntimeMemo::load(dir / "bad.memo", Algorithm::M3Quicksort, 6, inst).has_value());
  std::filesystem::remove_all(dir);
}
