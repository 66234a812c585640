#include "xgsc/equivalence.hpp"

#include "xgsc/objectives.hpp"

#include "test_support.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <optional>

using namespace xgsc;

namespace {

const EquivalenceCheck& check(const EquivalenceReport& r, const std::string& name) {
  for (const auto& c : r.checks) {
    if (c.name == name) return c;
  }
  throw std::runtime_error("missing check " + name);
}

std::vector<std::size_t> argmin_set(const std::vector<double>& values, double tol) {
  const double best = *std::min_element(values.begin(), values.end());
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] <= best + tol) out.push_back(i);
  }
  return out;
}

}  // namespace

TEST(RelativeResidual, Definition) {
  EXPECT_EQ(relative_residual(0.0, 0.5), 0.5);
  EXPECT_EQ(relative_residual(10.0, 12.0), 2.0 / 12.0);
  EXPECT_EQ(relative_residual(-4.0, 4.0), 2.0);
}

TEST(RandomPartition, EveryClusterUsed) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + static_cast<std::size_t>(trial % 20);
    const int k = 1 + trial % static_cast<int>(n);
    const Partition p = random_partition(n, k, rng);
    EXPECT_EQ(p.size(), n);
    EXPECT_EQ(p.k(), k);
    for (int j = 0; j < k; ++j) EXPECT_GE(p.cluster_size(j), 1u);
  }
  EXPECT_THROW(random_partition(3, 4, rng), Error);
}

TEST(VerifyEquivalences, FixtureAllPass) {
  const EquivalenceReport r = verify_equivalences(test::fixture_graph(), {.trials = 50});
  EXPECT_TRUE(r.passed());
  ASSERT_EQ(r.checks.size(), 6u);
  for (const auto& c : r.checks) {
    EXPECT_FALSE(c.skipped) << c.name;
    EXPECT_EQ(c.evaluated, 50u) << c.name;
    EXPECT_LE(c.max_residual, c.tolerance) << c.name;
  }
  EXPECT_EQ(check(r, "a").tolerance, 1e-10);
  EXPECT_EQ(check(r, "d").tolerance, 1e-9);
  EXPECT_EQ(check(r, "e").tolerance, 1e-6);
  EXPECT_TRUE(r.failures.empty());
}

TEST(VerifyEquivalences, SingleClusterTrivial) {
  const EquivalenceReport r =
      verify_equivalences(test::fixture_graph(), {.trials = 5, .ks = {1}});
  EXPECT_TRUE(r.passed());
  const SimilarityGraph g = test::fixture_graph();
  const Partition one = Partition::single_cluster(3);
  EXPECT_EQ(rcut(g, one), 0.0);
  EXPECT_NEAR(q_bbased(g, one) - nrcut(g, one),
              volumes(g, one).inverse_degree_prime_total - 1.0, 1e-12);
}

TEST(VerifyEquivalences, RandomGraphsPass) {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 8; ++trial) {
    const SimilarityGraph g = test::random_graph(20, rng);
    const EquivalenceReport r =
        verify_equivalences(g, {.trials = 30, .seed = static_cast<std::uint64_t>(trial)});
    EXPECT_TRUE(r.passed()) << "graph " << trial;
  }
}

TEST(VerifyEquivalences, LingoesGraphPasses) {
  std::mt19937_64 rng(78);
  const SimilarityGraph g = test::random_similarity_matrix(16, rng, 0.0, 1.0);
  const EquivalenceReport r = verify_equivalences(g, {.trials = 40});
  EXPECT_GT(r.k_lingoes_sigma + r.b_lingoes_sigma, 0.0);
  EXPECT_TRUE(r.passed());
}

TEST(VerifyEquivalences, NonpositiveDegreePrimeSkipsBChecks) {
  Matrix S = Matrix::Zero(4, 4);
  S(0, 1) = S(1, 0) = -0.9;
  S(0, 2) = S(2, 0) = -0.9;
  S(2, 3) = S(3, 2) = 0.5;
  const EquivalenceReport r = verify_equivalences(graph_from_matrix(S), {.trials = 10});
  for (const char* name : {"b", "c", "f"}) {
    EXPECT_TRUE(check(r, name).skipped) << name;
    EXPECT_EQ(check(r, name).skip_reason, "d' has nonpositive entries");
  }
  for (const char* name : {"a", "d", "e"}) EXPECT_FALSE(check(r, name).skipped) << name;
  EXPECT_TRUE(r.passed());
}

TEST(VerifyEquivalences, DeterministicForSeed) {
  std::mt19937_64 rng(5);
  const SimilarityGraph g = test::random_graph(12, rng);
  const EquivalenceReport a = verify_equivalences(g, {.trials = 20, .seed = 9});
  const EquivalenceReport b = verify_equivalences(g, {.trials = 20, .seed = 9});
  ASSERT_EQ(a.checks.size(), b.checks.size());
  for (std::size_t i = 0; i < a.checks.size(); ++i) {
    EXPECT_EQ(a.checks[i].max_residual, b.checks[i].max_residual);
  }
}

TEST(EqualSizeClusters, RcutMinusTwoKbasedConstant) {
  std::mt19937_64 rng(99);
  const SimilarityGraph g = test::random_graph(6, rng);
  const double n = 6.0;
  std::optional<double> constant;
  std::size_t count = 0;
  for (const Partition& p : test::all_partitions(6, 2)) {
    if (p.cluster_size(0) != 3) continue;
    ++count;
    const double diff = rcut(g, p) - 2.0 * q_kbased(g, p);
    // With |C_j| = n/k the right side collapses to -(n - k) + k * total_volume / n.
    const double expected = -(n - 2.0) + g.degree.sum() / 3.0;
    EXPECT_NEAR(diff, expected, 1e-9);
    if (!constant) constant = diff;
    EXPECT_NEAR(diff, *constant, 1e-9);
  }
  EXPECT_EQ(count, 10u);
}

TEST(Exhaustive, GloveAndKbasedShareArgmin) {
  std::mt19937_64 rng(123);
  for (int trial = 0; trial < 5; ++trial) {
    const SimilarityGraph g = test::random_graph(8, rng, trial % 2 == 0);
    const auto parts = test::all_partitions(8, 2);
    ASSERT_EQ(parts.size(), 127u);
    std::vector<double> glove;
    std::vector<double> kbased;
    for (const Partition& p : parts) {
      glove.push_back(q_glove(g, p));
      kbased.push_back(q_kbased(g, p));
    }
    EXPECT_EQ(argmin_set(glove, 1e-12), argmin_set(kbased, 1e-12));
  }
}

TEST(Exhaustive, BbasedAndNrcutShareArgmin) {
  std::mt19937_64 rng(321);
  const SimilarityGraph g = test::random_graph(8, rng);
  std::vector<double> b;
  std::vector<double> r;
  for (const Partition& p : test::all_partitions(8, 3)) {
    b.push_back(q_bbased(g, p));
    r.push_back(nrcut(g, p));
  }
  EXPECT_EQ(argmin_set(b, 1e-12), argmin_set(r, 1e-12));
}
