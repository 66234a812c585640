#include "xgsc/objectives.hpp"

#include "xgsc/equivalence.hpp"
#include "xgsc/kmeans.hpp"

#include "test_support.hpp"

#include <gtest/gtest.h>

using namespace xgsc;

namespace {

const Partition& fixture_split() {
  static const Partition p({0, 0, 1}, 2);
  return p;
}

}  // namespace

TEST(Cut, FixtureSplit) {
  const SimilarityGraph g = test::fixture_graph();
  EXPECT_NEAR(cut_value(g, fixture_split(), 0), 1.41421356237, 1e-10);
  EXPECT_NEAR(cut_value(g, fixture_split(), 1), 1.41421356237, 1e-10);
  EXPECT_NEAR(within_similarity(g, fixture_split(), 0), 0.0, 1e-15);
}

TEST(Cut, SingleClusterIsZero) {
  const SimilarityGraph g = test::fixture_graph();
  const Partition one = Partition::single_cluster(3);
  EXPECT_EQ(cut_value(g, one, 0), 0.0);
  EXPECT_EQ(rcut(g, one), 0.0);
  EXPECT_EQ(ncut(g, one), 0.0);
  EXPECT_EQ(nrcut(g, one), 0.0);
}

TEST(Cuts, FixtureValues) {
  const SimilarityGraph g = test::fixture_graph();
  EXPECT_NEAR(rcut(g, fixture_split()), 2.12132034356, 1e-10);
  EXPECT_NEAR(ncut(g, fixture_split()), 2.0, 1e-12);
  // sqrt2/(2+sqrt2) + sqrt2/(1+sqrt2) = (sqrt2 - 1) + (2 - sqrt2).
  EXPECT_NEAR(nrcut(g, fixture_split()), 1.0, 1e-12);
}

TEST(Cuts, NcutZeroVolume) {
  Matrix S = Matrix::Zero(3, 3);
  S(0, 1) = S(1, 0) = 0.5;
  const SimilarityGraph g = graph_from_matrix(S);
  const Partition p({0, 0, 1}, 2);
  try {
    ncut(g, p);
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("zero volume"), std::string::npos);
  }
  EXPECT_NO_THROW(nrcut(g, p));
  EXPECT_FALSE(evaluate_criteria(g, p).ncut.has_value());
}

TEST(Cuts, RandomDegreeIdentities) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 40; ++trial) {
    const SimilarityGraph g = test::random_graph(12, rng, trial % 3 != 0);
    const int k = 1 + trial % 5;
    const Partition p = random_partition(12, k, rng);
    const Volumes v = volumes(g, p);
    double rc = 0.0;
    double nrc = 0.0;
    for (int j = 0; j < k; ++j) {
      const double c = cut_value(g, p, j);
      EXPECT_NEAR(c + within_similarity(g, p, j), v.volume[j], 1e-12);
      EXPECT_NEAR(v.volume_prime[j], v.volume[j] + static_cast<double>(p.cluster_size(j)), 1e-12);
      rc += c / static_cast<double>(p.cluster_size(j));
      nrc += c / v.volume_prime[j];
    }
    EXPECT_NEAR(rcut(g, p), rc, 1e-12);
    EXPECT_NEAR(nrcut(g, p), nrc, 1e-12);
  }
}

TEST(Targets, FixtureValues) {
  const SimilarityGraph g = test::fixture_graph();
  EXPECT_NEAR(q_kbased(g, fixture_split()), 0.5, 1e-12);
  EXPECT_NEAR(q_glove(g, fixture_split()), 1.0, 1e-12);
  EXPECT_NEAR(q_bbased(g, fixture_split()), 2.0 - std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(q_wglove(g, fixture_split()), 2.0 - std::sqrt(2.0), 1e-12);
}

TEST(Targets, GloveIsKMeansOnDocumentVectors) {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 30; ++trial) {
    const EmbeddingMatrix rows = test::random_unit_rows(14, 5, rng, false);
    const SimilarityGraph g = build_similarity(rows);
    const Partition p = random_partition(14, 1 + trial % 4, rng);
    const double direct = kmeans_objective(rows.rows, p);
    EXPECT_NEAR(q_glove(g, p), direct, 1e-10 * std::max(1.0, direct));
    EXPECT_NEAR(q_gsa(rows.rows, p), direct, 1e-12 * std::max(1.0, direct));
  }
}

TEST(Targets, WeightedGloveIsWeightedKMeans) {
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 30; ++trial) {
    const EmbeddingMatrix rows = test::random_unit_rows(14, 5, rng);
    const SimilarityGraph g = build_similarity(rows);
    const Partition p = random_partition(14, 1 + trial % 4, rng);
    const Vector w = g.degree_prime;
    const Matrix scaled = w.cwiseInverse().asDiagonal() * rows.rows;
    const double direct = kmeans_objective(scaled, p, &w);
    EXPECT_NEAR(q_wglove(g, p), direct, 1e-10 * std::max(1.0, direct));
  }
}

TEST(Targets, DegreePrimeGuard) {
  Matrix S = Matrix::Zero(3, 3);
  S(0, 1) = S(1, 0) = -0.9;
  S(0, 2) = S(2, 0) = -0.9;
  const SimilarityGraph g = graph_from_matrix(S);
  const Partition p({0, 0, 1}, 2);
  EXPECT_THROW(q_bbased(g, p), Error);
  EXPECT_THROW(q_wglove(g, p), Error);
  const CriterionValues c = evaluate_criteria(g, p);
  EXPECT_FALSE(c.q_bbased.has_value());
  EXPECT_FALSE(c.q_wglove.has_value());
  EXPECT_NEAR(c.q_glove, 2.0 * c.q_kbased, 1e-12);
}

TEST(Criteria, BundleMatchesIndividualFunctions) {
  const SimilarityGraph g = test::fixture_graph();
  const CriterionValues c = evaluate_criteria(g, fixture_split());
  EXPECT_EQ(c.rcut, rcut(g, fixture_split()));
  EXPECT_EQ(*c.ncut, ncut(g, fixture_split()));
  EXPECT_EQ(c.nrcut, nrcut(g, fixture_split()));
  EXPECT_EQ(c.q_glove, q_glove(g, fixture_split()));
  EXPECT_EQ(c.q_kbased, q_kbased(g, fixture_split()));
  EXPECT_EQ(*c.q_bbased, q_bbased(g, fixture_split()));
  EXPECT_EQ(*c.q_wglove, q_wglove(g, fixture_split()));
}
