#include "xgsc/gower.hpp"
#include "xgsc/kmeans.hpp"
#include "xgsc/simgraph.hpp"
#include "xgsc/spectral.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace xgsc;

namespace {

EmbeddingMatrix unit_rows(std::size_t n, std::size_t dim) {
  std::mt19937_64 rng(n * 31 + dim);
  std::normal_distribution<double> normal(0.0, 1.0);
  EmbeddingMatrix emb;
  emb.rows.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(dim));
  for (Eigen::Index i = 0; i < emb.rows.rows(); ++i) {
    for (Eigen::Index c = 0; c < emb.rows.cols(); ++c) emb.rows(i, c) = std::abs(normal(rng));
    emb.rows.row(i).normalize();
    emb.doc_ids.push_back("d" + std::to_string(i));
  }
  return emb;
}

void BM_Similarity(benchmark::State& state) {
  const EmbeddingMatrix emb = unit_rows(static_cast<std::size_t>(state.range(0)), 50);
  for (auto _ : state) benchmark::DoNotOptimize(build_similarity(emb));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Similarity)->RangeMultiplier(2)->Range(128, 1024)->Complexity();

void BM_SpectralDense(benchmark::State& state) {
  const SimilarityGraph g = build_similarity(unit_rows(static_cast<std::size_t>(state.range(0)), 50));
  const Laplacian L = build_laplacian(g, LaplacianKind::rationormalized);
  for (auto _ : state) benchmark::DoNotOptimize(spectral_embed(L, 5));
}
BENCHMARK(BM_SpectralDense)->RangeMultiplier(2)->Range(128, 512);

void BM_SpectralLanczos(benchmark::State& state) {
  const SimilarityGraph g = build_similarity(unit_rows(static_cast<std::size_t>(state.range(0)), 50));
  const Laplacian L = build_laplacian(g, LaplacianKind::rationormalized);
  EigenOptions options;
  options.dense_limit = 0;
  for (auto _ : state) benchmark::DoNotOptimize(spectral_embed(L, 5, options));
}
BENCHMARK(BM_SpectralLanczos)->RangeMultiplier(2)->Range(128, 512);

void BM_GowerK(benchmark::State& state) {
  const SimilarityGraph g = build_similarity(unit_rows(static_cast<std::size_t>(state.range(0)), 50));
  for (auto _ : state) benchmark::DoNotOptimize(gower_embed(g, GowerKind::K, 20));
}
BENCHMARK(BM_GowerK)->RangeMultiplier(2)->Range(128, 512);

void BM_KMeans(benchmark::State& state) {
  const EmbeddingMatrix emb = unit_rows(static_cast<std::size_t>(state.range(0)), 20);
  KMeansOptions options;
  options.k = 8;
  options.restarts = 4;
  for (auto _ : state) benchmark::DoNotOptimize(kmeans(emb, options));
}
BENCHMARK(BM_KMeans)->RangeMultiplier(4)->Range(256, 4096);

}  // namespace

BENCHMARK_MAIN();
