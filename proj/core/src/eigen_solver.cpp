#include "xgsc/eigen_solver.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

namespace xgsc {
namespace {

void check_symmetric(const Matrix& M) {
  if (M.rows() != M.cols()) throw Error("spectral", "matrix must be square");
  const double scale = std::max(1.0, M.cwiseAbs().maxCoeff());
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < M.cols(); ++j) {
      if (std::abs(M(i, j) - M(j, i)) > 1e-9 * scale) {
        throw Error("spectral", "matrix is not symmetric at (" + std::to_string(i) + "," +
                                    std::to_string(j) + ")");
      }
    }
  }
}

EigenPairs dense_pairs(const Matrix& M, std::size_t count, EigenEnd end) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(M);
  if (solver.info() != Eigen::Success) {
    throw Error("spectral", "dense symmetric eigensolver failed to converge");
  }
  const auto n = M.rows();
  const auto c = static_cast<Eigen::Index>(count);
  const Eigen::Index first = end == EigenEnd::smallest ? 0 : n - c;
  EigenPairs out;
  out.values = solver.eigenvalues().segment(first, c);
  out.vectors = solver.eigenvectors().middleCols(first, c);
  out.norm_estimate = n == 0 ? 0.0 : solver.eigenvalues().cwiseAbs().maxCoeff();
  return out;
}

}  // namespace

void normalize_signs(Matrix& vectors) {
  for (Eigen::Index c = 0; c < vectors.cols(); ++c) {
    const double peak = vectors.col(c).cwiseAbs().maxCoeff();
    if (peak == 0.0) continue;
    for (Eigen::Index r = 0; r < vectors.rows(); ++r) {
      if (std::abs(vectors(r, c)) >= peak * (1.0 - 1e-12)) {
        if (vectors(r, c) < 0.0) vectors.col(c) *= -1.0;
        break;
      }
    }
  }
}

namespace {

void orthogonalize_all(const Matrix& locked, const Matrix& basis, Eigen::Index cols, Vector& w) {
  for (int pass = 0; pass < 2; ++pass) {
    if (locked.cols() > 0) w.noalias() -= locked * (locked.transpose() * w);
    if (cols > 0) {
      const Vector h = basis.leftCols(cols).transpose() * w;
      w.noalias() -= basis.leftCols(cols) * h;
    }
  }
}

/// One thick-restart Lanczos solve restricted to the orthogonal complement
/// of the columns of `locked`.
EigenPairs lanczos_run(const Matrix& M, Eigen::Index nev, Eigen::Index p, EigenEnd end,
                       const EigenOptions& options, const Matrix& locked, std::mt19937_64& rng) {
  const Eigen::Index n = M.rows();
  std::normal_distribution<double> normal;
  auto random_vector = [&] {
    Vector v(n);
    for (Eigen::Index i = 0; i < n; ++i) v[i] = normal(rng);
    return v;
  };

  Matrix V = Matrix::Zero(n, p + 1);
  Matrix T = Matrix::Zero(p, p);
  Vector v0 = random_vector();
  orthogonalize_all(locked, V, 0, v0);
  V.col(0) = v0.normalized();
  Eigen::Index start = 0;
  double norm_estimate = 0.0;
  double last_beta = 0.0;

  for (std::size_t restart = 0; restart <= options.max_restarts; ++restart) {
    for (Eigen::Index j = start; j < p; ++j) {
      Vector w = M * V.col(j);
      if (locked.cols() > 0) w.noalias() -= locked * (locked.transpose() * w);
      const Vector h = V.leftCols(j + 1).transpose() * w;
      w.noalias() -= V.leftCols(j + 1) * h;
      if (locked.cols() > 0) w.noalias() -= locked * (locked.transpose() * w);
      const Vector h2 = V.leftCols(j + 1).transpose() * w;
      w.noalias() -= V.leftCols(j + 1) * h2;
      for (Eigen::Index i = 0; i <= j; ++i) {
        T(i, j) = T(j, i) = h[i] + h2[i];
      }
      norm_estimate = std::max(norm_estimate, std::abs(T(j, j)));
      double beta = w.norm();
      if (beta <= 1e-12 * std::max(norm_estimate, 1e-300)) {
        // Invariant subspace reached: continue from a fresh orthogonal direction.
        beta = 0.0;
        w = random_vector();
        orthogonalize_all(locked, V, j + 1, w);
        V.col(j + 1) = w.normalized();
      } else {
        V.col(j + 1) = w / beta;
      }
      if (j + 1 < p) {
        T(j + 1, j) = T(j, j + 1) = beta;
      } else {
        last_beta = beta;
      }
    }

    Eigen::SelfAdjointEigenSolver<Matrix> small(T);
    const Vector& theta = small.eigenvalues();
    const Matrix& Y = small.eigenvectors();
    norm_estimate = std::max({norm_estimate, std::abs(theta[0]), std::abs(theta[p - 1])});
    const Eigen::Index first_wanted = end == EigenEnd::smallest ? 0 : p - nev;

    bool converged = true;
    for (Eigen::Index i = first_wanted; i < first_wanted + nev; ++i) {
      const double residual = std::abs(last_beta * Y(p - 1, i));
      if (residual > options.tolerance * std::max(norm_estimate, 1e-300)) {
        converged = false;
        break;
      }
    }
    if (converged) {
      EigenPairs out;
      out.values = theta.segment(first_wanted, nev);
      out.vectors = V.leftCols(p) * Y.middleCols(first_wanted, nev);
      out.norm_estimate = norm_estimate;
      return out;
    }

    const Eigen::Index keep = std::min<Eigen::Index>(p - 1, nev + (p - nev) / 2);
    const Eigen::Index first_keep = end == EigenEnd::smallest ? 0 : p - keep;
    const Matrix kept = V.leftCols(p) * Y.middleCols(first_keep, keep);
    const Vector residual_direction = V.col(p);
    V.setZero();
    V.leftCols(keep) = kept;
    V.col(keep) = residual_direction;
    T.setZero();
    for (Eigen::Index i = 0; i < keep; ++i) {
      T(i, i) = theta[first_keep + i];
      T(keep, i) = T(i, keep) = last_beta * Y(p - 1, first_keep + i);
    }
    start = keep;
  }
  throw Error("spectral", "Lanczos did not converge after " +
                              std::to_string(options.max_restarts) + " restarts");
}

}  // namespace

EigenPairs lanczos_eigenpairs(const Matrix& M, std::size_t count, EigenEnd end,
                              const EigenOptions& options) {
  const Eigen::Index n = M.rows();
  const auto nev = static_cast<Eigen::Index>(count);
  const Eigen::Index p = std::min<Eigen::Index>(n, std::max<Eigen::Index>(2 * nev + 20, 40));
  if (p >= n) return dense_pairs(M, count, end);

  std::mt19937_64 rng(options.seed);
  const Matrix none(n, 0);
  EigenPairs best = lanczos_run(M, nev, p, end, options, none, rng);
  const auto better = [&](double a, double b) {
    return end == EigenEnd::smallest ? a < b : a > b;
  };

  // A Krylov space holds one direction per eigenspace, so repeated
  // eigenvalues are recovered by searching the complement of the current
  // pairs until nothing better turns up.
  for (Eigen::Index round = 0; round * nev < n; ++round) {
    if (n - nev <= p) return dense_pairs(M, count, end);
    const EigenPairs extra = lanczos_run(M, nev, p, end, options, best.vectors, rng);
    const double slack = 1e-9 * std::max({best.norm_estimate, extra.norm_estimate, 1e-300});
    const double worst = end == EigenEnd::smallest ? best.values.maxCoeff() : best.values.minCoeff();
    const double offset = end == EigenEnd::smallest ? -slack : slack;
    bool improved = false;
    for (Eigen::Index i = 0; i < nev; ++i) {
      if (better(extra.values[i], worst + offset)) improved = true;
    }
    if (!improved) break;

    std::vector<Eigen::Index> order(static_cast<std::size_t>(2 * nev));
    for (Eigen::Index i = 0; i < 2 * nev; ++i) order[static_cast<std::size_t>(i)] = i;
    const auto value = [&](Eigen::Index i) {
      return i < nev ? best.values[i] : extra.values[i - nev];
    };
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index a, Eigen::Index b) { return value(a) < value(b); });
    const std::size_t first = end == EigenEnd::smallest ? 0 : static_cast<std::size_t>(nev);
    EigenPairs merged;
    merged.values.resize(nev);
    merged.vectors.resize(n, nev);
    merged.norm_estimate = std::max(best.norm_estimate, extra.norm_estimate);
    for (Eigen::Index c = 0; c < nev; ++c) {
      const Eigen::Index src = order[first + static_cast<std::size_t>(c)];
      merged.values[c] = value(src);
      if (src < nev) {
        merged.vectors.col(c) = best.vectors.col(src);
      } else {
        merged.vectors.col(c) = extra.vectors.col(src - nev);
      }
    }
    best = std::move(merged);
  }
  return best;
}

EigenPairs eigendecompose_symmetric(const Matrix& M, std::size_t count, EigenEnd end,
                                    const EigenOptions& options) {
  check_symmetric(M);
  const auto n = static_cast<std::size_t>(M.rows());
  if (count == 0 || count > n) {
    throw Error("spectral", "requested " + std::to_string(count) + " eigenpairs of a " +
                                std::to_string(n) + "x" + std::to_string(n) + " matrix");
  }
  EigenPairs out = n <= options.dense_limit ? dense_pairs(M, count, end)
                                            : lanczos_eigenpairs(M, count, end, options);
  normalize_signs(out.vectors);

  const double scale = out.norm_estimate;
  for (Eigen::Index c = 0; c < out.vectors.cols(); ++c) {
    const double r = (M * out.vectors.col(c) - out.values[c] * out.vectors.col(c)).norm();
    out.max_residual = std::max(out.max_residual, r);
  }
  if (out.max_residual > 1e-8 * scale) {
    throw Error("spectral", "eigenpair residual " + std::to_string(out.max_residual) +
                                " exceeds 1e-8 * ||M|| (||M|| ~ " + std::to_string(scale) + ")");
  }
  return out;
}

}  // namespace xgsc
