#pragma once

#include "xgsc/common.hpp"

#include <cstddef>
#include <cstdint>

namespace xgsc {

enum class EigenEnd { smallest, largest };

struct EigenOptions {
  /// Matrices up to this order use a full dense decomposition; larger ones
  /// use thick-restart Lanczos.
  std::size_t dense_limit = 4096;
  /// Relative residual target for Lanczos Ritz pairs.
  double tolerance = 1e-10;
  std::size_t max_restarts = 2000;
  std::uint64_t seed = 0x5eedULL;
};

/// Eigenpairs with values in ascending order and unit eigenvectors as
/// columns. `norm_estimate` approximates the spectral norm of the input.
struct EigenPairs {
  Vector values;
  Matrix vectors;
  double norm_estimate = 0.0;
  double max_residual = 0.0;
};

/// `count` eigenpairs from the requested end of the spectrum. Every pair
/// satisfies ||M v - lambda v|| <= 1e-8 ||M||; eigenvectors are sign-fixed
/// so the largest-magnitude component is positive. Throws xgsc::Error on
/// asymmetric input or convergence failure.
EigenPairs eigendecompose_symmetric(const Matrix& M, std::size_t count,
                                    EigenEnd end = EigenEnd::smallest,
                                    const EigenOptions& options = {});

/// Thick-restart Lanczos with full reorthogonalization. Exposed so tests can
/// compare it with the dense path on small matrices.
EigenPairs lanczos_eigenpairs(const Matrix& M, std::size_t count, EigenEnd end,
                              const EigenOptions& options = {});

/// Flips each column so its largest-magnitude entry is positive (first such
/// entry on ties).
void normalize_signs(Matrix& vectors);

}  // namespace xgsc
