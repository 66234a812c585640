#pragma once

#include "xgsc/common.hpp"

#include <cstddef>
#include <string_view>

namespace xgsc {

/// Read-only geometry of word vectors g(w). Implemented by pretrained tables
/// (dense vectors) and by the term vector space (one-hot vectors).
class WordSpace {
 public:
  virtual ~WordSpace() = default;

  virtual std::size_t dim() const = 0;
  virtual bool contains(std::string_view word) const = 0;
  /// out += coeff * g(word). The word must be contained.
  virtual void add_scaled(std::string_view word, double coeff, Vector& out) const = 0;
  /// g(word)^T v. The word must be contained.
  virtual double dot(std::string_view word, const Vector& v) const = 0;
};

}  // namespace xgsc
