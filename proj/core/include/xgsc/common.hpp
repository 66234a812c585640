#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace xgsc {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Error raised by every module. `what()` is prefixed with the module name,
/// e.g. "wordvec: dimension mismatch at line 3".
class Error : public std::runtime_error {
 public:
  Error(std::string module, const std::string& message);

  const std::string& module() const noexcept { return module_; }

 private:
  std::string module_;
};

/// A document that was dropped from a batch, with the reason.
struct SkipRecord {
  std::string doc_id;
  std::string reason;
};

/// Library version string written into run manifests.
const char* version() noexcept;

}  // namespace xgsc
