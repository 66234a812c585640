#include "xgsc/common.hpp"

namespace xgsc {

Error::Error(std::string module, const std::string& message)
    : std::runtime_error(module + ": " + message), module_(std::move(module)) {}

const char* version() noexcept { return "0.1.0"; }

}  // namespace xgsc
