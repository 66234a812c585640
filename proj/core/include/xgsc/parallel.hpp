#pragma once

#include <cstddef>
#include <functional>

namespace xgsc {

/// Number of worker threads the library may use. Defaults to the hardware
/// concurrency, capped by the SPECLAIN_THREADS environment variable, and
/// forced to 1 in strict sequential mode.
std::size_t thread_limit();

void set_strict_sequential(bool strict);
bool strict_sequential();

/// Runs body(begin, end) over contiguous blocks of [0, n). Blocks are
/// disjoint so bodies that write only to their own indices are race free.
void parallel_for(std::size_t n,
                  const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace xgsc
