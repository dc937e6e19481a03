#pragma once

#include <cstddef>
#include <functional>

namespace gcalc {

/// Worker count: GRAPHON_CALC_THREADS if set to a positive integer, else the
/// hardware concurrency (at least 1).
int worker_count();

/// Runs body(i) for every i in [0, count). Each index is visited exactly once;
/// callers write results into slot i so the assembled output does not depend
/// on scheduling. The first exception thrown by any body is rethrown.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace gcalc
