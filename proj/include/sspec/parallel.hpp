#pragma once

#include <cstddef>
#include <functional>

namespace sspec {

/// Worker count used by parallel_for.  Defaults to SSPEC_THREADS if set, else 1.
int thread_count();
void set_thread_count(int n);

/// Runs body(i) for i in [0, n).  Each index is written by exactly one worker, so
/// results stored per index are independent of the schedule.  The first exception
/// thrown by any worker is rethrown after all workers finish.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

} // namespace sspec
