#pragma once

#include <functional>

namespace chernflow {

/// Worker cap: CHERNFLOW_THREADS if set (>= 1), else hardware concurrency.
int thread_cap();

/// Run body(i) for i in [0, count).  Work items must be independent and write
/// only to their own index-addressed slots; the result is then identical for
/// any thread count, including 1.
void parallel_for(int count, const std::function<void(int)>& body);

}  // namespace chernflow
