#pragma once

namespace nvcache {

// Worker count for OpenMP regions: NVCACHE_DSE_THREADS caps parallelism
// (0 or unset = all hardware threads). Always >= 1; 1 without OpenMP.
int max_threads();

}  // namespace nvcache
