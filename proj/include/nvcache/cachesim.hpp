#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "nvcache/workload.hpp"

namespace nvcache {

enum class WritePolicy : std::uint8_t { WriteBackWriteAllocate };

struct CacheGeometry {
  std::uint64_t capacity_bytes = 0;
  std::uint32_t ways = 1;
  std::uint32_t line_size_bytes = 128;
  WritePolicy write_policy = WritePolicy::WriteBackWriteAllocate;

  std::uint64_t num_sets() const {
    return capacity_bytes / (static_cast<std::uint64_t>(ways) * line_size_bytes);
  }
};

// Error(ModelRange, InvalidGeometry) unless capacity divides evenly into a
// power-of-two number of sets and the line size is a power of two.
void validate_geometry(const CacheGeometry& geom);

struct SimResult {
  std::uint64_t accesses = 0;
  std::uint64_t hits = 0;
  std::uint64_t misses = 0;
  std::uint64_t writebacks = 0;
  std::uint64_t dram_transactions = 0;  // misses + writebacks

  bool operator==(const SimResult&) const = default;
};

// Exact set-associative LRU, write-back write-allocate. Strictly sequential
// (trace order is semantics). The first warmup_events accesses update state
// but are not counted.
SimResult simulate(std::span<const TraceEvent> trace, const CacheGeometry& geom,
                   std::uint64_t warmup_events = 0);

// 100 * (1 - enlarged/baseline); Error(ModelRange, ZeroBaseline) if the
// baseline had no DRAM transactions.
double dram_reduction(const SimResult& baseline, const SimResult& enlarged);

// Same trace replayed over each geometry. Geometries must share line size
// and set count with strictly increasing ways (capacity grows as
// associativity so LRU inclusion applies). OpenMP over geometries; the
// serial variant is the reference the parallel one must match.
std::vector<SimResult> capacity_sweep(std::span<const TraceEvent> trace,
                                      std::span<const CacheGeometry> geoms,
                                      std::uint64_t warmup_events = 0);
std::vector<SimResult> capacity_sweep_serial(std::span<const TraceEvent> trace,
                                             std::span<const CacheGeometry> geoms,
                                             std::uint64_t warmup_events = 0);

}  // namespace nvcache
