#include "nvcache/cachesim.hpp"

#include <string>

#include "nvcache/errors.hpp"
#include "nvcache/parallel.hpp"

namespace nvcache {

namespace {

bool power_of_two(std::uint64_t x) { return x != 0 && (x & (x - 1)) == 0; }

struct Line {
  std::uint64_t tag = 0;
  std::uint64_t last_use = 0;  // global access stamp, 0 = invalid
  bool dirty = false;
};

}  // namespace

void validate_geometry(const CacheGeometry& geom) {
  if (geom.capacity_bytes == 0 || geom.ways == 0)
    throw Error(ErrorKind::ModelRange, "InvalidGeometry",
                "capacity and ways must be positive");
  if (!power_of_two(geom.line_size_bytes))
    throw Error(ErrorKind::ModelRange, "InvalidGeometry",
                "line size must be a power of two");
  std::uint64_t frame = static_cast<std::uint64_t>(geom.ways) * geom.line_size_bytes;
  if (geom.capacity_bytes % frame != 0)
    throw Error(ErrorKind::ModelRange, "InvalidGeometry",
                "capacity not divisible by ways * line_size");
  if (!power_of_two(geom.num_sets()))
    throw Error(ErrorKind::ModelRange, "InvalidGeometry",
                "set count " + std::to_string(geom.num_sets()) +
                    " is not a power of two");
}

SimResult simulate(std::span<const TraceEvent> trace, const CacheGeometry& geom,
                   std::uint64_t warmup_events) {
  validate_geometry(geom);
  const std::uint64_t sets = geom.num_sets();
  const std::uint64_t set_mask = sets - 1;
  const std::uint32_t ways = geom.ways;

  std::vector<Line> lines(sets * ways);
  SimResult r;
  std::uint64_t stamp = 0;

  for (std::size_t i = 0; i < trace.size(); ++i) {
    const TraceEvent& ev = trace[i];
    const bool counted = i >= warmup_events;
    const std::uint64_t line_addr = ev.address / geom.line_size_bytes;
    const std::uint64_t set = line_addr & set_mask;
    const std::uint64_t tag = line_addr;  // full line address as tag
    Line* base = lines.data() + set * ways;
    ++stamp;

    Line* hit_line = nullptr;
    Line* victim = base;
    for (std::uint32_t w = 0; w < ways; ++w) {
      Line& l = base[w];
      if (l.last_use != 0 && l.tag == tag) {
        hit_line = &l;
        break;
      }
      // Invalid ways win eviction outright; otherwise least recent.
      if (l.last_use < victim->last_use) victim = &l;
    }

    if (counted) ++r.accesses;
    if (hit_line) {
      if (counted) ++r.hits;
      hit_line->last_use = stamp;
      if (ev.op == MemOp::Write) hit_line->dirty = true;
    } else {
      if (counted) ++r.misses;
      if (victim->last_use != 0 && victim->dirty && counted) ++r.writebacks;
      victim->tag = tag;
      victim->last_use = stamp;
      victim->dirty = ev.op == MemOp::Write;
    }
  }
  r.dram_transactions = r.misses + r.writebacks;
  return r;
}

double dram_reduction(const SimResult& baseline, const SimResult& enlarged) {
  if (baseline.dram_transactions == 0)
    throw Error(ErrorKind::ModelRange, "ZeroBaseline",
                "baseline has no DRAM transactions");
  return 100.0 * (1.0 - static_cast<double>(enlarged.dram_transactions) /
                            static_cast<double>(baseline.dram_transactions));
}

namespace {

void validate_sweep(std::span<const CacheGeometry> geoms) {
  for (std::size_t i = 0; i < geoms.size(); ++i) {
    validate_geometry(geoms[i]);
    if (i == 0) continue;
    if (geoms[i].line_size_bytes != geoms[0].line_size_bytes ||
        geoms[i].num_sets() != geoms[0].num_sets())
      throw Error(ErrorKind::ModelRange, "InvalidGeometry",
                  "sweep geometries must share line size and set count");
    if (geoms[i].ways <= geoms[i - 1].ways)
      throw Error(ErrorKind::ModelRange, "InvalidGeometry",
                  "sweep ways must be strictly increasing");
  }
}

}  // namespace

std::vector<SimResult> capacity_sweep(std::span<const TraceEvent> trace,
                                      std::span<const CacheGeometry> geoms,
                                      std::uint64_t warmup_events) {
  validate_sweep(geoms);
  std::vector<SimResult> out(geoms.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(max_threads())
#endif
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(geoms.size()); ++i)
    out[static_cast<std::size_t>(i)] =
        simulate(trace, geoms[static_cast<std::size_t>(i)], warmup_events);
  return out;
}

std::vector<SimResult> capacity_sweep_serial(std::span<const TraceEvent> trace,
                                             std::span<const CacheGeometry> geoms,
                                             std::uint64_t warmup_events) {
  validate_sweep(geoms);
  std::vector<SimResult> out;
  out.reserve(geoms.size());
  for (const auto& g : geoms) out.push_back(simulate(trace, g, warmup_events));
  return out;
}

}  // namespace nvcache
