#pragma once

// Shared test utilities. The reference implementations here are written
// against different data structures than the library (move-to-front lists,
// plain nested loops) so they stay independent of the code they check.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <random>
#include <vector>

#include "nvcache/cachemodel.hpp"
#include "nvcache/cachesim.hpp"
#include "nvcache/errors.hpp"
#include "nvcache/textio.hpp"
#include "nvcache/tuner.hpp"
#include "nvcache/workload.hpp"

namespace testutil {

using namespace nvcache;

inline bool approx(double a, double b, double rel = 1e-12) {
  double scale = std::max({std::fabs(a), std::fabs(b), 1e-300});
  return std::fabs(a - b) <= rel * scale;
}

inline std::string data_file(const char* name) {
  return std::string(NVCACHE_DATA_DIR) + "/" + name;
}

inline std::string read_data(const char* name) {
  return textio::read_file(data_file(name));
}

// ---------------------------------------------------------------------------
// Reference LRU cache: per-set move-to-front list of {tag, dirty}. Front is
// most recent; eviction pops the back.
struct RefLine {
  std::uint64_t tag;
  bool dirty;
};

inline SimResult reference_simulate(std::span<const TraceEvent> trace,
                                    const CacheGeometry& geom,
                                    std::uint64_t warmup = 0) {
  const std::uint64_t sets = geom.num_sets();
  std::vector<std::deque<RefLine>> cache(sets);
  SimResult r;
  for (std::size_t i = 0; i < trace.size(); ++i) {
    const auto& ev = trace[i];
    bool counted = i >= warmup;
    std::uint64_t line = ev.address / geom.line_size_bytes;
    auto& set = cache[line % sets];
    bool write = ev.op == MemOp::Write;
    if (counted) ++r.accesses;

    auto it = std::find_if(set.begin(), set.end(),
                           [&](const RefLine& l) { return l.tag == line; });
    if (it != set.end()) {
      if (counted) ++r.hits;
      RefLine l = *it;
      l.dirty = l.dirty || write;
      set.erase(it);
      set.push_front(l);
    } else {
      if (counted) ++r.misses;
      if (set.size() == geom.ways) {
        if (set.back().dirty && counted) ++r.writebacks;
        set.pop_back();
      }
      set.push_front({line, write});
    }
  }
  r.dram_transactions = r.misses + r.writebacks;
  return r;
}

// ---------------------------------------------------------------------------
// Brute-force tuner oracle: plain quadruple loop, EDAP recomputed from first
// principles (not via nvcache::edap).
struct OracleWinner {
  bool found = false;
  OptTarget opt{};
  AccessType acc{};
  double score = 0;
};

inline double oracle_edap(const CachePPA& p, double rho, double n,
                          bool leakage) {
  double d = n * (rho * p.read_latency_ns + (1 - rho) * p.write_latency_ns) / 1e9;
  double e = n * (rho * p.read_energy_nj + (1 - rho) * p.write_energy_nj) / 1e9;
  if (leakage) e += (p.leakage_power_mw / 1e3) * d;
  return e * d * p.area_mm2;
}

inline OracleWinner brute_force_winner(const AnchorCurveSet& curves,
                                       MemoryTech tech, double cap,
                                       const SweepSpace& space,
                                       const ReferenceMix& mix,
                                       bool leakage = true) {
  OracleWinner w;
  for (auto opt : space.opts) {
    for (auto acc : space.accs) {
      if (!curves.has_curve({tech, opt, acc})) continue;
      CachePPA ppa;
      try {
        ppa = curves.estimate(tech, cap, opt, acc);
      } catch (const Error&) {
        continue;
      }
      double score = oracle_edap(ppa, mix.read_fraction,
                                 static_cast<double>(mix.reference_access_count),
                                 leakage);
      if (!w.found || score < w.score) {
        w = {true, opt, acc, score};
      }
    }
  }
  return w;
}

// ---------------------------------------------------------------------------
// Random model generators.
inline CachePPA random_ppa(std::mt19937_64& rng, MemoryTech tech, double cap) {
  std::uniform_real_distribution<double> lat(0.5, 20.0);
  std::uniform_real_distribution<double> nrg(0.05, 2.0);
  std::uniform_real_distribution<double> leak(10.0, 90000.0);
  CachePPA p;
  p.tech = tech;
  p.capacity_mb = cap;
  p.read_latency_ns = lat(rng);
  p.write_latency_ns = lat(rng);
  p.read_energy_nj = nrg(rng);
  p.write_energy_nj = nrg(rng);
  p.leakage_power_mw = leak(rng);
  p.area_mm2 = 0;  // filled by the curve builder (must increase with cap)
  return p;
}

// Curves over the given capacities for a random subset of (opt, acc) labels.
inline AnchorCurveSet random_curveset(std::mt19937_64& rng,
                                      const std::vector<double>& caps,
                                      double curve_keep_probability = 0.8) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> astep(0.1, 3.0);
  std::vector<AnchorRow> rows;
  for (auto tech : kAllTechs) {
    for (auto opt : kSweepOpts) {
      for (auto acc : kAllAccessTypes) {
        if (unit(rng) > curve_keep_probability) continue;
        double area = astep(rng);
        for (double cap : caps) {
          CachePPA p = random_ppa(rng, tech, cap);
          area += astep(rng);
          p.area_mm2 = area;
          rows.push_back({CurveKey{tech, opt, acc}, p});
        }
      }
    }
  }
  return AnchorCurveSet::from_rows(std::move(rows));
}

inline std::vector<TraceEvent> random_trace(std::mt19937_64& rng,
                                            std::size_t length,
                                            std::uint64_t max_lines,
                                            std::uint32_t line_size) {
  std::uniform_int_distribution<std::uint64_t> addr(0, max_lines * line_size - 1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<TraceEvent> t;
  t.reserve(length);
  for (std::size_t i = 0; i < length; ++i)
    t.push_back({unit(rng) < 0.7 ? MemOp::Read : MemOp::Write, addr(rng)});
  return t;
}

}  // namespace testutil
