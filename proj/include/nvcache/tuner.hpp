#pragma once

#include <cstdint>
#include <vector>

#include "nvcache/cachemodel.hpp"

namespace nvcache {

// Exhaustive sweep space: memories x capacities x optimization targets x
// access types. Enumeration order is the declared order and is part of the
// contract (tie-breaking, output order).
struct SweepSpace {
  std::vector<MemoryTech> mems;
  std::vector<double> caps_mb;
  std::vector<OptTarget> opts;
  std::vector<AccessType> accs;

  // All techs, capacities {1,2,4,8,16,32}, the eight sweep targets, all
  // access types.
  static SweepSpace defaults();
  // Sweep exactly the (opt, acc) labels present in the curve set, over the
  // capacities common to every tech (useful for pre-tuned datasets).
  static SweepSpace from_curves(const AnchorCurveSet& curves);
};

// Synthetic workload mix behind the tuner's EDAP score: a read fraction and
// a reference access count. Reads dominate real profiles, hence 0.8.
struct ReferenceMix {
  double read_fraction = 0.8;
  std::uint64_t reference_access_count = 1000000;
};

struct EdapOptions {
  bool include_leakage = true;
};

struct TunedConfig {
  MemoryTech tech;
  double capacity_mb;
  OptTarget opt;
  AccessType acc;
  double edap_score;
  CachePPA ppa;
};

// (tech, cap) pairs where no sweep point resolved (reported, not fatal).
struct EmptyPair {
  MemoryTech tech;
  double capacity_mb;
};

struct TuneResult {
  std::vector<TunedConfig> configs;  // ordered by (mem, cap) enumeration
  std::vector<EmptyPair> empty_pairs;
};

// EDAP = E * D * A with D = N_ref*(rho*t_r + (1-rho)*t_w),
// E = N_ref*(rho*E_r + (1-rho)*E_w) [+ P_leak*D], in J*s*mm^2.
double edap(const CachePPA& ppa, const ReferenceMix& mix,
            const EdapOptions& opts = {});

// Minimum-EDAP (opt, acc) per (tech, cap); ties resolved in enumeration
// order. OpenMP over (tech, cap) pairs; identical to tune_serial by
// construction (each pair is an independent pure reduction).
TuneResult tune(const SweepSpace& space, const AnchorCurveSet& curves,
                const ReferenceMix& mix, const EdapOptions& opts = {});
TuneResult tune_serial(const SweepSpace& space, const AnchorCurveSet& curves,
                       const ReferenceMix& mix, const EdapOptions& opts = {});

}  // namespace nvcache
