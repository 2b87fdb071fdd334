#include "nvcache/tuner.hpp"

#include <algorithm>
#include <cstdlib>
#include <optional>
#include <set>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "nvcache/errors.hpp"
#include "nvcache/parallel.hpp"

namespace nvcache {

int max_threads() {
#ifdef _OPENMP
  if (const char* env = std::getenv("NVCACHE_DSE_THREADS")) {
    int n = std::atoi(env);
    if (n > 0) return n;
  }
  return std::max(1, omp_get_max_threads());
#else
  return 1;
#endif
}

SweepSpace SweepSpace::defaults() {
  SweepSpace s;
  s.mems.assign(kAllTechs.begin(), kAllTechs.end());
  s.caps_mb = {1, 2, 4, 8, 16, 32};
  s.opts.assign(kSweepOpts.begin(), kSweepOpts.end());
  s.accs.assign(kAllAccessTypes.begin(), kAllAccessTypes.end());
  return s;
}

SweepSpace SweepSpace::from_curves(const AnchorCurveSet& curves) {
  SweepSpace s;
  std::set<OptTarget> opts;
  std::set<AccessType> accs;
  std::set<MemoryTech> mems;
  for (const auto& key : curves.keys()) {
    mems.insert(key.tech);
    opts.insert(key.opt);
    accs.insert(key.acc);
  }
  for (auto t : kAllTechs)
    if (mems.contains(t)) s.mems.push_back(t);
  s.opts.assign(opts.begin(), opts.end());
  s.accs.assign(accs.begin(), accs.end());

  // Capacities resolvable for every selected tech under at least one label.
  std::set<double> caps;
  bool first = true;
  for (auto tech : s.mems) {
    std::set<double> mine;
    for (auto opt : s.opts)
      for (auto acc : s.accs)
        if (curves.has_curve({tech, opt, acc}))
          for (const auto& a : curves.anchors({tech, opt, acc}))
            mine.insert(a.capacity_mb);
    if (first) {
      caps = std::move(mine);
      first = false;
    } else {
      std::set<double> merged;
      for (double c : caps)
        if (mine.contains(c)) merged.insert(c);
      caps = std::move(merged);
    }
  }
  s.caps_mb.assign(caps.begin(), caps.end());
  return s;
}

double edap(const CachePPA& ppa, const ReferenceMix& mix,
            const EdapOptions& opts) {
  double n = static_cast<double>(mix.reference_access_count);
  double rho = mix.read_fraction;
  double delay_s =
      n * (rho * ppa.read_latency_ns + (1.0 - rho) * ppa.write_latency_ns) *
      1e-9;
  double energy_j =
      n * (rho * ppa.read_energy_nj + (1.0 - rho) * ppa.write_energy_nj) *
      1e-9;
  if (opts.include_leakage) energy_j += ppa.leakage_power_mw * 1e-3 * delay_s;
  return energy_j * delay_s * ppa.area_mm2;
}

namespace {

struct PairOutcome {
  std::optional<TunedConfig> config;
};

// One (tech, cap) reduction: first-encountered minimum over the declared
// (opt, acc) enumeration; unresolvable points are skipped.
PairOutcome tune_pair(MemoryTech tech, double cap, const SweepSpace& space,
                      const AnchorCurveSet& curves, const ReferenceMix& mix,
                      const EdapOptions& opts) {
  PairOutcome out;
  for (auto opt : space.opts) {
    for (auto acc : space.accs) {
      if (!curves.has_curve({tech, opt, acc})) continue;
      CachePPA ppa;
      try {
        ppa = curves.estimate(tech, cap, opt, acc);
      } catch (const Error&) {
        continue;  // OutOfRange for this curve
      }
      double score = edap(ppa, mix, opts);
      if (!out.config || score < out.config->edap_score)
        out.config = TunedConfig{tech, cap, opt, acc, score, ppa};
    }
  }
  return out;
}

TuneResult assemble(const SweepSpace& space,
                    const std::vector<PairOutcome>& outcomes) {
  TuneResult result;
  std::size_t idx = 0;
  for (auto tech : space.mems) {
    for (double cap : space.caps_mb) {
      const auto& o = outcomes[idx++];
      if (o.config)
        result.configs.push_back(*o.config);
      else
        result.empty_pairs.push_back({tech, cap});
    }
  }
  return result;
}

void validate_space(const SweepSpace& space) {
  if (space.mems.empty() || space.caps_mb.empty() || space.opts.empty() ||
      space.accs.empty())
    throw Error(ErrorKind::ModelRange, "EmptySweep",
                "sweep space has an empty axis");
}

}  // namespace

TuneResult tune(const SweepSpace& space, const AnchorCurveSet& curves,
                const ReferenceMix& mix, const EdapOptions& opts) {
  validate_space(space);
  const auto n_pairs = space.mems.size() * space.caps_mb.size();
  std::vector<PairOutcome> outcomes(n_pairs);
  const auto n_caps = space.caps_mb.size();

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(max_threads())
#endif
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(n_pairs); ++i) {
    auto tech = space.mems[static_cast<std::size_t>(i) / n_caps];
    double cap = space.caps_mb[static_cast<std::size_t>(i) % n_caps];
    outcomes[static_cast<std::size_t>(i)] =
        tune_pair(tech, cap, space, curves, mix, opts);
  }
  return assemble(space, outcomes);
}

TuneResult tune_serial(const SweepSpace& space, const AnchorCurveSet& curves,
                       const ReferenceMix& mix, const EdapOptions& opts) {
  validate_space(space);
  std::vector<PairOutcome> outcomes;
  outcomes.reserve(space.mems.size() * space.caps_mb.size());
  for (auto tech : space.mems)
    for (double cap : space.caps_mb)
      outcomes.push_back(tune_pair(tech, cap, space, curves, mix, opts));
  return assemble(space, outcomes);
}

}  // namespace nvcache
