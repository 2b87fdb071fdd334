#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nvcache/cachemodel.hpp"
#include "nvcache/cachesim.hpp"
#include "nvcache/techmodel.hpp"
#include "nvcache/tuner.hpp"
#include "nvcache/workload.hpp"

namespace nvcache {

struct EnergyBreakdown {
  double dynamic_j = 0;
  double leakage_j = 0;
  double dram_j = 0;
  double total_j = 0;  // always the exact sum of the three parts
};

struct WorkloadTechResult {
  std::string workload;
  MemoryTech tech = MemoryTech::SRAM;
  double capacity_mb = 0;
  EnergyBreakdown energy;
  double delay_s = 0;
  double edp_js = 0;  // energy.total_j * delay_s
  bool dram_included = false;
};

// ceil(latency * clock): the synchronous-interface cycle count.
std::uint64_t latency_cycles(double latency_ns, const PlatformParams& plat);

// N_r*E_r + N_w*E_w, in joules.
double dynamic_energy(const WorkloadStats& s, const CachePPA& ppa);

// Transaction-serialized time: (N_r*cyc(t_r) + N_w*cyc(t_w)) / f.
double cache_delay(const WorkloadStats& s, const CachePPA& ppa,
                   const PlatformParams& plat);

double leakage_energy(const CachePPA& ppa, double duration_s);

struct DramCost {
  double energy_j = 0;
  double delay_s = 0;
};
DramCost dram_cost(std::uint64_t transactions, const DramParams& dram);

struct EvalOptions {
  std::optional<DramParams> dram;  // engaged = include DRAM energy and delay
  std::optional<std::uint64_t> dram_txn_override;  // default: profile counts
};

// Composition: delay = cache delay (+ DRAM delay); leakage runs over
// exec_time_s when the profile provides it, otherwise over the computed
// delay; EDP = total energy * delay.
WorkloadTechResult evaluate(const WorkloadStats& s, const CachePPA& ppa,
                            const PlatformParams& plat,
                            const EvalOptions& opts = {});

// Parameter echo carried by every report.
struct StudyParameters {
  double rho = 0.8;
  std::uint64_t n_ref = 1000000;
  bool include_leakage = true;
  std::optional<DramParams> dram;
  double clock_hz = 1.481e9;
  double capacity_mb = 0;   // iso-capacity / batch
  double budget_mm2 = 0;    // iso-area
  double tolerance = 0;     // iso-area
};

// One (workload, tech, key) row: ratios vs the SRAM baseline plus the
// absolute result they were derived from.
struct NormalizedRow {
  std::string workload;
  MemoryTech tech;
  double capacity_mb = 0;
  double key = 0;  // study key: capacity_mb or batch_size
  double dynamic_ratio = 0;
  double leakage_ratio = 0;
  double total_ratio = 0;
  double delay_ratio = 0;
  double edp_ratio = 0;
  WorkloadTechResult raw;
};

// Geometric means across workloads for one (tech, key), with dispersion of
// the EDP ratio (min/max and standard deviation of the log-ratios).
struct MeanRow {
  MemoryTech tech;
  double key = 0;
  double capacity_mb = 0;
  double energy_ratio = 0;
  double delay_ratio = 0;
  double edp_ratio = 0;
  double edp_min = 0;
  double edp_max = 0;
  double edp_log_stddev = 0;
};

struct NormalizedReport {
  std::string study;
  MemoryTech baseline = MemoryTech::SRAM;
  std::string key_name;  // "capacity_mb" or "batch_size"
  StudyParameters params;
  std::vector<NormalizedRow> rows;
  std::vector<MeanRow> means;
};

// Minimum-EDAP configuration for one (tech, capacity) over every (opt, acc)
// label in the curve set. Error(ModelRange, EmptySweep) if nothing resolves.
TunedConfig tuned_config_at(const AnchorCurveSet& curves, MemoryTech tech,
                            double capacity_mb, const ReferenceMix& mix,
                            const EdapOptions& edap_opts = {});

NormalizedReport iso_capacity_study(std::span<const WorkloadStats> workloads,
                                    const AnchorCurveSet& curves,
                                    std::span<const MemoryTech> techs,
                                    double capacity_mb,
                                    const PlatformParams& plat,
                                    const ReferenceMix& mix = {},
                                    const EdapOptions& edap_opts = {});

// Largest grid capacity whose area fits budget * tolerance.
// Error(Infeasible, NoFeasibleCapacity) when none fits.
double iso_area_capacity(const AnchorCurveSet& curves, MemoryTech tech,
                         double area_budget_mm2, std::span<const double> grid,
                         double tolerance, OptTarget opt = OptTarget::EDAP,
                         AccessType acc = AccessType::Normal);

struct IsoAreaResult {
  NormalizedReport without_dram;
  NormalizedReport with_dram;
  std::map<MemoryTech, double> capacity_mb;
  std::map<MemoryTech, double> dram_reduction_pct;  // vs the SRAM baseline
};

// SRAM at the baseline capacity, each MRAM at its iso-area capacity; DRAM
// transactions per tech scale the profile counts by the per-tech reduction.
// budget_mm2 = 0 derives the budget from the SRAM baseline's own area.
IsoAreaResult iso_area_study(std::span<const WorkloadStats> workloads,
                             const AnchorCurveSet& curves,
                             const PlatformParams& plat, const DramParams& dram,
                             const std::map<MemoryTech, double>& reduction_pct,
                             std::span<const double> capacity_grid,
                             double tolerance, const ReferenceMix& mix = {},
                             const EdapOptions& edap_opts = {},
                             double budget_mm2 = 0);

// Reductions derived from simulator results (baseline = SRAM's result).
std::map<MemoryTech, double> reductions_from_sim(
    const std::map<MemoryTech, SimResult>& sim_results);

// EDP ratios vs SRAM keyed by batch size, all techs at one capacity.
// The family must share a workload name.
NormalizedReport batch_sweep(std::span<const WorkloadStats> family,
                             const AnchorCurveSet& curves,
                             const PlatformParams& plat, double capacity_mb,
                             const ReferenceMix& mix = {},
                             const EdapOptions& edap_opts = {});

struct ScalabilityFacts {
  std::vector<double> sram_read_latency_advantage_caps;  // SRAM strictly lowest
  std::vector<double> mram_read_latency_advantage_caps;  // both MRAMs below SRAM
  std::optional<double> sot_read_energy_breakeven_mb;    // first SOT <= SRAM
};

struct ScalabilityReport {
  NormalizedReport report;
  ScalabilityFacts facts;
};

// Per-capacity comparison of EDAP-tuned configurations (tuned must hold one
// config per (tech, cap)). OpenMP over the (cap, workload) grid; the serial
// variant is the reference.
ScalabilityReport scalability_study(const AnchorCurveSet& curves,
                                    std::span<const WorkloadStats> workloads,
                                    std::span<const double> caps_mb,
                                    const PlatformParams& plat,
                                    const TuneResult& tuned);
ScalabilityReport scalability_study_serial(const AnchorCurveSet& curves,
                                           std::span<const WorkloadStats> workloads,
                                           std::span<const double> caps_mb,
                                           const PlatformParams& plat,
                                           const TuneResult& tuned);

}  // namespace nvcache
