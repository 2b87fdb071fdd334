#include "nvcache/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "nvcache/errors.hpp"
#include "nvcache/parallel.hpp"

namespace nvcache {

std::uint64_t latency_cycles(double latency_ns, const PlatformParams& plat) {
  double f_ghz = plat.l2_clock_hz / 1e9;
  return static_cast<std::uint64_t>(std::ceil(latency_ns * f_ghz));
}

double dynamic_energy(const WorkloadStats& s, const CachePPA& ppa) {
  return (static_cast<double>(s.l2_reads) * ppa.read_energy_nj +
          static_cast<double>(s.l2_writes) * ppa.write_energy_nj) *
         1e-9;
}

double cache_delay(const WorkloadStats& s, const CachePPA& ppa,
                   const PlatformParams& plat) {
  double cycles =
      static_cast<double>(s.l2_reads) *
          static_cast<double>(latency_cycles(ppa.read_latency_ns, plat)) +
      static_cast<double>(s.l2_writes) *
          static_cast<double>(latency_cycles(ppa.write_latency_ns, plat));
  return cycles / plat.l2_clock_hz;
}

double leakage_energy(const CachePPA& ppa, double duration_s) {
  return ppa.leakage_power_mw * 1e-3 * duration_s;
}

DramCost dram_cost(std::uint64_t transactions, const DramParams& dram) {
  double n = static_cast<double>(transactions);
  return {n * dram.energy_per_access_nj * 1e-9,
          n * dram.latency_per_access_ns * 1e-9};
}

WorkloadTechResult evaluate(const WorkloadStats& s, const CachePPA& ppa,
                            const PlatformParams& plat,
                            const EvalOptions& opts) {
  if (s.l2_reads + s.l2_writes == 0)
    throw Error(ErrorKind::ModelRange, "EmptyWorkload",
                s.name + " has no L2 transactions");

  double cache_d = cache_delay(s, ppa, plat);
  DramCost dc;
  if (opts.dram) {
    std::uint64_t n = opts.dram_txn_override.value_or(s.dram_total());
    dc = dram_cost(n, *opts.dram);
  }
  double delay = cache_d + dc.delay_s;
  double leak_duration = s.exec_time_s.value_or(delay);

  WorkloadTechResult r;
  r.workload = s.name;
  r.tech = ppa.tech;
  r.capacity_mb = ppa.capacity_mb;
  r.energy.dynamic_j = dynamic_energy(s, ppa);
  r.energy.leakage_j = leakage_energy(ppa, leak_duration);
  r.energy.dram_j = dc.energy_j;
  r.energy.total_j = r.energy.dynamic_j + r.energy.leakage_j + r.energy.dram_j;
  r.delay_s = delay;
  r.edp_js = r.energy.total_j * delay;
  r.dram_included = opts.dram.has_value();
  return r;
}

TunedConfig tuned_config_at(const AnchorCurveSet& curves, MemoryTech tech,
                            double capacity_mb, const ReferenceMix& mix,
                            const EdapOptions& edap_opts) {
  SweepSpace space = SweepSpace::from_curves(curves);
  space.mems = {tech};
  space.caps_mb = {capacity_mb};
  auto result = tune_serial(space, curves, mix, edap_opts);
  if (result.configs.empty())
    throw Error(ErrorKind::ModelRange, "EmptySweep",
                std::string(to_string(tech)) + " at " +
                    std::to_string(capacity_mb) + " MB");
  return result.configs.front();
}

namespace {

// Report label: inference and training rows of the same network must stay
// distinguishable ("AlexNet-I" vs "AlexNet-T"); HPC names stand alone.
std::string display_label(const WorkloadStats& s) {
  switch (s.phase) {
    case Phase::Inference: return s.name + "-I";
    case Phase::Training: return s.name + "-T";
    case Phase::HPC: return s.name;
  }
  return s.name;
}

NormalizedRow make_row(const WorkloadTechResult& res,
                       const WorkloadTechResult& base, double key,
                       const std::string& label) {
  NormalizedRow row;
  row.workload = label;
  row.tech = res.tech;
  row.capacity_mb = res.capacity_mb;
  row.key = key;
  row.dynamic_ratio = res.energy.dynamic_j / base.energy.dynamic_j;
  row.leakage_ratio = res.energy.leakage_j / base.energy.leakage_j;
  row.total_ratio = res.energy.total_j / base.energy.total_j;
  row.delay_ratio = res.delay_s / base.delay_s;
  row.edp_ratio = res.edp_js / base.edp_js;
  row.raw = res;
  return row;
}

// Geometric means per (tech, key) across workloads, in row order of first
// appearance.
std::vector<MeanRow> summarize(const std::vector<NormalizedRow>& rows) {
  struct Acc {
    double log_energy = 0, log_delay = 0, log_edp = 0;
    std::vector<double> edp_ratios;
    double capacity_mb = 0;
    std::size_t n = 0;
  };
  std::vector<std::pair<std::pair<MemoryTech, double>, Acc>> groups;
  for (const auto& row : rows) {
    std::pair<MemoryTech, double> k{row.tech, row.key};
    auto it = std::find_if(groups.begin(), groups.end(),
                           [&](const auto& g) { return g.first == k; });
    if (it == groups.end()) {
      groups.push_back({k, {}});
      it = groups.end() - 1;
    }
    Acc& a = it->second;
    a.log_energy += std::log(row.total_ratio);
    a.log_delay += std::log(row.delay_ratio);
    a.log_edp += std::log(row.edp_ratio);
    a.edp_ratios.push_back(row.edp_ratio);
    a.capacity_mb = row.capacity_mb;
    a.n += 1;
  }
  std::vector<MeanRow> out;
  for (const auto& [key, a] : groups) {
    MeanRow m;
    m.tech = key.first;
    m.key = key.second;
    m.capacity_mb = a.capacity_mb;
    double n = static_cast<double>(a.n);
    m.energy_ratio = std::exp(a.log_energy / n);
    m.delay_ratio = std::exp(a.log_delay / n);
    m.edp_ratio = std::exp(a.log_edp / n);
    m.edp_min = *std::min_element(a.edp_ratios.begin(), a.edp_ratios.end());
    m.edp_max = *std::max_element(a.edp_ratios.begin(), a.edp_ratios.end());
    double mean_log = a.log_edp / n;
    double var = 0;
    for (double r : a.edp_ratios) {
      double d = std::log(r) - mean_log;
      var += d * d;
    }
    m.edp_log_stddev = std::sqrt(var / n);
    out.push_back(m);
  }
  return out;
}

StudyParameters make_params(const ReferenceMix& mix,
                            const EdapOptions& edap_opts,
                            const PlatformParams& plat) {
  StudyParameters p;
  p.rho = mix.read_fraction;
  p.n_ref = mix.reference_access_count;
  p.include_leakage = edap_opts.include_leakage;
  p.clock_hz = plat.l2_clock_hz;
  return p;
}

void require_workloads(std::span<const WorkloadStats> workloads) {
  if (workloads.empty())
    throw Error(ErrorKind::ModelRange, "EmptyWorkload", "no workloads given");
  for (const auto& s : workloads)
    if (s.l2_reads + s.l2_writes == 0)
      throw Error(ErrorKind::ModelRange, "EmptyWorkload",
                  s.name + " has no L2 transactions");
}

}  // namespace

NormalizedReport iso_capacity_study(std::span<const WorkloadStats> workloads,
                                    const AnchorCurveSet& curves,
                                    std::span<const MemoryTech> techs,
                                    double capacity_mb,
                                    const PlatformParams& plat,
                                    const ReferenceMix& mix,
                                    const EdapOptions& edap_opts) {
  require_workloads(workloads);
  if (std::find(techs.begin(), techs.end(), MemoryTech::SRAM) == techs.end())
    throw Error(ErrorKind::ModelRange, "BaselineMissing",
                "iso-capacity study needs the SRAM baseline");

  std::map<MemoryTech, CachePPA> ppa;
  for (auto tech : techs)
    ppa[tech] = tuned_config_at(curves, tech, capacity_mb, mix, edap_opts).ppa;

  NormalizedReport report;
  report.study = "iso-capacity";
  report.key_name = "capacity_mb";
  report.params = make_params(mix, edap_opts, plat);
  report.params.capacity_mb = capacity_mb;

  for (const auto& s : workloads) {
    auto base = evaluate(s, ppa.at(MemoryTech::SRAM), plat);
    for (auto tech : techs)
      report.rows.push_back(make_row(evaluate(s, ppa.at(tech), plat), base,
                                     capacity_mb, display_label(s)));
  }
  report.means = summarize(report.rows);
  return report;
}

double iso_area_capacity(const AnchorCurveSet& curves, MemoryTech tech,
                         double area_budget_mm2, std::span<const double> grid,
                         double tolerance, OptTarget opt, AccessType acc) {
  if (grid.empty() || !(area_budget_mm2 > 0) || !(tolerance >= 1.0))
    throw Error(ErrorKind::ModelRange, "RangeViolation",
                "iso-area search needs a grid, a positive budget, and "
                "tolerance >= 1");
  double best = 0;
  bool found = false;
  for (double cap : grid) {
    if (curves.area_at(tech, cap, opt, acc) <= area_budget_mm2 * tolerance &&
        (!found || cap > best)) {
      best = cap;
      found = true;
    }
  }
  if (!found)
    throw Error(ErrorKind::Infeasible, "NoFeasibleCapacity",
                std::string(to_string(tech)) + " under " +
                    std::to_string(area_budget_mm2) + " mm^2 * " +
                    std::to_string(tolerance));
  return best;
}

std::map<MemoryTech, double> reductions_from_sim(
    const std::map<MemoryTech, SimResult>& sim_results) {
  auto it = sim_results.find(MemoryTech::SRAM);
  if (it == sim_results.end())
    throw Error(ErrorKind::ModelRange, "BaselineMissing",
                "simulator results lack the SRAM baseline");
  std::map<MemoryTech, double> out;
  for (const auto& [tech, res] : sim_results)
    out[tech] = dram_reduction(it->second, res);
  return out;
}

IsoAreaResult iso_area_study(std::span<const WorkloadStats> workloads,
                             const AnchorCurveSet& curves,
                             const PlatformParams& plat, const DramParams& dram,
                             const std::map<MemoryTech, double>& reduction_pct,
                             std::span<const double> capacity_grid,
                             double tolerance, const ReferenceMix& mix,
                             const EdapOptions& edap_opts, double budget_mm2) {
  require_workloads(workloads);

  IsoAreaResult result;
  double baseline_cap = plat.l2_capacity_baseline_mb;
  double budget =
      budget_mm2 > 0
          ? budget_mm2
          : tuned_config_at(curves, MemoryTech::SRAM, baseline_cap, mix,
                            edap_opts)
                .ppa.area_mm2;

  std::map<MemoryTech, CachePPA> ppa;
  for (auto tech : kAllTechs) {
    double cap = tech == MemoryTech::SRAM
                     ? baseline_cap
                     : iso_area_capacity(curves, tech, budget, capacity_grid,
                                         tolerance);
    result.capacity_mb[tech] = cap;
    ppa[tech] = tuned_config_at(curves, tech, cap, mix, edap_opts).ppa;
    double red = 0;
    if (auto it = reduction_pct.find(tech); it != reduction_pct.end())
      red = it->second;
    result.dram_reduction_pct[tech] = tech == MemoryTech::SRAM ? 0.0 : red;
  }

  auto build = [&](bool with_dram) {
    NormalizedReport report;
    report.study = with_dram ? "iso-area+dram" : "iso-area";
    report.key_name = "capacity_mb";
    report.params = make_params(mix, edap_opts, plat);
    report.params.budget_mm2 = budget;
    report.params.tolerance = tolerance;
    if (with_dram) report.params.dram = dram;
    for (const auto& s : workloads) {
      auto eval_one = [&](MemoryTech tech) {
        EvalOptions opts;
        if (with_dram) {
          opts.dram = dram;
          double scale = 1.0 - result.dram_reduction_pct.at(tech) / 100.0;
          opts.dram_txn_override = static_cast<std::uint64_t>(
              std::llround(static_cast<double>(s.dram_total()) * scale));
        }
        return evaluate(s, ppa.at(tech), plat, opts);
      };
      auto base = eval_one(MemoryTech::SRAM);
      for (auto tech : kAllTechs)
        report.rows.push_back(make_row(eval_one(tech), base,
                                       result.capacity_mb.at(tech),
                                       display_label(s)));
    }
    report.means = summarize(report.rows);
    return report;
  };

  result.without_dram = build(false);
  result.with_dram = build(true);
  return result;
}

NormalizedReport batch_sweep(std::span<const WorkloadStats> family,
                             const AnchorCurveSet& curves,
                             const PlatformParams& plat, double capacity_mb,
                             const ReferenceMix& mix,
                             const EdapOptions& edap_opts) {
  require_workloads(family);
  for (const auto& s : family)
    if (s.name != family.front().name)
      throw Error(ErrorKind::ModelRange, "SchemaMismatch",
                  "batch family mixes workloads: " + family.front().name +
                      " vs " + s.name);

  std::map<MemoryTech, CachePPA> ppa;
  for (auto tech : kAllTechs)
    ppa[tech] = tuned_config_at(curves, tech, capacity_mb, mix, edap_opts).ppa;

  NormalizedReport report;
  report.study = "batch";
  report.key_name = "batch_size";
  report.params = make_params(mix, edap_opts, plat);
  report.params.capacity_mb = capacity_mb;

  std::vector<WorkloadStats> ordered(family.begin(), family.end());
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const WorkloadStats& a, const WorkloadStats& b) {
                     return a.batch_size < b.batch_size;
                   });
  for (const auto& s : ordered) {
    auto base = evaluate(s, ppa.at(MemoryTech::SRAM), plat);
    for (auto tech : kAllTechs)
      report.rows.push_back(make_row(evaluate(s, ppa.at(tech), plat), base,
                                     static_cast<double>(s.batch_size),
                                     display_label(s)));
  }
  report.means = summarize(report.rows);
  return report;
}

namespace {

ScalabilityReport scalability_impl(std::span<const WorkloadStats> workloads,
                                   std::span<const double> caps_mb,
                                   const PlatformParams& plat,
                                   const TuneResult& tuned, bool parallel) {
  require_workloads(workloads);
  if (caps_mb.empty())
    throw Error(ErrorKind::ModelRange, "RangeViolation", "no capacities given");

  // Tuned configuration per (tech, cap); every pair must be present.
  auto config_of = [&](MemoryTech tech, double cap) -> const TunedConfig& {
    for (const auto& c : tuned.configs)
      if (c.tech == tech && c.capacity_mb == cap) return c;
    throw Error(ErrorKind::ModelRange, "EmptySweep",
                std::string(to_string(tech)) + " at " + std::to_string(cap) +
                    " MB has no tuned configuration");
  };
  for (double cap : caps_mb)
    for (auto tech : kAllTechs) config_of(tech, cap);

  const std::size_t n_caps = caps_mb.size();
  const std::size_t n_wl = workloads.size();
  // One slot per (cap, workload, tech), filled independently.
  std::vector<WorkloadTechResult> slots(n_caps * n_wl * kAllTechs.size());

  auto fill = [&](std::size_t flat) {
    std::size_t ci = flat / n_wl;
    std::size_t wi = flat % n_wl;
    double cap = caps_mb[ci];
    for (std::size_t ti = 0; ti < kAllTechs.size(); ++ti) {
      const auto& cfg = config_of(kAllTechs[ti], cap);
      slots[(ci * n_wl + wi) * kAllTechs.size() + ti] =
          evaluate(workloads[wi], cfg.ppa, plat);
    }
  };

  const std::int64_t total = static_cast<std::int64_t>(n_caps * n_wl);
  if (parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(max_threads())
#endif
    for (std::int64_t i = 0; i < total; ++i)
      fill(static_cast<std::size_t>(i));
  } else {
    for (std::int64_t i = 0; i < total; ++i)
      fill(static_cast<std::size_t>(i));
  }

  ScalabilityReport out;
  out.report.study = "scalability";
  out.report.key_name = "capacity_mb";
  out.report.params.clock_hz = plat.l2_clock_hz;

  for (std::size_t ci = 0; ci < n_caps; ++ci) {
    for (std::size_t wi = 0; wi < n_wl; ++wi) {
      const auto* tech_slots = &slots[(ci * n_wl + wi) * kAllTechs.size()];
      const auto& base = tech_slots[0];  // kAllTechs[0] == SRAM
      for (std::size_t ti = 0; ti < kAllTechs.size(); ++ti)
        out.report.rows.push_back(make_row(tech_slots[ti], base, caps_mb[ci],
                                           display_label(workloads[wi])));
    }
  }
  out.report.means = summarize(out.report.rows);

  // Crossover facts from the tuned PPA curves themselves.
  for (double cap : caps_mb) {
    const auto& sram = config_of(MemoryTech::SRAM, cap).ppa;
    const auto& stt = config_of(MemoryTech::STT_MRAM, cap).ppa;
    const auto& sot = config_of(MemoryTech::SOT_MRAM, cap).ppa;
    if (sram.read_latency_ns < stt.read_latency_ns &&
        sram.read_latency_ns < sot.read_latency_ns)
      out.facts.sram_read_latency_advantage_caps.push_back(cap);
    if (stt.read_latency_ns < sram.read_latency_ns &&
        sot.read_latency_ns < sram.read_latency_ns)
      out.facts.mram_read_latency_advantage_caps.push_back(cap);
    if (!out.facts.sot_read_energy_breakeven_mb &&
        sot.read_energy_nj <= sram.read_energy_nj)
      out.facts.sot_read_energy_breakeven_mb = cap;
  }
  return out;
}

}  // namespace

ScalabilityReport scalability_study(const AnchorCurveSet&,
                                    std::span<const WorkloadStats> workloads,
                                    std::span<const double> caps_mb,
                                    const PlatformParams& plat,
                                    const TuneResult& tuned) {
  return scalability_impl(workloads, caps_mb, plat, tuned, true);
}

ScalabilityReport scalability_study_serial(
    const AnchorCurveSet&, std::span<const WorkloadStats> workloads,
    std::span<const double> caps_mb, const PlatformParams& plat,
    const TuneResult& tuned) {
  return scalability_impl(workloads, caps_mb, plat, tuned, false);
}

}  // namespace nvcache
