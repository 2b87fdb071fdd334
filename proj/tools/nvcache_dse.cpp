// nvcache-dse: design-space exploration for SRAM / STT-MRAM / SOT-MRAM
// last-level GPU caches. Subcommands wire dataset files into the tuner, the
// trace simulator, and the analysis studies, and emit CSV/JSON reports.

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nvcache/analysis.hpp"
#include "nvcache/cachemodel.hpp"
#include "nvcache/cachesim.hpp"
#include "nvcache/errors.hpp"
#include "nvcache/report.hpp"
#include "nvcache/techmodel.hpp"
#include "nvcache/textio.hpp"
#include "nvcache/tuner.hpp"
#include "nvcache/workload.hpp"

namespace {

using namespace nvcache;
using report::Provenance;

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse: return 2;
    case ErrorKind::ModelRange: return 3;
    case ErrorKind::Infeasible: return 4;
  }
  return 1;
}

struct CommonArgs {
  std::string out_dir = ".";
  std::string curves_path;
  std::string profile_path;
  std::string platform_path;
  double rho = 0.8;
  std::uint64_t n_ref = 1000000;
  bool no_leakage = false;
  double clock_hz = 0;       // > 0 overrides the platform file
  double dram_energy = 0;    // nJ per access, > 0 overrides
  double dram_latency = 0;   // ns per access, > 0 overrides

  ReferenceMix mix() const { return {rho, n_ref}; }
  EdapOptions edap_opts() const { return {!no_leakage}; }
};

void emit(const CommonArgs& args, const std::string& name,
          const std::string& content) {
  textio::atomic_write_file(args.out_dir + "/" + name, content);
}

AnchorCurveSet load_curves(const CommonArgs& args) {
  return AnchorCurveSet::from_csv(textio::read_file(args.curves_path));
}

std::vector<WorkloadStats> load_profile(const CommonArgs& args) {
  return parse_profile_csv(textio::read_file(args.profile_path));
}

PlatformConfig load_platform(const CommonArgs& args) {
  PlatformConfig cfg;
  if (!args.platform_path.empty())
    cfg = parse_platform_file(textio::read_file(args.platform_path));
  if (args.clock_hz > 0) cfg.platform.l2_clock_hz = args.clock_hz;
  if (args.dram_energy > 0) cfg.dram.energy_per_access_nj = args.dram_energy;
  if (args.dram_latency > 0) cfg.dram.latency_per_access_ns = args.dram_latency;
  return cfg;
}

Provenance base_provenance(const CommonArgs& args, const std::string& command) {
  Provenance prov{{"command", command}};
  if (!args.curves_path.empty()) prov.push_back({"curves", args.curves_path});
  if (!args.profile_path.empty()) prov.push_back({"profile", args.profile_path});
  if (!args.platform_path.empty())
    prov.push_back({"platform", args.platform_path});
  return prov;
}

std::vector<double> default_grid(const AnchorCurveSet& curves) {
  auto caps = curves.common_capacities(OptTarget::EDAP, AccessType::Normal);
  if (caps.empty()) {
    std::set<double> all;
    for (const auto& key : curves.keys())
      for (const auto& a : curves.anchors(key)) all.insert(a.capacity_mb);
    caps.assign(all.begin(), all.end());
  }
  return caps;
}

// Integer-MB search grid spanning the shared anchor range.
std::vector<double> integer_grid(const AnchorCurveSet& curves) {
  auto caps = default_grid(curves);
  if (caps.empty())
    throw Error(ErrorKind::ModelRange, "UnknownCurve", "no anchor curves");
  std::vector<double> grid;
  for (double c = std::ceil(caps.front()); c <= caps.back(); c += 1.0)
    grid.push_back(c);
  return grid;
}

void emit_report(const CommonArgs& args, const NormalizedReport& rep,
                 const Provenance& prov, const std::string& stem) {
  emit(args, stem + ".csv", report::to_csv(rep, prov));
  emit(args, stem + ".json", report::to_json(rep, prov));
}

void emit_plots(const CommonArgs& args, const NormalizedReport& rep,
                const std::string& stem) {
  emit(args, "plot_" + stem + "_dynamic.csv",
       report::plot_csv(rep, report::PlotMetric::DynamicEnergy));
  emit(args, "plot_" + stem + "_leakage.csv",
       report::plot_csv(rep, report::PlotMetric::LeakageEnergy));
  emit(args, "plot_" + stem + "_energy.csv",
       report::plot_csv(rep, report::PlotMetric::TotalEnergy));
  emit(args, "plot_" + stem + "_edp.csv",
       report::plot_csv(rep, report::PlotMetric::Edp));
}

// --- tune ------------------------------------------------------------------

struct TuneArgs {
  CommonArgs common;
  std::vector<double> caps;
  std::vector<std::string> opts;
  std::vector<std::string> accs;
  std::vector<std::string> mems;
};

int run_tune(const TuneArgs& args) {
  auto curves = load_curves(args.common);
  auto space = SweepSpace::from_curves(curves);
  if (!args.caps.empty()) space.caps_mb = args.caps;
  if (!args.mems.empty()) {
    space.mems.clear();
    for (const auto& m : args.mems) space.mems.push_back(tech_from_string(m));
  }
  if (!args.opts.empty()) {
    space.opts.clear();
    for (const auto& o : args.opts) space.opts.push_back(opt_from_string(o));
  }
  if (!args.accs.empty()) {
    space.accs.clear();
    for (const auto& a : args.accs) space.accs.push_back(acc_from_string(a));
  }

  auto result = tune(space, curves, args.common.mix(), args.common.edap_opts());
  auto prov = base_provenance(args.common, "tune");
  emit(args.common, "tune.csv",
       report::tune_to_csv(result, args.common.mix(), prov));
  emit(args.common, "tune.json",
       report::tune_to_json(result, args.common.mix(), args.common.edap_opts(),
                            prov));
  std::cout << "tune: " << result.configs.size() << " configurations, "
            << result.empty_pairs.size() << " empty pairs -> "
            << args.common.out_dir << "/tune.csv\n";
  return 0;
}

// --- ppa -------------------------------------------------------------------

struct PpaArgs {
  CommonArgs common;
  std::string tech = "SRAM";
  double capacity = 3.0;
  std::string opt = "EDAP";
  std::string acc = "Normal";
};

int run_ppa(const PpaArgs& args) {
  auto curves = load_curves(args.common);
  auto ppa = curves.estimate(tech_from_string(args.tech), args.capacity,
                             opt_from_string(args.opt),
                             acc_from_string(args.acc));
  std::string csv = std::string(kAnchorCsvHeader) + "\n" +
                    std::string(to_string(ppa.tech)) + "," + args.opt + "," +
                    args.acc + "," + report::num(ppa.capacity_mb) + "," +
                    report::num(ppa.read_latency_ns) + "," +
                    report::num(ppa.write_latency_ns) + "," +
                    report::num(ppa.read_energy_nj) + "," +
                    report::num(ppa.write_energy_nj) + "," +
                    report::num(ppa.leakage_power_mw) + "," +
                    report::num(ppa.area_mm2) + "\n";
  emit(args.common, "ppa.csv", csv);
  std::cout << csv;
  return 0;
}

// --- iso-capacity ----------------------------------------------------------

struct IsoCapArgs {
  CommonArgs common;
  double capacity = 0;  // 0 = platform baseline
};

int run_iso_capacity(const IsoCapArgs& args) {
  auto curves = load_curves(args.common);
  auto workloads = load_profile(args.common);
  auto cfg = load_platform(args.common);
  double cap = args.capacity > 0 ? args.capacity
                                 : cfg.platform.l2_capacity_baseline_mb;

  auto report = iso_capacity_study(workloads, curves, kAllTechs, cap,
                                   cfg.platform, args.common.mix(),
                                   args.common.edap_opts());
  auto prov = base_provenance(args.common, "iso-capacity");
  emit_report(args.common, report, prov, "iso_capacity");
  emit_plots(args.common, report, "iso_capacity");
  std::cout << "iso-capacity: " << report.rows.size() << " rows at "
            << report::num(cap) << " MB -> " << args.common.out_dir
            << "/iso_capacity.csv\n";
  return 0;
}

// --- iso-area ---------------------------------------------------------------

struct IsoAreaArgs {
  CommonArgs common;
  std::string budget_from = "SRAM:3";
  double budget_mm2 = 0;  // overrides budget_from when > 0
  double tolerance = 1.02;
  std::vector<double> grid;
  std::string sim_csv;
  std::vector<std::string> reductions;  // TECH=PCT
};

std::map<MemoryTech, double> parse_reductions(
    const std::vector<std::string>& specs) {
  std::map<MemoryTech, double> out;
  for (const auto& s : specs) {
    auto eq = s.find('=');
    if (eq == std::string::npos)
      throw Error(ErrorKind::Parse, "SchemaMismatch",
                  "expected TECH=PCT, got '" + s + "'");
    out[tech_from_string(s.substr(0, eq))] =
        textio::parse_double(s.substr(eq + 1), "dram reduction");
  }
  return out;
}

// SimResult rows from a simulate-command CSV; capacities ascending, first
// row is the SRAM baseline, largest caps map onto STT then SOT via their
// iso-area capacities. For full control use --dram-reduction.
std::map<MemoryTech, SimResult> sim_results_from_csv(
    const std::string& path, const std::map<MemoryTech, double>& caps) {
  auto text = textio::read_file(path);
  std::map<double, SimResult> by_cap;
  bool header_seen = false;
  for (auto raw : textio::split_lines(text)) {
    textio::check_version_marker(raw);
    auto line = textio::strip_comment(raw);
    if (line.empty()) continue;
    if (!header_seen) {
      if (line !=
          "capacity_mb,ways,accesses,hits,misses,writebacks,dram_transactions")
        throw Error(ErrorKind::Parse, "SchemaMismatch",
                    "simulator CSV header mismatch");
      header_seen = true;
      continue;
    }
    auto cells = textio::split_csv(line);
    if (cells.size() != 7)
      throw Error(ErrorKind::Parse, "SchemaMismatch",
                  "simulator CSV expects 7 columns");
    SimResult r;
    double cap = textio::parse_double(cells[0], "capacity_mb");
    r.accesses = textio::parse_count(cells[2], "accesses");
    r.hits = textio::parse_count(cells[3], "hits");
    r.misses = textio::parse_count(cells[4], "misses");
    r.writebacks = textio::parse_count(cells[5], "writebacks");
    r.dram_transactions = textio::parse_count(cells[6], "dram_transactions");
    by_cap[cap] = r;
  }
  std::map<MemoryTech, SimResult> out;
  for (const auto& [tech, cap] : caps) {
    // Nearest simulated capacity at or below the tech's capacity.
    auto it = by_cap.upper_bound(cap);
    if (it == by_cap.begin())
      throw Error(ErrorKind::ModelRange, "OutOfRange",
                  "no simulated capacity at or below " + report::num(cap));
    --it;
    out[tech] = it->second;
  }
  return out;
}

int run_iso_area(const IsoAreaArgs& args) {
  auto curves = load_curves(args.common);
  auto workloads = load_profile(args.common);
  auto cfg = load_platform(args.common);

  double budget = args.budget_mm2;
  PlatformParams plat = cfg.platform;
  if (budget <= 0) {
    auto colon = args.budget_from.find(':');
    if (colon == std::string::npos)
      throw Error(ErrorKind::Parse, "SchemaMismatch",
                  "expected TECH:CAP, got '" + args.budget_from + "'");
    auto tech = tech_from_string(args.budget_from.substr(0, colon));
    double cap = textio::parse_double(args.budget_from.substr(colon + 1),
                                      "budget capacity");
    plat.l2_capacity_baseline_mb = cap;
    budget = tuned_config_at(curves, tech, cap, args.common.mix(),
                             args.common.edap_opts())
                 .ppa.area_mm2;
  }

  std::vector<double> grid =
      args.grid.empty() ? integer_grid(curves) : args.grid;

  std::map<MemoryTech, double> reductions;
  if (!args.reductions.empty()) {
    reductions = parse_reductions(args.reductions);
  } else if (!args.sim_csv.empty()) {
    // Capacities first, so the sim rows can be matched per tech.
    std::map<MemoryTech, double> caps;
    caps[MemoryTech::SRAM] = plat.l2_capacity_baseline_mb;
    for (auto tech : {MemoryTech::STT_MRAM, MemoryTech::SOT_MRAM})
      caps[tech] = iso_area_capacity(curves, tech, budget, grid, args.tolerance);
    reductions =
        reductions_from_sim(sim_results_from_csv(args.sim_csv, caps));
  }

  auto result = iso_area_study(workloads, curves, plat, cfg.dram, reductions,
                               grid, args.tolerance, args.common.mix(),
                               args.common.edap_opts(), args.budget_mm2);

  auto prov = base_provenance(args.common, "iso-area");
  if (!args.sim_csv.empty()) prov.push_back({"sim", args.sim_csv});
  emit(args.common, "iso_area.json", report::iso_area_to_json(result, prov));
  emit(args.common, "iso_area_nodram.csv",
       report::to_csv(result.without_dram, prov));
  emit(args.common, "iso_area_dram.csv", report::to_csv(result.with_dram, prov));
  emit(args.common, "plot_iso_area_edp_nodram.csv",
       report::plot_csv(result.without_dram, report::PlotMetric::Edp));
  emit(args.common, "plot_iso_area_edp_dram.csv",
       report::plot_csv(result.with_dram, report::PlotMetric::Edp));

  std::cout << "iso-area: budget " << report::num(budget) << " mm^2, STT -> "
            << report::num(result.capacity_mb.at(MemoryTech::STT_MRAM))
            << " MB, SOT -> "
            << report::num(result.capacity_mb.at(MemoryTech::SOT_MRAM))
            << " MB -> " << args.common.out_dir << "/iso_area.json\n";
  return 0;
}

// --- batch ------------------------------------------------------------------

struct BatchArgs {
  CommonArgs common;
  std::string workload;
  std::string phase;
  double capacity = 0;
};

int run_batch(const BatchArgs& args) {
  auto curves = load_curves(args.common);
  auto all = load_profile(args.common);
  auto cfg = load_platform(args.common);
  double cap = args.capacity > 0 ? args.capacity
                                 : cfg.platform.l2_capacity_baseline_mb;

  std::string workload = args.workload.empty() ? all.front().name : args.workload;
  std::vector<Phase> phases;
  if (!args.phase.empty()) {
    phases.push_back(phase_from_string(args.phase));
  } else {
    for (const auto& s : all)
      if (s.name == workload &&
          std::find(phases.begin(), phases.end(), s.phase) == phases.end())
        phases.push_back(s.phase);
  }

  bool any = false;
  for (auto phase : phases) {
    std::vector<WorkloadStats> family;
    for (const auto& s : all)
      if (s.name == workload && s.phase == phase) family.push_back(s);
    if (family.empty()) continue;
    any = true;
    auto report = batch_sweep(family, curves, cfg.platform, cap,
                              args.common.mix(), args.common.edap_opts());
    auto prov = base_provenance(args.common, "batch");
    prov.push_back({"workload", workload});
    prov.push_back({"phase", std::string(to_string(phase))});
    std::string stem = "batch_" + std::string(to_string(phase));
    emit_report(args.common, report, prov, stem);
    emit(args.common, "plot_" + stem + "_edp.csv",
         report::plot_csv(report, report::PlotMetric::Edp));
    std::cout << "batch: " << workload << " " << to_string(phase) << ", "
              << family.size() << " batch sizes -> " << args.common.out_dir
              << "/" << stem << ".csv\n";
  }
  if (!any)
    throw Error(ErrorKind::ModelRange, "EmptyWorkload",
                "no profile rows for workload '" + workload + "'");
  return 0;
}

// --- scalability -------------------------------------------------------------

struct ScalabilityArgs {
  CommonArgs common;
  std::vector<double> caps;
};

int run_scalability(const ScalabilityArgs& args) {
  auto curves = load_curves(args.common);
  auto workloads = load_profile(args.common);
  auto cfg = load_platform(args.common);

  auto space = SweepSpace::from_curves(curves);
  if (!args.caps.empty()) space.caps_mb = args.caps;
  auto tuned = tune(space, curves, args.common.mix(), args.common.edap_opts());

  auto result = scalability_study(curves, workloads, space.caps_mb,
                                  cfg.platform, tuned);
  result.report.params.rho = args.common.rho;
  result.report.params.n_ref = args.common.n_ref;
  result.report.params.include_leakage = !args.common.no_leakage;

  auto prov = base_provenance(args.common, "scalability");
  emit(args.common, "scalability.json",
       report::scalability_to_json(result, prov));
  emit(args.common, "scalability.csv",
       report::to_csv(result.report, prov));
  emit(args.common, "plot_scalability_energy.csv",
       report::plot_csv(result.report, report::PlotMetric::TotalEnergy));
  emit(args.common, "plot_scalability_latency.csv",
       report::plot_csv(result.report, report::PlotMetric::Delay));
  emit(args.common, "plot_scalability_edp.csv",
       report::plot_csv(result.report, report::PlotMetric::Edp));

  std::cout << "scalability: " << space.caps_mb.size() << " capacities, "
            << workloads.size() << " workloads -> " << args.common.out_dir
            << "/scalability.json\n";
  return 0;
}

// --- simulate ----------------------------------------------------------------

struct SimulateArgs {
  CommonArgs common;
  std::string trace_path;
  std::vector<double> caps = {3, 6, 12, 24};
  std::uint32_t line = 128;
  std::uint64_t sets = 1024;
  std::uint64_t warmup = 0;
};

int run_simulate(const SimulateArgs& args) {
  auto trace = parse_trace(textio::read_file(args.trace_path));

  std::vector<CacheGeometry> geoms;
  std::vector<report::SimRow> rows;
  for (double cap : args.caps) {
    double bytes = cap * 1024.0 * 1024.0;
    double frame = static_cast<double>(args.line) * static_cast<double>(args.sets);
    double ways = bytes / frame;
    if (ways != std::floor(ways) || ways < 1)
      throw Error(ErrorKind::ModelRange, "InvalidGeometry",
                  report::num(cap) + " MB does not divide into " +
                      std::to_string(args.sets) + " sets of " +
                      std::to_string(args.line) + " B lines");
    CacheGeometry g;
    g.capacity_bytes = static_cast<std::uint64_t>(bytes);
    g.ways = static_cast<std::uint32_t>(ways);
    g.line_size_bytes = args.line;
    geoms.push_back(g);
  }

  auto results = capacity_sweep(trace, geoms, args.warmup);
  for (std::size_t i = 0; i < geoms.size(); ++i)
    rows.push_back({args.caps[i], geoms[i].ways, results[i]});

  auto prov = base_provenance(args.common, "simulate");
  prov.push_back({"trace", args.trace_path});
  emit(args.common, "sim.csv", report::sim_to_csv(rows, prov));
  emit(args.common, "sim.json", report::sim_to_json(rows, prov));
  std::cout << "simulate: " << trace.size() << " events over " << geoms.size()
            << " geometries -> " << args.common.out_dir << "/sim.csv\n";
  return 0;
}

// --- gen-trace ----------------------------------------------------------------

struct GenTraceArgs {
  CommonArgs common;
  std::string file = "trace.txt";
  std::uint64_t length = 1000000;
  std::uint64_t working_set = 8 * 1024 * 1024;
  double hot_fraction = 0.1;
  double hot_prob = 0.9;
  double read_prob = 0.7;
  std::uint64_t seed = 0;
};

int run_gen_trace(const GenTraceArgs& args) {
  SyntheticTraceSpec spec;
  spec.length = args.length;
  spec.working_set_bytes = args.working_set;
  spec.hot_fraction = args.hot_fraction;
  spec.hot_access_probability = args.hot_prob;
  spec.read_probability = args.read_prob;
  spec.seed = args.seed;
  validate_trace_spec(spec);

  std::string path = args.common.out_dir + "/" + args.file;
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out)
      throw Error(ErrorKind::Parse, "FileError", "cannot write " + tmp);
    out << "# " << textio::kFormatVersion << "\n";
    char buf[32];
    gen_trace(spec, [&](const TraceEvent& e) {
      std::snprintf(buf, sizeof buf, "%c %" PRIx64 "\n",
                    e.op == MemOp::Read ? 'R' : 'W', e.address);
      out << buf;
    });
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw Error(ErrorKind::Parse, "FileError", "rename failed for " + path);
  std::cout << "gen-trace: " << args.length << " events, seed " << args.seed
            << " -> " << path << "\n";
  return 0;
}

void add_common(CLI::App* cmd, CommonArgs& args, bool curves, bool profile) {
  cmd->add_option("--out", args.out_dir, "Output directory");
  if (curves)
    cmd->add_option("--curves", args.curves_path, "Anchor curve CSV")
        ->required();
  if (profile)
    cmd->add_option("--profile", args.profile_path, "Workload profile CSV")
        ->required();
  cmd->add_option("--platform", args.platform_path,
                  "Platform/DRAM parameter file");
  cmd->add_option("--rho", args.rho, "Reference mix read fraction")
      ->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--nref", args.n_ref, "Reference mix access count");
  cmd->add_flag("--no-leakage", args.no_leakage,
                "Exclude leakage energy from EDAP scores");
  cmd->add_option("--clock", args.clock_hz, "L2 clock override (Hz)");
  cmd->add_option("--dram-energy", args.dram_energy,
                  "DRAM energy per access override (nJ)");
  cmd->add_option("--dram-latency", args.dram_latency,
                  "DRAM latency per access override (ns)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Design-space exploration for NVM-based last-level GPU caches"};
  app.require_subcommand(1);

  TuneArgs tune_args;
  auto* tune_cmd = app.add_subcommand("tune", "EDAP-optimal cache tuning sweep");
  add_common(tune_cmd, tune_args.common, true, false);
  tune_cmd->add_option("--caps", tune_args.caps, "Capacities (MB)")->delimiter(',');
  tune_cmd->add_option("--mems", tune_args.mems, "Memory technologies")->delimiter(',');
  tune_cmd->add_option("--opts", tune_args.opts, "Optimization targets")->delimiter(',');
  tune_cmd->add_option("--accs", tune_args.accs, "Access types")->delimiter(',');

  PpaArgs ppa_args;
  auto* ppa_cmd = app.add_subcommand("ppa", "Query one cache PPA point");
  add_common(ppa_cmd, ppa_args.common, true, false);
  ppa_cmd->add_option("--tech", ppa_args.tech, "Memory technology")->required();
  ppa_cmd->add_option("--capacity", ppa_args.capacity, "Capacity (MB)")->required();
  ppa_cmd->add_option("--opt", ppa_args.opt, "Curve optimization label");
  ppa_cmd->add_option("--acc", ppa_args.acc, "Curve access label");

  IsoCapArgs isocap_args;
  auto* isocap_cmd =
      app.add_subcommand("iso-capacity", "Equal-capacity technology comparison");
  add_common(isocap_cmd, isocap_args.common, true, true);
  isocap_cmd->add_option("--capacity", isocap_args.capacity, "Capacity (MB)");

  IsoAreaArgs isoarea_args;
  auto* isoarea_cmd =
      app.add_subcommand("iso-area", "Equal-area technology comparison");
  add_common(isoarea_cmd, isoarea_args.common, true, true);
  isoarea_cmd->add_option("--budget-from", isoarea_args.budget_from,
                          "Area budget as TECH:CAP");
  isoarea_cmd->add_option("--budget", isoarea_args.budget_mm2,
                          "Explicit area budget (mm^2)");
  isoarea_cmd->add_option("--tolerance", isoarea_args.tolerance,
                          "Budget tolerance factor (>= 1)");
  isoarea_cmd->add_option("--caps", isoarea_args.grid, "Search grid (MB)")
      ->delimiter(',');
  isoarea_cmd->add_option("--sim-csv", isoarea_args.sim_csv,
                          "simulate-command CSV for DRAM reductions");
  isoarea_cmd
      ->add_option("--dram-reduction", isoarea_args.reductions,
                   "Per-tech DRAM reduction, TECH=PCT")
      ->delimiter(',');

  BatchArgs batch_args;
  auto* batch_cmd = app.add_subcommand("batch", "Batch-size EDP sweep");
  add_common(batch_cmd, batch_args.common, true, true);
  batch_cmd->add_option("--workload", batch_args.workload, "Workload name");
  batch_cmd->add_option("--phase", batch_args.phase, "Phase filter");
  batch_cmd->add_option("--capacity", batch_args.capacity, "Capacity (MB)");

  ScalabilityArgs scal_args;
  auto* scal_cmd =
      app.add_subcommand("scalability", "Capacity-scaling study, EDAP-tuned");
  add_common(scal_cmd, scal_args.common, true, true);
  scal_cmd->add_option("--caps", scal_args.caps, "Capacities (MB)")->delimiter(',');

  SimulateArgs sim_args;
  auto* sim_cmd =
      app.add_subcommand("simulate", "Trace-driven LRU capacity sweep");
  add_common(sim_cmd, sim_args.common, false, false);
  sim_cmd->add_option("--trace", sim_args.trace_path, "Trace file")->required();
  sim_cmd->add_option("--caps", sim_args.caps, "Capacities (MB)")->delimiter(',');
  sim_cmd->add_option("--line", sim_args.line, "Line size (bytes)");
  sim_cmd->add_option("--sets", sim_args.sets, "Set count (fixed across sweep)");
  sim_cmd->add_option("--warmup", sim_args.warmup, "Uncounted leading events");

  GenTraceArgs gen_args;
  auto* gen_cmd = app.add_subcommand("gen-trace", "Synthetic trace generator");
  add_common(gen_cmd, gen_args.common, false, false);
  gen_cmd->add_option("--file", gen_args.file, "Output trace filename");
  gen_cmd->add_option("--length", gen_args.length, "Event count");
  gen_cmd->add_option("--working-set", gen_args.working_set, "Working set (bytes)");
  gen_cmd->add_option("--hot-fraction", gen_args.hot_fraction, "Hot region fraction");
  gen_cmd->add_option("--hot-prob", gen_args.hot_prob, "Hot access probability");
  gen_cmd->add_option("--read-prob", gen_args.read_prob, "Read probability");
  gen_cmd->add_option("--seed", gen_args.seed, "RNG seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: Usage: " << e.what() << "\n";
    return 2;
  }

  try {
    if (tune_cmd->parsed()) return run_tune(tune_args);
    if (ppa_cmd->parsed()) return run_ppa(ppa_args);
    if (isocap_cmd->parsed()) return run_iso_capacity(isocap_args);
    if (isoarea_cmd->parsed()) return run_iso_area(isoarea_args);
    if (batch_cmd->parsed()) return run_batch(batch_args);
    if (scal_cmd->parsed()) return run_scalability(scal_args);
    if (sim_cmd->parsed()) return run_simulate(sim_args);
    if (gen_cmd->parsed()) return run_gen_trace(gen_args);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: Internal: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
