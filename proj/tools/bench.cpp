// Compares the OpenMP kernels against their serial reference
// implementations on sized-up synthetic inputs and verifies both paths
// agree. Wall-clock only; run on an idle machine for stable numbers.

#include <chrono>
#include <cstdio>
#include <random>
#include <vector>

#include "nvcache/analysis.hpp"
#include "nvcache/cachemodel.hpp"
#include "nvcache/cachesim.hpp"
#include "nvcache/parallel.hpp"
#include "nvcache/tuner.hpp"
#include "nvcache/workload.hpp"

using namespace nvcache;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void row(const char* name, double serial_s, double parallel_s, bool equal) {
  std::printf("%-28s %10.3fs %10.3fs %8.2fx  %s\n", name, serial_s, parallel_s,
              serial_s / parallel_s, equal ? "match" : "MISMATCH");
}

AnchorCurveSet big_curveset(std::mt19937_64& rng, int caps_n) {
  std::uniform_real_distribution<double> lat(0.5, 20.0);
  std::uniform_real_distribution<double> nrg(0.05, 2.0);
  std::uniform_real_distribution<double> leak(10.0, 90000.0);
  std::uniform_real_distribution<double> astep(0.1, 2.0);
  std::vector<AnchorRow> rows;
  for (auto tech : kAllTechs) {
    for (auto opt : kSweepOpts) {
      for (auto acc : kAllAccessTypes) {
        double area = astep(rng);
        for (int i = 0; i < caps_n; ++i) {
          CachePPA p;
          p.tech = tech;
          p.capacity_mb = 1.0 + i * 0.25;
          p.read_latency_ns = lat(rng);
          p.write_latency_ns = lat(rng);
          p.read_energy_nj = nrg(rng);
          p.write_energy_nj = nrg(rng);
          p.leakage_power_mw = leak(rng);
          area += astep(rng);
          p.area_mm2 = area;
          rows.push_back({{tech, opt, acc}, p});
        }
      }
    }
  }
  return AnchorCurveSet::from_rows(std::move(rows));
}

bool same_tune(const TuneResult& a, const TuneResult& b) {
  if (a.configs.size() != b.configs.size()) return false;
  for (std::size_t i = 0; i < a.configs.size(); ++i)
    if (a.configs[i].opt != b.configs[i].opt ||
        a.configs[i].acc != b.configs[i].acc ||
        a.configs[i].edap_score != b.configs[i].edap_score)
      return false;
  return true;
}

}  // namespace

int main() {
  std::printf("threads: %d\n", max_threads());
  std::printf("%-28s %11s %11s %9s\n", "kernel", "serial", "openmp", "speedup");

  std::mt19937_64 rng(17);

  {
    auto curves = big_curveset(rng, 2000);
    SweepSpace space = SweepSpace::defaults();
    space.caps_mb.clear();
    for (int i = 0; i < 2000; ++i) space.caps_mb.push_back(1.0 + i * 0.25);
    ReferenceMix mix;

    // Interpolated queries dominate: offset the sweep off the anchor grid.
    for (auto& c : space.caps_mb) c += 0.01;
    space.caps_mb.back() -= 0.02;

    auto t0 = Clock::now();
    auto serial = tune_serial(space, curves, mix);
    double ts = seconds_since(t0);
    t0 = Clock::now();
    auto parallel = tune(space, curves, mix);
    double tp = seconds_since(t0);
    row("tune (72 curves x 2000 caps)", ts, tp, same_tune(serial, parallel));
  }

  {
    SyntheticTraceSpec spec;
    spec.length = 4000000;
    spec.working_set_bytes = 16ull << 20;
    spec.hot_fraction = 0.2;
    spec.hot_access_probability = 0.85;
    spec.seed = 3;
    auto trace = gen_trace(spec);

    std::vector<CacheGeometry> geoms;
    for (std::uint32_t ways : {24, 48, 96, 192}) {
      CacheGeometry g;
      g.ways = ways;
      g.line_size_bytes = 128;
      g.capacity_bytes = static_cast<std::uint64_t>(ways) * 1024 * 128;
      geoms.push_back(g);
    }

    auto t0 = Clock::now();
    auto serial = capacity_sweep_serial(trace, geoms);
    double ts = seconds_since(t0);
    t0 = Clock::now();
    auto parallel = capacity_sweep(trace, geoms);
    double tp = seconds_since(t0);
    row("capacity_sweep (4M events)", ts, tp, serial == parallel);
  }

  {
    auto curves = big_curveset(rng, 40);
    std::vector<double> caps;
    for (int i = 0; i < 40; ++i) caps.push_back(1.0 + i * 0.25);
    SweepSpace space = SweepSpace::defaults();
    space.caps_mb = caps;
    ReferenceMix mix;
    auto tuned = tune(space, curves, mix);

    std::vector<WorkloadStats> workloads;
    std::uniform_int_distribution<std::uint64_t> count(1000000, 4000000000ull);
    for (int i = 0; i < 400; ++i) {
      WorkloadStats s;
      s.name = "w" + std::to_string(i);
      s.l2_reads = count(rng);
      s.l2_writes = count(rng) / 4 + 1;
      workloads.push_back(s);
    }

    PlatformParams plat;
    auto t0 = Clock::now();
    auto serial = scalability_study_serial(curves, workloads, caps, plat, tuned);
    double ts = seconds_since(t0);
    t0 = Clock::now();
    auto parallel = scalability_study(curves, workloads, caps, plat, tuned);
    double tp = seconds_since(t0);

    bool equal = serial.report.rows.size() == parallel.report.rows.size();
    for (std::size_t i = 0; equal && i < serial.report.rows.size(); ++i)
      equal = serial.report.rows[i].edp_ratio == parallel.report.rows[i].edp_ratio;
    row("scalability (400 workloads)", ts, tp, equal);
  }

  return 0;
}
