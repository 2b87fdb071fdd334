#pragma once

#include <string>
#include <utility>
#include <vector>

#include "nvcache/analysis.hpp"
#include "nvcache/cachesim.hpp"
#include "nvcache/tuner.hpp"

namespace nvcache::report {

// (label, value) pairs echoed into every emitted file, e.g. input paths.
using Provenance = std::vector<std::pair<std::string, std::string>>;

std::string to_json(const NormalizedReport& report, const Provenance& prov);
std::string to_csv(const NormalizedReport& report, const Provenance& prov);

// Figure-style data: one x column (key or workload) and one y column per
// tech, for the chosen ratio column.
enum class PlotMetric { DynamicEnergy, LeakageEnergy, TotalEnergy, Delay, Edp };
std::string plot_csv(const NormalizedReport& report, PlotMetric metric);

std::string tune_to_csv(const TuneResult& result, const ReferenceMix& mix,
                        const Provenance& prov);
std::string tune_to_json(const TuneResult& result, const ReferenceMix& mix,
                         const EdapOptions& opts, const Provenance& prov);

struct SimRow {
  double capacity_mb;
  std::uint32_t ways;
  SimResult result;
};
std::string sim_to_csv(const std::vector<SimRow>& rows, const Provenance& prov);
std::string sim_to_json(const std::vector<SimRow>& rows, const Provenance& prov);

std::string iso_area_to_json(const IsoAreaResult& result, const Provenance& prov);
std::string scalability_to_json(const ScalabilityReport& report,
                                const Provenance& prov);

// Deterministic float formatting shared by every emitter ("%.12g").
std::string num(double v);

}  // namespace nvcache::report
