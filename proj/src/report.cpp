#include "nvcache/report.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <sstream>

#include <json.hpp>

#include "nvcache/textio.hpp"

namespace nvcache::report {

namespace {

using nlohmann::json;

json params_json(const StudyParameters& p) {
  json j;
  j["rho"] = p.rho;
  j["n_ref"] = p.n_ref;
  j["include_leakage"] = p.include_leakage;
  j["clock_hz"] = p.clock_hz;
  if (p.dram) {
    j["dram"] = {{"energy_per_access_nj", p.dram->energy_per_access_nj},
                 {"latency_per_access_ns", p.dram->latency_per_access_ns}};
  } else {
    j["dram"] = nullptr;
  }
  if (p.capacity_mb > 0) j["capacity_mb"] = p.capacity_mb;
  if (p.budget_mm2 > 0) j["budget_mm2"] = p.budget_mm2;
  if (p.tolerance > 0) j["tolerance"] = p.tolerance;
  return j;
}

json prov_json(const Provenance& prov) {
  json j = json::object();
  for (const auto& [k, v] : prov) j[k] = v;
  return j;
}

json row_json(const NormalizedRow& r, const std::string& key_name) {
  json j;
  j["workload"] = r.workload;
  j["tech"] = std::string(to_string(r.tech));
  j["capacity_mb"] = r.capacity_mb;
  if (!key_name.empty()) j[key_name] = r.key;
  j["dynamic_ratio"] = r.dynamic_ratio;
  j["leakage_ratio"] = r.leakage_ratio;
  j["total_ratio"] = r.total_ratio;
  j["delay_ratio"] = r.delay_ratio;
  j["edp_ratio"] = r.edp_ratio;
  j["absolute"] = {{"dynamic_j", r.raw.energy.dynamic_j},
                   {"leakage_j", r.raw.energy.leakage_j},
                   {"dram_j", r.raw.energy.dram_j},
                   {"total_j", r.raw.energy.total_j},
                   {"delay_s", r.raw.delay_s},
                   {"edp_js", r.raw.edp_js},
                   {"dram_included", r.raw.dram_included}};
  return j;
}

void append_prov_comments(std::ostringstream& out, const Provenance& prov) {
  out << "# " << textio::kFormatVersion << "\n";
  for (const auto& [k, v] : prov) out << "# " << k << "=" << v << "\n";
}

}  // namespace

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string to_json(const NormalizedReport& report, const Provenance& prov) {
  json j;
  j["study"] = report.study;
  j["baseline"] = std::string(to_string(report.baseline));
  j["parameters"] = params_json(report.params);
  j["provenance"] = prov_json(prov);
  j["rows"] = json::array();
  for (const auto& r : report.rows)
    j["rows"].push_back(row_json(r, report.key_name));
  j["means"] = json::array();
  for (const auto& m : report.means) {
    json mj;
    mj["tech"] = std::string(to_string(m.tech));
    if (!report.key_name.empty()) mj[report.key_name] = m.key;
    mj["capacity_mb"] = m.capacity_mb;
    mj["energy_ratio"] = m.energy_ratio;
    mj["delay_ratio"] = m.delay_ratio;
    mj["edp_ratio"] = m.edp_ratio;
    mj["edp_min"] = m.edp_min;
    mj["edp_max"] = m.edp_max;
    mj["edp_log_stddev"] = m.edp_log_stddev;
    j["means"].push_back(mj);
  }
  return j.dump(2) + "\n";
}

std::string to_csv(const NormalizedReport& report, const Provenance& prov) {
  std::ostringstream out;
  append_prov_comments(out, prov);
  out << "# study=" << report.study
      << " baseline=" << to_string(report.baseline) << " rho="
      << num(report.params.rho) << " include_leakage="
      << (report.params.include_leakage ? "true" : "false");
  if (report.params.dram)
    out << " dram_energy_nj=" << num(report.params.dram->energy_per_access_nj)
        << " dram_latency_ns=" << num(report.params.dram->latency_per_access_ns);
  if (report.params.tolerance > 0)
    out << " tolerance=" << num(report.params.tolerance);
  out << "\n";
  out << "workload,tech,capacity_mb";
  if (!report.key_name.empty() && report.key_name != "capacity_mb")
    out << ',' << report.key_name;
  out << ",dynamic_ratio,leakage_ratio,total_ratio,delay_ratio,edp_ratio,"
         "total_j,delay_s,edp_js\n";
  for (const auto& r : report.rows) {
    out << r.workload << ',' << to_string(r.tech) << ',' << num(r.capacity_mb);
    if (!report.key_name.empty() && report.key_name != "capacity_mb")
      out << ',' << num(r.key);
    out << ',' << num(r.dynamic_ratio) << ',' << num(r.leakage_ratio) << ','
        << num(r.total_ratio) << ',' << num(r.delay_ratio) << ','
        << num(r.edp_ratio) << ',' << num(r.raw.energy.total_j) << ','
        << num(r.raw.delay_s) << ',' << num(r.raw.edp_js) << "\n";
  }
  return out.str();
}

std::string plot_csv(const NormalizedReport& report, PlotMetric metric) {
  auto pick = [&](const NormalizedRow& r) {
    switch (metric) {
      case PlotMetric::DynamicEnergy: return r.dynamic_ratio;
      case PlotMetric::LeakageEnergy: return r.leakage_ratio;
      case PlotMetric::TotalEnergy: return r.total_ratio;
      case PlotMetric::Delay: return r.delay_ratio;
      case PlotMetric::Edp: return r.edp_ratio;
    }
    return 0.0;
  };

  // x axis: workloads when rows are per-workload at a fixed key, otherwise
  // the study key (batch size, capacity).
  bool keyed = report.key_name == "batch_size" || report.study == "scalability";

  // Column order = the tech sequence of the first row block.
  std::vector<MemoryTech> techs;
  for (const auto& r : report.rows) {
    if (std::find(techs.begin(), techs.end(), r.tech) != techs.end()) break;
    techs.push_back(r.tech);
  }

  std::ostringstream out;
  out << (keyed ? report.key_name : std::string("workload"));
  for (auto t : techs) out << ',' << to_string(t);
  out << "\n";

  if (keyed) {
    // Mean ratio per key, one column per tech.
    std::vector<double> keys;
    for (const auto& m : report.means)
      if (std::find(keys.begin(), keys.end(), m.key) == keys.end())
        keys.push_back(m.key);
    for (double k : keys) {
      out << num(k);
      for (auto t : techs) {
        for (const auto& m : report.means)
          if (m.tech == t && m.key == k) {
            double v = metric == PlotMetric::Delay ? m.delay_ratio
                       : metric == PlotMetric::Edp ? m.edp_ratio
                                                   : m.energy_ratio;
            out << ',' << num(v);
          }
      }
      out << "\n";
    }
  } else {
    // Rows arrive workload-major with a fixed tech sequence per workload;
    // walking in blocks keeps duplicate labels aligned with the header.
    const std::size_t t = techs.size();
    for (std::size_t base = 0; t > 0 && base + t <= report.rows.size();
         base += t) {
      out << report.rows[base].workload;
      for (std::size_t i = 0; i < t; ++i)
        out << ',' << num(pick(report.rows[base + i]));
      out << "\n";
    }
  }
  return out.str();
}

std::string tune_to_csv(const TuneResult& result, const ReferenceMix& mix,
                        const Provenance& prov) {
  std::ostringstream out;
  append_prov_comments(out, prov);
  out << "# rho=" << num(mix.read_fraction)
      << " n_ref=" << mix.reference_access_count << "\n";
  out << "tech,capacity_mb,opt,acc,edap,read_lat_ns,write_lat_ns,read_e_nj,"
         "write_e_nj,leak_mw,area_mm2\n";
  for (const auto& c : result.configs) {
    out << to_string(c.tech) << ',' << num(c.capacity_mb) << ','
        << to_string(c.opt) << ',' << to_string(c.acc) << ','
        << num(c.edap_score) << ',' << num(c.ppa.read_latency_ns) << ','
        << num(c.ppa.write_latency_ns) << ',' << num(c.ppa.read_energy_nj)
        << ',' << num(c.ppa.write_energy_nj) << ','
        << num(c.ppa.leakage_power_mw) << ',' << num(c.ppa.area_mm2) << "\n";
  }
  for (const auto& e : result.empty_pairs)
    out << "# empty-sweep: " << to_string(e.tech) << " at "
        << num(e.capacity_mb) << " MB\n";
  return out.str();
}

std::string tune_to_json(const TuneResult& result, const ReferenceMix& mix,
                         const EdapOptions& opts, const Provenance& prov) {
  json j;
  j["study"] = "tune";
  j["parameters"] = {{"rho", mix.read_fraction},
                     {"n_ref", mix.reference_access_count},
                     {"include_leakage", opts.include_leakage}};
  j["provenance"] = prov_json(prov);
  j["configs"] = json::array();
  for (const auto& c : result.configs) {
    j["configs"].push_back(
        {{"tech", std::string(to_string(c.tech))},
         {"capacity_mb", c.capacity_mb},
         {"opt", std::string(to_string(c.opt))},
         {"acc", std::string(to_string(c.acc))},
         {"edap", c.edap_score},
         {"ppa",
          {{"read_lat_ns", c.ppa.read_latency_ns},
           {"write_lat_ns", c.ppa.write_latency_ns},
           {"read_e_nj", c.ppa.read_energy_nj},
           {"write_e_nj", c.ppa.write_energy_nj},
           {"leak_mw", c.ppa.leakage_power_mw},
           {"area_mm2", c.ppa.area_mm2}}}});
  }
  j["empty_pairs"] = json::array();
  for (const auto& e : result.empty_pairs)
    j["empty_pairs"].push_back({{"tech", std::string(to_string(e.tech))},
                                {"capacity_mb", e.capacity_mb}});
  return j.dump(2) + "\n";
}

std::string sim_to_csv(const std::vector<SimRow>& rows, const Provenance& prov) {
  std::ostringstream out;
  append_prov_comments(out, prov);
  out << "capacity_mb,ways,accesses,hits,misses,writebacks,dram_transactions\n";
  for (const auto& r : rows) {
    out << num(r.capacity_mb) << ',' << r.ways << ',' << r.result.accesses
        << ',' << r.result.hits << ',' << r.result.misses << ','
        << r.result.writebacks << ',' << r.result.dram_transactions << "\n";
  }
  return out.str();
}

std::string sim_to_json(const std::vector<SimRow>& rows, const Provenance& prov) {
  json j;
  j["study"] = "simulate";
  j["provenance"] = prov_json(prov);
  j["rows"] = json::array();
  for (const auto& r : rows) {
    json rj = {{"capacity_mb", r.capacity_mb},
               {"ways", r.ways},
               {"accesses", r.result.accesses},
               {"hits", r.result.hits},
               {"misses", r.result.misses},
               {"writebacks", r.result.writebacks},
               {"dram_transactions", r.result.dram_transactions}};
    if (&r != rows.data())
      rj["dram_reduction_pct"] = dram_reduction(rows.front().result, r.result);
    j["rows"].push_back(rj);
  }
  return j.dump(2) + "\n";
}

std::string iso_area_to_json(const IsoAreaResult& result, const Provenance& prov) {
  json j;
  j["study"] = "iso-area";
  j["provenance"] = prov_json(prov);
  j["capacities_mb"] = json::object();
  j["dram_reduction_pct"] = json::object();
  for (const auto& [tech, cap] : result.capacity_mb)
    j["capacities_mb"][std::string(to_string(tech))] = cap;
  for (const auto& [tech, red] : result.dram_reduction_pct)
    j["dram_reduction_pct"][std::string(to_string(tech))] = red;
  j["without_dram"] = json::parse(to_json(result.without_dram, {}));
  j["with_dram"] = json::parse(to_json(result.with_dram, {}));
  return j.dump(2) + "\n";
}

std::string scalability_to_json(const ScalabilityReport& report,
                                const Provenance& prov) {
  json j = json::parse(to_json(report.report, prov));
  json facts;
  facts["sram_read_latency_advantage_caps"] =
      report.facts.sram_read_latency_advantage_caps;
  facts["mram_read_latency_advantage_caps"] =
      report.facts.mram_read_latency_advantage_caps;
  if (report.facts.sot_read_energy_breakeven_mb)
    facts["sot_read_energy_breakeven_mb"] =
        *report.facts.sot_read_energy_breakeven_mb;
  else
    facts["sot_read_energy_breakeven_mb"] = nullptr;
  j["facts"] = facts;
  return j.dump(2) + "\n";
}

}  // namespace nvcache::report
