#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace nvcache {

enum class Phase : std::uint8_t { Inference, Training, HPC };

std::string_view to_string(Phase phase);
Phase phase_from_string(std::string_view name);

// Per-workload memory statistics as exported by a profiler run.
struct WorkloadStats {
  std::string name;
  Phase phase = Phase::Inference;
  int batch_size = 1;
  std::uint64_t l2_reads = 0;
  std::uint64_t l2_writes = 0;
  std::uint64_t dram_reads = 0;
  std::uint64_t dram_writes = 0;
  std::optional<double> exec_time_s;

  std::uint64_t dram_total() const { return dram_reads + dram_writes; }
  bool operator==(const WorkloadStats&) const = default;
};

inline constexpr std::string_view kProfileCsvHeader =
    "name,phase,batch_size,l2_reads,l2_writes,dram_reads,dram_writes,"
    "exec_time_s";

std::vector<WorkloadStats> parse_profile_csv(std::string_view csv);
std::string write_profile_csv(std::span<const WorkloadStats> stats);

// N_r / N_w; Error(ModelRange, ZeroWrites) when N_w = 0.
double rw_ratio(const WorkloadStats& s);

enum class MemOp : std::uint8_t { Read, Write };

struct TraceEvent {
  MemOp op;
  std::uint64_t address;  // byte address

  bool operator==(const TraceEvent&) const = default;
};

// Hot/cold two-region synthetic address stream. Deterministic per seed.
struct SyntheticTraceSpec {
  std::uint64_t length = 0;
  std::uint64_t working_set_bytes = 0;
  double hot_fraction = 0.1;          // leading fraction of the working set
  double hot_access_probability = 0.9;
  double read_probability = 0.7;
  std::uint64_t seed = 0;
};

void validate_trace_spec(const SyntheticTraceSpec& spec);
void gen_trace(const SyntheticTraceSpec& spec,
               const std::function<void(const TraceEvent&)>& sink);
std::vector<TraceEvent> gen_trace(const SyntheticTraceSpec& spec);

// Text trace: "# nvcache-dse v1" then one "R <hex>" / "W <hex>" per line.
std::string write_trace(std::span<const TraceEvent> events);
std::vector<TraceEvent> parse_trace(std::string_view text);

}  // namespace nvcache
