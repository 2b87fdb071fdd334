#include "nvcache/workload.hpp"

#include <charconv>
#include <cinttypes>
#include <cstdio>
#include <random>
#include <sstream>

#include "nvcache/errors.hpp"
#include "nvcache/textio.hpp"

namespace nvcache {

std::string_view to_string(Phase phase) {
  switch (phase) {
    case Phase::Inference: return "Inference";
    case Phase::Training: return "Training";
    case Phase::HPC: return "HPC";
  }
  return "?";
}

Phase phase_from_string(std::string_view name) {
  if (name == "Inference") return Phase::Inference;
  if (name == "Training") return Phase::Training;
  if (name == "HPC") return Phase::HPC;
  throw Error(ErrorKind::Parse, "SchemaMismatch",
              "unknown phase '" + std::string(name) + "'");
}

std::vector<WorkloadStats> parse_profile_csv(std::string_view csv) {
  std::vector<WorkloadStats> out;
  bool header_seen = false;
  std::size_t row = 0;
  for (auto raw : textio::split_lines(csv)) {
    textio::check_version_marker(raw);
    auto line = textio::strip_comment(raw);
    if (line.empty()) continue;
    if (!header_seen) {
      if (line != kProfileCsvHeader)
        throw Error(ErrorKind::Parse, "SchemaMismatch",
                    "profile CSV header mismatch");
      header_seen = true;
      continue;
    }
    ++row;
    auto cells = textio::split_csv(line);
    if (cells.size() != 8)
      throw Error(ErrorKind::Parse, "SchemaMismatch",
                  "row " + std::to_string(row) + ": expected 8 columns");
    auto count = [&](int col, const char* name) {
      std::string ctx = "row " + std::to_string(row) + " " + name;
      return static_cast<std::uint64_t>(textio::parse_count(cells[col], ctx));
    };
    WorkloadStats s;
    s.name = std::string(cells[0]);
    if (s.name.empty())
      throw Error(ErrorKind::Parse, "SchemaMismatch",
                  "row " + std::to_string(row) + ": empty workload name");
    s.phase = phase_from_string(cells[1]);
    long long batch = textio::parse_count(cells[2], "batch_size");
    if (batch < 1)
      throw Error(ErrorKind::Parse, "RangeViolation",
                  "row " + std::to_string(row) + ": batch_size must be >= 1");
    s.batch_size = static_cast<int>(batch);
    s.l2_reads = count(3, "l2_reads");
    s.l2_writes = count(4, "l2_writes");
    s.dram_reads = count(5, "dram_reads");
    s.dram_writes = count(6, "dram_writes");
    if (!cells[7].empty()) {
      double t = textio::parse_double(cells[7], "exec_time_s");
      if (!(t > 0))
        throw Error(ErrorKind::Parse, "RangeViolation",
                    "row " + std::to_string(row) + ": exec_time_s must be > 0");
      s.exec_time_s = t;
    }
    out.push_back(std::move(s));
  }
  if (!header_seen)
    throw Error(ErrorKind::Parse, "SchemaMismatch", "profile CSV has no header");
  return out;
}

std::string write_profile_csv(std::span<const WorkloadStats> stats) {
  std::ostringstream out;
  out.precision(17);
  out << "# " << textio::kFormatVersion << "\n" << kProfileCsvHeader << "\n";
  for (const auto& s : stats) {
    out << s.name << ',' << to_string(s.phase) << ',' << s.batch_size << ','
        << s.l2_reads << ',' << s.l2_writes << ',' << s.dram_reads << ','
        << s.dram_writes << ',';
    if (s.exec_time_s) out << *s.exec_time_s;
    out << "\n";
  }
  return out.str();
}

double rw_ratio(const WorkloadStats& s) {
  if (s.l2_writes == 0)
    throw Error(ErrorKind::ModelRange, "ZeroWrites", s.name);
  return static_cast<double>(s.l2_reads) / static_cast<double>(s.l2_writes);
}

void validate_trace_spec(const SyntheticTraceSpec& spec) {
  if (spec.length == 0)
    throw Error(ErrorKind::ModelRange, "RangeViolation", "length must be > 0");
  if (spec.working_set_bytes == 0)
    throw Error(ErrorKind::ModelRange, "RangeViolation",
                "working_set_bytes must be > 0");
  if (!(spec.hot_fraction > 0) || spec.hot_fraction > 1.0)
    throw Error(ErrorKind::ModelRange, "RangeViolation",
                "hot_fraction must be in (0, 1]");
  if (spec.hot_access_probability < 0 || spec.hot_access_probability > 1)
    throw Error(ErrorKind::ModelRange, "RangeViolation",
                "hot_access_probability must be in [0, 1]");
  if (spec.read_probability < 0 || spec.read_probability > 1)
    throw Error(ErrorKind::ModelRange, "RangeViolation",
                "read_probability must be in [0, 1]");
  // Smallest legal line size is 32 B; a hot region below that cannot hold
  // even one line.
  if (static_cast<double>(spec.working_set_bytes) * spec.hot_fraction < 32.0)
    throw Error(ErrorKind::ModelRange, "RangeViolation",
                "hot region smaller than one cache line");
}

void gen_trace(const SyntheticTraceSpec& spec,
               const std::function<void(const TraceEvent&)>& sink) {
  validate_trace_spec(spec);
  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  const std::uint64_t hot_bytes = std::max<std::uint64_t>(
      1, static_cast<std::uint64_t>(
             static_cast<double>(spec.working_set_bytes) * spec.hot_fraction));
  const std::uint64_t cold_bytes = spec.working_set_bytes - hot_bytes;

  for (std::uint64_t i = 0; i < spec.length; ++i) {
    // Fixed draw order per event keeps streams reproducible: region, offset,
    // then operation.
    bool hot = cold_bytes == 0 || unit(rng) < spec.hot_access_probability;
    std::uint64_t addr;
    if (hot) {
      addr = std::uniform_int_distribution<std::uint64_t>(0, hot_bytes - 1)(rng);
    } else {
      addr = hot_bytes + std::uniform_int_distribution<std::uint64_t>(
                             0, cold_bytes - 1)(rng);
    }
    MemOp op = unit(rng) < spec.read_probability ? MemOp::Read : MemOp::Write;
    sink(TraceEvent{op, addr});
  }
}

std::vector<TraceEvent> gen_trace(const SyntheticTraceSpec& spec) {
  std::vector<TraceEvent> events;
  events.reserve(spec.length);
  gen_trace(spec, [&](const TraceEvent& e) { events.push_back(e); });
  return events;
}

std::string write_trace(std::span<const TraceEvent> events) {
  std::string out;
  out += "# ";
  out += textio::kFormatVersion;
  out += "\n";
  char buf[32];
  for (const auto& e : events) {
    std::snprintf(buf, sizeof buf, "%c %" PRIx64 "\n",
                  e.op == MemOp::Read ? 'R' : 'W', e.address);
    out += buf;
  }
  return out;
}

std::vector<TraceEvent> parse_trace(std::string_view text) {
  std::vector<TraceEvent> out;
  std::size_t lineno = 0;
  for (auto raw : textio::split_lines(text)) {
    ++lineno;
    textio::check_version_marker(raw);
    auto line = textio::strip_comment(raw);
    if (line.empty()) continue;
    if (line.size() < 3 || (line[0] != 'R' && line[0] != 'W') || line[1] != ' ')
      throw Error(ErrorKind::Parse, "SchemaMismatch",
                  "trace line " + std::to_string(lineno) +
                      ": expected 'R <hex>' or 'W <hex>'");
    auto hex = textio::trim(line.substr(2));
    std::uint64_t addr = 0;
    auto [ptr, ec] =
        std::from_chars(hex.data(), hex.data() + hex.size(), addr, 16);
    if (ec != std::errc() || ptr != hex.data() + hex.size())
      throw Error(ErrorKind::Parse, "NonNumeric",
                  "trace line " + std::to_string(lineno) + ": bad address");
    out.push_back({line[0] == 'R' ? MemOp::Read : MemOp::Write, addr});
  }
  return out;
}

}  // namespace nvcache
