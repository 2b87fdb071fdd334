#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace nvcache {

enum class MemoryTech : std::uint8_t { SRAM, STT_MRAM, SOT_MRAM };

inline constexpr std::array<MemoryTech, 3> kAllTechs = {
    MemoryTech::SRAM, MemoryTech::STT_MRAM, MemoryTech::SOT_MRAM};

std::string_view to_string(MemoryTech tech);  // "SRAM" / "STT" / "SOT"
MemoryTech tech_from_string(std::string_view name);

// Device-level bitcell record. Latencies in ps, energies in pJ, area
// normalized to the foundry SRAM bitcell (= 1.0).
struct BitcellParams {
  MemoryTech tech = MemoryTech::SRAM;
  double sense_latency_ps = 0;
  double sense_energy_pj = 0;
  double write_latency_set_ps = 0;
  double write_latency_reset_ps = 0;
  double write_energy_set_pj = 0;
  double write_energy_reset_pj = 0;
  int fin_count_read = 1;
  int fin_count_write = 1;
  double area_norm = 1.0;

  bool operator==(const BitcellParams&) const = default;
};

struct PlatformParams {
  double l2_clock_hz = 1.481e9;
  int line_size_bytes = 128;
  double l2_capacity_baseline_mb = 3.0;
};

// Absolute DRAM costs are configuration, not measurement; reports echo
// whatever values were used.
struct DramParams {
  double energy_per_access_nj = 70.0;
  double latency_per_access_ns = 100.0;
};

// One invariant violation; an empty report means the record is valid.
struct Violation {
  std::string field;
  std::string message;
};

// Flat "key = value" document, '#' comments, required-key whitelist.
// Throws Error(Parse, MissingKey|DuplicateKey|NonNumeric|UnknownKey|
// RangeViolation).
BitcellParams parse_bitcell_file(std::string_view text);
std::string serialize_bitcell(const BitcellParams& p);
std::vector<Violation> validate_bitcell(const BitcellParams& p);

struct PlatformConfig {
  PlatformParams platform;
  DramParams dram;
};

// Same key-value format; every key optional, defaults apply.
PlatformConfig parse_platform_file(std::string_view text);

}  // namespace nvcache
