#include "nvcache/techmodel.hpp"

#include <cmath>
#include <map>
#include <span>
#include <sstream>

#include "nvcache/errors.hpp"
#include "nvcache/textio.hpp"

namespace nvcache {

namespace {

using textio::strip_comment;
using textio::trim;

const std::array<std::string_view, 10> kBitcellKeys = {
    "tech",
    "sense_latency_ps",
    "sense_energy_pj",
    "write_latency_set_ps",
    "write_latency_reset_ps",
    "write_energy_set_pj",
    "write_energy_reset_pj",
    "fin_count_read",
    "fin_count_write",
    "area_norm",
};

// key = value lines; returns pairs in file order after rejecting duplicates
// against the given whitelist.
std::map<std::string, std::string, std::less<>> parse_kv(
    std::string_view text, std::span<const std::string_view> whitelist) {
  std::map<std::string, std::string, std::less<>> out;
  for (auto raw : textio::split_lines(text)) {
    textio::check_version_marker(raw);
    auto line = strip_comment(raw);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw Error(ErrorKind::Parse, "SchemaMismatch",
                  "expected 'key = value', got '" + std::string(line) + "'");
    std::string key(trim(line.substr(0, eq)));
    std::string value(trim(line.substr(eq + 1)));
    bool known = false;
    for (auto k : whitelist) known = known || (k == key);
    if (!known) throw Error(ErrorKind::Parse, "UnknownKey", key);
    if (out.contains(key)) throw Error(ErrorKind::Parse, "DuplicateKey", key);
    out.emplace(std::move(key), std::move(value));
  }
  return out;
}

int parse_fin_count(const std::string& value, const std::string& key) {
  long long n = textio::parse_count(value, key);
  if (n < 1 || n > 1000)
    throw Error(ErrorKind::Parse, "RangeViolation", key + " must be >= 1");
  return static_cast<int>(n);
}

}  // namespace

std::string_view to_string(MemoryTech tech) {
  switch (tech) {
    case MemoryTech::SRAM: return "SRAM";
    case MemoryTech::STT_MRAM: return "STT";
    case MemoryTech::SOT_MRAM: return "SOT";
  }
  return "?";
}

MemoryTech tech_from_string(std::string_view name) {
  if (name == "SRAM") return MemoryTech::SRAM;
  if (name == "STT" || name == "STT_MRAM" || name == "STT-MRAM") return MemoryTech::STT_MRAM;
  if (name == "SOT" || name == "SOT_MRAM" || name == "SOT-MRAM") return MemoryTech::SOT_MRAM;
  throw Error(ErrorKind::Parse, "SchemaMismatch",
              "unknown memory technology '" + std::string(name) + "'");
}

BitcellParams parse_bitcell_file(std::string_view text) {
  auto kv = parse_kv(text, kBitcellKeys);
  for (auto key : kBitcellKeys)
    if (!kv.contains(key)) throw Error(ErrorKind::Parse, "MissingKey", std::string(key));

  BitcellParams p;
  p.tech = tech_from_string(kv.at("tech"));
  p.sense_latency_ps = textio::parse_double(kv.at("sense_latency_ps"), "sense_latency_ps");
  p.sense_energy_pj = textio::parse_double(kv.at("sense_energy_pj"), "sense_energy_pj");
  p.write_latency_set_ps = textio::parse_double(kv.at("write_latency_set_ps"), "write_latency_set_ps");
  p.write_latency_reset_ps = textio::parse_double(kv.at("write_latency_reset_ps"), "write_latency_reset_ps");
  p.write_energy_set_pj = textio::parse_double(kv.at("write_energy_set_pj"), "write_energy_set_pj");
  p.write_energy_reset_pj = textio::parse_double(kv.at("write_energy_reset_pj"), "write_energy_reset_pj");
  p.fin_count_read = parse_fin_count(kv.at("fin_count_read"), "fin_count_read");
  p.fin_count_write = parse_fin_count(kv.at("fin_count_write"), "fin_count_write");
  p.area_norm = textio::parse_double(kv.at("area_norm"), "area_norm");

  auto report = validate_bitcell(p);
  if (!report.empty())
    throw Error(ErrorKind::Parse, "RangeViolation",
                report.front().field + ": " + report.front().message);
  return p;
}

std::string serialize_bitcell(const BitcellParams& p) {
  std::ostringstream out;
  out.precision(17);
  out << "# " << textio::kFormatVersion << "\n";
  out << "tech = " << to_string(p.tech) << "\n";
  out << "sense_latency_ps = " << p.sense_latency_ps << "\n";
  out << "sense_energy_pj = " << p.sense_energy_pj << "\n";
  out << "write_latency_set_ps = " << p.write_latency_set_ps << "\n";
  out << "write_latency_reset_ps = " << p.write_latency_reset_ps << "\n";
  out << "write_energy_set_pj = " << p.write_energy_set_pj << "\n";
  out << "write_energy_reset_pj = " << p.write_energy_reset_pj << "\n";
  out << "fin_count_read = " << p.fin_count_read << "\n";
  out << "fin_count_write = " << p.fin_count_write << "\n";
  out << "area_norm = " << p.area_norm << "\n";
  return out.str();
}

std::vector<Violation> validate_bitcell(const BitcellParams& p) {
  std::vector<Violation> v;
  auto positive = [&](double x, const char* field) {
    if (!(x > 0)) v.push_back({field, "must be > 0"});
  };
  positive(p.sense_latency_ps, "sense_latency_ps");
  positive(p.sense_energy_pj, "sense_energy_pj");
  positive(p.write_latency_set_ps, "write_latency_set_ps");
  positive(p.write_latency_reset_ps, "write_latency_reset_ps");

  bool mram = p.tech != MemoryTech::SRAM;
  if (p.write_energy_set_pj < 0 || (mram && p.write_energy_set_pj == 0))
    v.push_back({"write_energy_set_pj", mram ? "must be > 0 for MRAM" : "must be >= 0"});
  if (p.write_energy_reset_pj < 0 || (mram && p.write_energy_reset_pj == 0))
    v.push_back({"write_energy_reset_pj", mram ? "must be > 0 for MRAM" : "must be >= 0"});

  if (p.fin_count_read < 1) v.push_back({"fin_count_read", "must be >= 1"});
  if (p.fin_count_write < 1) v.push_back({"fin_count_write", "must be >= 1"});

  if (!(p.area_norm > 0) || p.area_norm > 10.0)
    v.push_back({"area_norm", "must be in (0, 10]"});
  else if (p.tech == MemoryTech::SRAM && p.area_norm != 1.0)
    v.push_back({"area_norm", "must be 1.0 for SRAM (normalization basis)"});
  return v;
}

PlatformConfig parse_platform_file(std::string_view text) {
  static const std::array<std::string_view, 5> keys = {
      "l2_clock_hz", "line_size_bytes", "l2_capacity_baseline_mb",
      "dram_energy_per_access_nj", "dram_latency_per_access_ns"};
  auto kv = parse_kv(text, keys);

  PlatformConfig cfg;
  if (auto it = kv.find("l2_clock_hz"); it != kv.end())
    cfg.platform.l2_clock_hz = textio::parse_double(it->second, "l2_clock_hz");
  if (auto it = kv.find("line_size_bytes"); it != kv.end())
    cfg.platform.line_size_bytes =
        static_cast<int>(textio::parse_count(it->second, "line_size_bytes"));
  if (auto it = kv.find("l2_capacity_baseline_mb"); it != kv.end())
    cfg.platform.l2_capacity_baseline_mb =
        textio::parse_double(it->second, "l2_capacity_baseline_mb");
  if (auto it = kv.find("dram_energy_per_access_nj"); it != kv.end())
    cfg.dram.energy_per_access_nj =
        textio::parse_double(it->second, "dram_energy_per_access_nj");
  if (auto it = kv.find("dram_latency_per_access_ns"); it != kv.end())
    cfg.dram.latency_per_access_ns =
        textio::parse_double(it->second, "dram_latency_per_access_ns");

  if (!(cfg.platform.l2_clock_hz > 0))
    throw Error(ErrorKind::Parse, "RangeViolation", "l2_clock_hz must be > 0");
  int ls = cfg.platform.line_size_bytes;
  if (ls < 32 || (ls & (ls - 1)) != 0)
    throw Error(ErrorKind::Parse, "RangeViolation",
                "line_size_bytes must be a power of two >= 32");
  if (!(cfg.dram.energy_per_access_nj > 0) || !(cfg.dram.latency_per_access_ns > 0))
    throw Error(ErrorKind::Parse, "RangeViolation", "DRAM costs must be > 0");
  return cfg;
}

}  // namespace nvcache
