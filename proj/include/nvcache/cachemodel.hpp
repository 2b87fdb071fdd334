#pragma once

#include <array>
#include <compare>
#include <map>
#include <string_view>
#include <vector>

#include "nvcache/techmodel.hpp"

namespace nvcache {

// Cache tuning targets. The first eight form the tuner's sweep set; EDAP
// labels dataset rows that are already EDAP-tuned configurations (the
// shipped anchor table), so they can be queried but are not themselves an
// optimization knob.
enum class OptTarget : std::uint8_t {
  ReadLatency,
  WriteLatency,
  ReadEnergy,
  WriteEnergy,
  ReadEDP,
  WriteEDP,
  Area,
  Leakage,
  EDAP,
};

inline constexpr std::array<OptTarget, 8> kSweepOpts = {
    OptTarget::ReadLatency, OptTarget::WriteLatency, OptTarget::ReadEnergy,
    OptTarget::WriteEnergy, OptTarget::ReadEDP,      OptTarget::WriteEDP,
    OptTarget::Area,        OptTarget::Leakage};

enum class AccessType : std::uint8_t { Normal, Fast, Sequential };

inline constexpr std::array<AccessType, 3> kAllAccessTypes = {
    AccessType::Normal, AccessType::Fast, AccessType::Sequential};

std::string_view to_string(OptTarget opt);
std::string_view to_string(AccessType acc);
OptTarget opt_from_string(std::string_view name);
AccessType acc_from_string(std::string_view name);

// Cache-level PPA point: t_r/t_w in ns, E_r/E_w in nJ, total leakage in mW,
// area in mm^2.
struct CachePPA {
  MemoryTech tech = MemoryTech::SRAM;
  double capacity_mb = 0;
  double read_latency_ns = 0;
  double write_latency_ns = 0;
  double read_energy_nj = 0;
  double write_energy_nj = 0;
  double leakage_power_mw = 0;
  double area_mm2 = 0;

  bool operator==(const CachePPA&) const = default;
};

struct CurveKey {
  MemoryTech tech;
  OptTarget opt;
  AccessType acc;

  auto operator<=>(const CurveKey&) const = default;
};

struct AnchorRow {
  CurveKey key;
  CachePPA ppa;
};

// Per-(tech, opt, acc) anchor curves over capacity. Queries return anchor
// values verbatim at anchor capacities and log-log interpolate between
// them; requests outside a curve's anchor range are hard errors (no
// extrapolation). Immutable after construction.
class AnchorCurveSet {
public:
  AnchorCurveSet() = default;

  // Validates (Error(Parse, SchemaMismatch|DuplicateCapacity|
  // NonMonotoneArea|RangeViolation)); rows may arrive in any order.
  static AnchorCurveSet from_rows(std::vector<AnchorRow> rows);
  static AnchorCurveSet from_csv(std::string_view csv);

  // Error(ModelRange, UnknownCurve|OutOfRange) on bad queries.
  CachePPA estimate(MemoryTech tech, double capacity_mb, OptTarget opt,
                    AccessType acc) const;
  double area_at(MemoryTech tech, double capacity_mb,
                 OptTarget opt = OptTarget::EDAP,
                 AccessType acc = AccessType::Normal) const;

  bool has_curve(const CurveKey& key) const { return curves_.contains(key); }
  const std::vector<CachePPA>& anchors(const CurveKey& key) const;
  std::vector<CurveKey> keys() const;
  // Capacities present in every selected tech's curve, ascending.
  std::vector<double> common_capacities(OptTarget opt, AccessType acc) const;

  std::string to_csv() const;

private:
  std::map<CurveKey, std::vector<CachePPA>> curves_;
};

inline constexpr std::string_view kAnchorCsvHeader =
    "tech,opt,acc,capacity_mb,read_lat_ns,write_lat_ns,read_e_nj,write_e_nj,"
    "leak_mw,area_mm2";

}  // namespace nvcache
