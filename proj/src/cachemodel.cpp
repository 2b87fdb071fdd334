#include "nvcache/cachemodel.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "nvcache/errors.hpp"
#include "nvcache/textio.hpp"

namespace nvcache {

namespace {

std::string curve_name(const CurveKey& k) {
  std::string s;
  s += to_string(k.tech);
  s += "/";
  s += to_string(k.opt);
  s += "/";
  s += to_string(k.acc);
  return s;
}

// Log-log linear interpolation; zero endpoints map to zero, the continuous
// limit of the log-space formula (relevant only for leakage, which may be 0).
double loglog_interp(double c_lo, double c_hi, double v_lo, double v_hi,
                     double c) {
  if (v_lo == 0.0 || v_hi == 0.0) return 0.0;
  double t = (std::log(c) - std::log(c_lo)) / (std::log(c_hi) - std::log(c_lo));
  return std::exp((1.0 - t) * std::log(v_lo) + t * std::log(v_hi));
}

void validate_anchor(const CachePPA& p) {
  auto positive = [&](double x, const char* field) {
    if (!(x > 0))
      throw Error(ErrorKind::Parse, "RangeViolation",
                  std::string(field) + " must be > 0");
  };
  positive(p.capacity_mb, "capacity_mb");
  positive(p.read_latency_ns, "read_lat_ns");
  positive(p.write_latency_ns, "write_lat_ns");
  positive(p.read_energy_nj, "read_e_nj");
  positive(p.write_energy_nj, "write_e_nj");
  positive(p.area_mm2, "area_mm2");
  if (p.leakage_power_mw < 0)
    throw Error(ErrorKind::Parse, "RangeViolation", "leak_mw must be >= 0");
}

}  // namespace

std::string_view to_string(OptTarget opt) {
  switch (opt) {
    case OptTarget::ReadLatency: return "ReadLatency";
    case OptTarget::WriteLatency: return "WriteLatency";
    case OptTarget::ReadEnergy: return "ReadEnergy";
    case OptTarget::WriteEnergy: return "WriteEnergy";
    case OptTarget::ReadEDP: return "ReadEDP";
    case OptTarget::WriteEDP: return "WriteEDP";
    case OptTarget::Area: return "Area";
    case OptTarget::Leakage: return "Leakage";
    case OptTarget::EDAP: return "EDAP";
  }
  return "?";
}

std::string_view to_string(AccessType acc) {
  switch (acc) {
    case AccessType::Normal: return "Normal";
    case AccessType::Fast: return "Fast";
    case AccessType::Sequential: return "Sequential";
  }
  return "?";
}

OptTarget opt_from_string(std::string_view name) {
  for (auto o : {OptTarget::ReadLatency, OptTarget::WriteLatency,
                 OptTarget::ReadEnergy, OptTarget::WriteEnergy,
                 OptTarget::ReadEDP, OptTarget::WriteEDP, OptTarget::Area,
                 OptTarget::Leakage, OptTarget::EDAP})
    if (to_string(o) == name) return o;
  throw Error(ErrorKind::Parse, "SchemaMismatch",
              "unknown optimization target '" + std::string(name) + "'");
}

AccessType acc_from_string(std::string_view name) {
  for (auto a : kAllAccessTypes)
    if (to_string(a) == name) return a;
  throw Error(ErrorKind::Parse, "SchemaMismatch",
              "unknown access type '" + std::string(name) + "'");
}

AnchorCurveSet AnchorCurveSet::from_rows(std::vector<AnchorRow> rows) {
  AnchorCurveSet set;
  for (auto& row : rows) {
    validate_anchor(row.ppa);
    if (row.ppa.tech != row.key.tech)
      throw Error(ErrorKind::Parse, "SchemaMismatch",
                  "anchor tech does not match its curve key");
    set.curves_[row.key].push_back(row.ppa);
  }
  for (auto& [key, anchors] : set.curves_) {
    std::stable_sort(anchors.begin(), anchors.end(),
                     [](const CachePPA& a, const CachePPA& b) {
                       return a.capacity_mb < b.capacity_mb;
                     });
    for (std::size_t i = 1; i < anchors.size(); ++i) {
      if (anchors[i].capacity_mb == anchors[i - 1].capacity_mb)
        throw Error(ErrorKind::Parse, "DuplicateCapacity",
                    curve_name(key) + " at " +
                        std::to_string(anchors[i].capacity_mb) + " MB");
      if (anchors[i].area_mm2 <= anchors[i - 1].area_mm2)
        throw Error(ErrorKind::Parse, "NonMonotoneArea",
                    curve_name(key) + " between " +
                        std::to_string(anchors[i - 1].capacity_mb) + " and " +
                        std::to_string(anchors[i].capacity_mb) + " MB");
    }
  }
  return set;
}

AnchorCurveSet AnchorCurveSet::from_csv(std::string_view csv) {
  auto lines = textio::split_lines(csv);
  std::vector<AnchorRow> rows;
  bool header_seen = false;
  for (auto raw : lines) {
    textio::check_version_marker(raw);
    auto line = textio::strip_comment(raw);
    if (line.empty()) continue;
    if (!header_seen) {
      if (line != kAnchorCsvHeader)
        throw Error(ErrorKind::Parse, "SchemaMismatch",
                    "anchor CSV header mismatch");
      header_seen = true;
      continue;
    }
    auto cells = textio::split_csv(line);
    if (cells.size() != 10)
      throw Error(ErrorKind::Parse, "SchemaMismatch",
                  "expected 10 columns, got " + std::to_string(cells.size()));
    AnchorRow row;
    row.key.tech = tech_from_string(cells[0]);
    row.key.opt = opt_from_string(cells[1]);
    row.key.acc = acc_from_string(cells[2]);
    row.ppa.tech = row.key.tech;
    row.ppa.capacity_mb = textio::parse_double(cells[3], "capacity_mb");
    row.ppa.read_latency_ns = textio::parse_double(cells[4], "read_lat_ns");
    row.ppa.write_latency_ns = textio::parse_double(cells[5], "write_lat_ns");
    row.ppa.read_energy_nj = textio::parse_double(cells[6], "read_e_nj");
    row.ppa.write_energy_nj = textio::parse_double(cells[7], "write_e_nj");
    row.ppa.leakage_power_mw = textio::parse_double(cells[8], "leak_mw");
    row.ppa.area_mm2 = textio::parse_double(cells[9], "area_mm2");
    rows.push_back(row);
  }
  if (!header_seen)
    throw Error(ErrorKind::Parse, "SchemaMismatch", "anchor CSV has no header");
  return from_rows(std::move(rows));
}

CachePPA AnchorCurveSet::estimate(MemoryTech tech, double capacity_mb,
                                  OptTarget opt, AccessType acc) const {
  CurveKey key{tech, opt, acc};
  auto it = curves_.find(key);
  if (it == curves_.end())
    throw Error(ErrorKind::ModelRange, "UnknownCurve", curve_name(key));
  const auto& anchors = it->second;

  if (!(capacity_mb > 0) || capacity_mb < anchors.front().capacity_mb ||
      capacity_mb > anchors.back().capacity_mb)
    throw Error(ErrorKind::ModelRange, "OutOfRange",
                curve_name(key) + ": " + std::to_string(capacity_mb) +
                    " MB outside [" +
                    std::to_string(anchors.front().capacity_mb) + ", " +
                    std::to_string(anchors.back().capacity_mb) + "]");

  auto hi = std::lower_bound(anchors.begin(), anchors.end(), capacity_mb,
                             [](const CachePPA& a, double c) {
                               return a.capacity_mb < c;
                             });
  // Anchor hit: return the stored fields verbatim.
  if (hi->capacity_mb == capacity_mb) return *hi;
  auto lo = hi - 1;

  CachePPA out;
  out.tech = tech;
  out.capacity_mb = capacity_mb;
  auto interp = [&](double CachePPA::*field) {
    return loglog_interp(lo->capacity_mb, hi->capacity_mb, (*lo).*field,
                         (*hi).*field, capacity_mb);
  };
  out.read_latency_ns = interp(&CachePPA::read_latency_ns);
  out.write_latency_ns = interp(&CachePPA::write_latency_ns);
  out.read_energy_nj = interp(&CachePPA::read_energy_nj);
  out.write_energy_nj = interp(&CachePPA::write_energy_nj);
  out.leakage_power_mw = interp(&CachePPA::leakage_power_mw);
  out.area_mm2 = interp(&CachePPA::area_mm2);
  return out;
}

double AnchorCurveSet::area_at(MemoryTech tech, double capacity_mb,
                               OptTarget opt, AccessType acc) const {
  return estimate(tech, capacity_mb, opt, acc).area_mm2;
}

const std::vector<CachePPA>& AnchorCurveSet::anchors(const CurveKey& key) const {
  auto it = curves_.find(key);
  if (it == curves_.end())
    throw Error(ErrorKind::ModelRange, "UnknownCurve", curve_name(key));
  return it->second;
}

std::vector<CurveKey> AnchorCurveSet::keys() const {
  std::vector<CurveKey> out;
  out.reserve(curves_.size());
  for (const auto& [key, _] : curves_) out.push_back(key);
  return out;
}

std::vector<double> AnchorCurveSet::common_capacities(OptTarget opt,
                                                      AccessType acc) const {
  std::vector<double> caps;
  bool first = true;
  for (auto tech : kAllTechs) {
    auto it = curves_.find(CurveKey{tech, opt, acc});
    if (it == curves_.end()) continue;
    std::vector<double> mine;
    for (const auto& a : it->second) mine.push_back(a.capacity_mb);
    if (first) {
      caps = std::move(mine);
      first = false;
    } else {
      std::vector<double> merged;
      std::set_intersection(caps.begin(), caps.end(), mine.begin(), mine.end(),
                            std::back_inserter(merged));
      caps = std::move(merged);
    }
  }
  return caps;
}

std::string AnchorCurveSet::to_csv() const {
  std::ostringstream out;
  out.precision(12);
  out << "# " << textio::kFormatVersion << "\n" << kAnchorCsvHeader << "\n";
  for (const auto& [key, anchors] : curves_) {
    for (const auto& a : anchors) {
      out << to_string(key.tech) << ',' << to_string(key.opt) << ','
          << to_string(key.acc) << ',' << a.capacity_mb << ','
          << a.read_latency_ns << ',' << a.write_latency_ns << ','
          << a.read_energy_nj << ',' << a.write_energy_nj << ','
          << a.leakage_power_mw << ',' << a.area_mm2 << "\n";
    }
  }
  return out.str();
}

}  // namespace nvcache
