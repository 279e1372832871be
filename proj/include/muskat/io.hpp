#pragma once

#include <bit>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "muskat/config.hpp"
#include "muskat/field.hpp"
#include "muskat/stepper.hpp"
#include "muskat/util.hpp"

namespace muskat {

static_assert(std::endian::native == std::endian::little,
              "snapshot layout assumes a little-endian host");

// Atomic file write: stage into <path>.tmp, then rename over the target.
inline void atomic_write(const std::string& path, const std::string& bytes) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("io: cannot open '" + tmp + "' for writing");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw std::runtime_error("io: short write to '" + tmp + "'");
  }
  std::filesystem::rename(tmp, path);
}

// Snapshot layout (little endian):
//   "MUSK" | u32 schema version | u32 n | f64 L | f64 t | n*n f64 values
// A human-readable sidecar <path>.txt carries the summary and config hash.
inline constexpr uint32_t kSnapshotVersion = 1;

inline void write_snapshot(const std::string& path, const InterfaceField& f,
                           double t, uint64_t cfg_hash = 0) {
  std::string bytes;
  bytes.reserve(24 + f.values.size() * 8);
  bytes.append("MUSK", 4);
  auto put = [&bytes](const void* p, size_t len) {
    bytes.append(reinterpret_cast<const char*>(p), len);
  };
  const uint32_t ver = kSnapshotVersion;
  const uint32_t n = static_cast<uint32_t>(f.grid.n);
  put(&ver, 4);
  put(&n, 4);
  put(&f.grid.L, 8);
  put(&t, 8);
  put(f.values.data(), f.values.size() * 8);
  atomic_write(path, bytes);

  std::ostringstream side;
  side << "snapshot " << path << "\n"
       << "schema_version " << ver << "\n"
       << "n " << f.grid.n << "\n"
       << "L " << format17(f.grid.L) << "\n"
       << "t " << format17(t) << "\n"
       << "min " << format17(*std::min_element(f.values.begin(), f.values.end()))
       << "\n"
       << "max " << format17(*std::max_element(f.values.begin(), f.values.end()))
       << "\n"
       << "mean " << format17(mean(f)) << "\n"
       << "config_hash " << cfg_hash << "\n";
  atomic_write(path + ".txt", side.str());
}

struct SnapshotData {
  InterfaceField field;
  double t = 0.0;
};

inline SnapshotData read_snapshot(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("io: cannot open snapshot '" + path + "'");
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, "MUSK", 4) != 0)
    throw std::runtime_error("io: '" + path + "' is not a snapshot (bad magic)");
  uint32_t ver = 0, n = 0;
  double L = 0.0, t = 0.0;
  in.read(reinterpret_cast<char*>(&ver), 4);
  in.read(reinterpret_cast<char*>(&n), 4);
  in.read(reinterpret_cast<char*>(&L), 8);
  in.read(reinterpret_cast<char*>(&t), 8);
  if (!in || ver != kSnapshotVersion)
    throw std::runtime_error("io: unsupported snapshot version in '" + path + "'");
  SnapshotData snap{InterfaceField(GridSpec{static_cast<int>(n), L}), t};
  in.read(reinterpret_cast<char*>(snap.field.values.data()),
          static_cast<std::streamsize>(snap.field.values.size() * 8));
  if (!in) throw std::runtime_error("io: snapshot '" + path + "' truncated");
  return snap;
}

// Ledger CSV: '#' header comments document the columns, then one row per
// report in fixed order. All numbers use 17 significant digits so a parse
// round trip is bit-exact.
inline std::string ledger_csv(const EnergyLedger& ledger) {
  std::ostringstream o;
  o << "# columns: t, h2, h52, lipschitz, d_of_t, de_dt, dissipation_budget, "
       "energy_residual, slope_residual\n";
  o << "# t: simulation time; h2, h52: homogeneous Sobolev semi-norms of f "
       "(orders 2, 5/2);\n";
  o << "# lipschitz: max |grad f|; d_of_t: time integral of h52^2; de_dt: "
       "central-difference d(h2^2)/dt;\n";
  o << "# dissipation_budget: 0.5 (1+K^2)^{-3/2} h52^2; residuals: rate and "
       "slope budget inequalities (see README).\n";
  o << "# note: norms are computed on the periodic torus; y-integrals are "
       "truncated to |y| <= L/2 with a linearized completion (see README).\n";
  o << "t,h2,h52,lipschitz,d_of_t,de_dt,dissipation_budget,energy_residual,"
       "slope_residual\n";
  for (const auto& r : ledger.rows) {
    o << format17(r.t) << ',' << format17(r.norms.h2) << ','
      << format17(r.norms.h52) << ',' << format17(r.norms.lipschitz) << ','
      << format17(r.d_of_t) << ',' << format17(r.de_dt) << ','
      << format17(r.dissipation_budget) << ',' << format17(r.energy_residual)
      << ',' << format17(r.slope_residual) << "\n";
  }
  return o.str();
}

inline nlohmann::json ledger_json(const EnergyLedger& ledger,
                                  uint64_t cfg_hash = 0) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : ledger.rows) {
    rows.push_back({{"t", r.t},
                    {"h2", r.norms.h2},
                    {"h52", r.norms.h52},
                    {"lipschitz", r.norms.lipschitz},
                    {"d_of_t", r.d_of_t},
                    {"de_dt", r.de_dt},
                    {"dissipation_budget", r.dissipation_budget},
                    {"energy_residual", r.energy_residual},
                    {"slope_residual", r.slope_residual}});
  }
  return {{"config_hash", cfg_hash},
          {"aborted", ledger.aborted},
          {"abort_reason", ledger.abort_reason},
          {"energy_c_fit", ledger.energy_c_fit},
          {"slope_c_fit", ledger.slope_c_fit},
          {"rows", rows}};
}

inline void emit_ledger(const EnergyLedger& ledger, const std::string& dir,
                        uint64_t cfg_hash = 0) {
  std::filesystem::create_directories(dir);
  atomic_write(dir + "/ledger.csv", ledger_csv(ledger));
  // NaN is not valid JSON; the json mirror stores residual NaNs as nulls
  nlohmann::json j = ledger_json(ledger, cfg_hash);
  atomic_write(dir + "/ledger.json", j.dump(2));
}

// Parses a ledger back from its CSV emission (comments skipped).
inline EnergyLedger parse_ledger_csv(std::istream& in) {
  EnergyLedger led;
  std::string line;
  bool seen_header = false;
  while (std::getline(in, line)) {
    if (line.empty() || line.front() == '#') continue;
    if (!seen_header) {
      seen_header = true;  // column header
      continue;
    }
    std::istringstream row(line);
    std::string cell;
    std::vector<double> vals;
    while (std::getline(row, cell, ','))
      vals.push_back(std::strtod(cell.c_str(), nullptr));
    if (vals.size() != 9)
      throw std::runtime_error("ledger csv: expected 9 columns, got " +
                               std::to_string(vals.size()));
    LedgerRow r;
    r.t = vals[0];
    r.norms.time = vals[0];
    r.norms.h2 = vals[1];
    r.norms.h52 = vals[2];
    r.norms.lipschitz = vals[3];
    r.d_of_t = vals[4];
    r.de_dt = vals[5];
    r.dissipation_budget = vals[6];
    r.energy_residual = vals[7];
    r.slope_residual = vals[8];
    led.rows.push_back(r);
  }
  return led;
}

inline EnergyLedger read_ledger_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("io: cannot open ledger '" + path + "'");
  return parse_ledger_csv(in);
}

}  // namespace muskat
