#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "jnrlab/bipoly.hpp"
#include "jnrlab/energy.hpp"
#include "jnrlab/jnr_data.hpp"

namespace jnr::io {

/// On-disk form of JNR data: {"version": 1, "weights": [...],
/// "poles": [[re, im], ...], "labels": optional}.
struct JnrDocument {
  int version = 1;
  std::vector<double> weights;
  std::vector<Complex> poles;
  std::vector<std::string> labels;

  JnrData to_data(const Tolerances& tol = Tolerances::defaults()) const;
  static JnrDocument from_data(const JnrData& d);
};

JnrDocument parse_jnr_document(const nlohmann::json& j);
nlohmann::json to_json(const JnrDocument& doc);

/// Curve documents: {"version": 1, "n": N, "coefficients": [[[re, im]...]]}
/// with coefficients[k][l] multiplying eta^k zeta^l. Extra keys are ignored
/// so command outputs embedding a curve parse back directly.
BiPoly parse_curve_document(const nlohmann::json& j,
                            const Tolerances& tol = Tolerances::defaults());
nlohmann::json curve_to_json(const BiPoly& p);

nlohmann::json energy_grid_to_json(const EnergyGrid& g);

/// CSV raster: header "x,y,E", row-major (y ascending), LF endings,
/// 17-significant-digit decimals (binary64 round trip).
void write_csv(std::ostream& os, const EnergyGrid& g);

/// Binary PGM (P5, maxval 65535, big-endian), min-max scaled; rows are
/// written y-descending so the image reads like a plot. Returns the scale
/// factor applied (0 for a constant raster).
double write_pgm16(std::ostream& os, const EnergyGrid& g);

/// printf %.17g formatting: 17 significant digits, round-trip safe.
std::string format_double(double v);

std::uint64_t fnv1a(const void* data, std::size_t size);
/// FNV-1a hash of a canonical JSON serialization, as a hex string.
std::string document_hash(const nlohmann::json& j);
/// Deterministic hash of JNR data (weights and poles bit patterns).
std::string data_hash(const JnrData& d);

}  // namespace jnr::io
