#include "jnrlab/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include "jnrlab/errors.hpp"

namespace jnr::io {

namespace {

Complex parse_complex_pair(const nlohmann::json& j, const char* what) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    std::ostringstream os;
    os << what << " must be a [re, im] pair";
    throw ValidationError(os.str());
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

nlohmann::json complex_pair(Complex z) {
  return nlohmann::json::array({z.real(), z.imag()});
}

}  // namespace

JnrData JnrDocument::to_data(const Tolerances& tol) const {
  return JnrData(weights, poles, tol);
}

JnrDocument JnrDocument::from_data(const JnrData& d) {
  JnrDocument doc;
  doc.weights = d.weights();
  doc.poles = d.poles();
  return doc;
}

JnrDocument parse_jnr_document(const nlohmann::json& j) {
  if (!j.is_object()) throw ValidationError("input document must be a JSON object");
  JnrDocument doc;
  doc.version = j.value("version", 1);
  if (doc.version != 1) throw ValidationError("unsupported document version");
  if (!j.contains("weights") || !j["weights"].is_array())
    throw ValidationError("document needs a \"weights\" array");
  if (!j.contains("poles") || !j["poles"].is_array())
    throw ValidationError("document needs a \"poles\" array");
  for (const auto& w : j["weights"]) {
    if (!w.is_number()) throw ValidationError("weights must be numbers");
    doc.weights.push_back(w.get<double>());
  }
  for (const auto& p : j["poles"]) doc.poles.push_back(parse_complex_pair(p, "pole"));
  if (doc.weights.size() != doc.poles.size())
    throw ValidationError("weights and poles must have the same length");
  if (doc.weights.size() < 2)
    throw ValidationError("need at least two weight/pole pairs");
  if (j.contains("labels")) {
    if (!j["labels"].is_array() || j["labels"].size() != doc.poles.size())
      throw ValidationError("labels must be an array matching the pole count");
    for (const auto& l : j["labels"]) doc.labels.push_back(l.get<std::string>());
  }
  return doc;
}

nlohmann::json to_json(const JnrDocument& doc) {
  nlohmann::json j;
  j["version"] = doc.version;
  j["weights"] = doc.weights;
  auto poles = nlohmann::json::array();
  for (const auto& p : doc.poles) poles.push_back(complex_pair(p));
  j["poles"] = poles;
  if (!doc.labels.empty()) j["labels"] = doc.labels;
  return j;
}

BiPoly parse_curve_document(const nlohmann::json& j, const Tolerances& tol) {
  if (!j.is_object()) throw ValidationError("curve document must be a JSON object");
  if (j.value("version", 1) != 1) throw ValidationError("unsupported document version");
  if (!j.contains("n") || !j["n"].is_number_integer())
    throw ValidationError("curve document needs an integer \"n\"");
  int n = j["n"].get<int>();
  if (n < 1) throw ValidationError("curve bidegree must be at least 1");
  const auto& rows = j.at("coefficients");
  if (!rows.is_array() || static_cast<int>(rows.size()) != n + 1)
    throw ValidationError("coefficients must be an (n+1) x (n+1) matrix");
  std::vector<Complex> c;
  c.reserve(static_cast<std::size_t>(n + 1) * (n + 1));
  for (const auto& row : rows) {
    if (!row.is_array() || static_cast<int>(row.size()) != n + 1)
      throw ValidationError("coefficients must be an (n+1) x (n+1) matrix");
    for (const auto& e : row) c.push_back(parse_complex_pair(e, "coefficient"));
  }
  return BiPoly(n, std::move(c), false, tol);
}

nlohmann::json curve_to_json(const BiPoly& p) {
  nlohmann::json j;
  j["version"] = 1;
  j["n"] = p.charge();
  auto rows = nlohmann::json::array();
  for (int k = 0; k <= p.charge(); ++k) {
    auto row = nlohmann::json::array();
    for (int l = 0; l <= p.charge(); ++l) row.push_back(complex_pair(p.at(k, l)));
    rows.push_back(row);
  }
  j["coefficients"] = rows;
  return j;
}

nlohmann::json energy_grid_to_json(const EnergyGrid& g) {
  nlohmann::json j;
  j["region"] = {{"center", complex_pair(g.region().center)},
                 {"half_width", g.region().half_width}};
  j["resolution"] = {g.resolution().nx, g.resolution().ny};
  auto rows = nlohmann::json::array();
  for (int iy = 0; iy < g.resolution().ny; ++iy) {
    auto row = nlohmann::json::array();
    for (int ix = 0; ix < g.resolution().nx; ++ix) row.push_back(g.value(ix, iy));
    rows.push_back(row);
  }
  j["values"] = rows;
  j["metadata"] = {{"source_hash", g.source_hash()}, {"chart", g.chart()}};
  return j;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_csv(std::ostream& os, const EnergyGrid& g) {
  os << "x,y,E\n";
  for (int iy = 0; iy < g.resolution().ny; ++iy)
    for (int ix = 0; ix < g.resolution().nx; ++ix)
      os << format_double(g.x_at(ix)) << ',' << format_double(g.y_at(iy))
         << ',' << format_double(g.value(ix, iy)) << '\n';
}

double write_pgm16(std::ostream& os, const EnergyGrid& g) {
  double lo = g.min_value(), hi = g.max_value();
  double scale = hi > lo ? 65535.0 / (hi - lo) : 0.0;
  os << "P5\n" << g.resolution().nx << ' ' << g.resolution().ny << "\n65535\n";
  for (int iy = g.resolution().ny - 1; iy >= 0; --iy)
    for (int ix = 0; ix < g.resolution().nx; ++ix) {
      double v = (g.value(ix, iy) - lo) * scale;
      auto s = static_cast<unsigned>(std::lround(std::clamp(v, 0.0, 65535.0)));
      os.put(static_cast<char>((s >> 8) & 0xff));
      os.put(static_cast<char>(s & 0xff));
    }
  return scale;
}

std::uint64_t fnv1a(const void* data, std::size_t size) {
  const auto* bytes = static_cast<const unsigned char*>(data);
  std::uint64_t h = 1469598103934665603ULL;
  for (std::size_t i = 0; i < size; ++i) {
    h ^= bytes[i];
    h *= 1099511628211ULL;
  }
  return h;
}

std::string document_hash(const nlohmann::json& j) {
  std::string s = j.dump();
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a(s.data(), s.size())));
  return buf;
}

std::string data_hash(const JnrData& d) {
  std::vector<double> flat;
  for (int i = 0; i < d.size(); ++i) {
    flat.push_back(d.weight(i));
    flat.push_back(d.pole(i).real());
    flat.push_back(d.pole(i).imag());
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(
                    fnv1a(flat.data(), flat.size() * sizeof(double))));
  return buf;
}

}  // namespace jnr::io
