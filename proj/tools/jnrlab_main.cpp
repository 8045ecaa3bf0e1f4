// jnrlab: spectral curves, rational maps, holomorphic spheres and boundary
// energy densities of JNR hyperbolic monopoles, JSON in / JSON-CSV-PGM out.
#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <json.hpp>
#include <random>
#include <sstream>

#include "jnrlab/energy.hpp"
#include "jnrlab/errors.hpp"
#include "jnrlab/io.hpp"
#include "jnrlab/ratmap.hpp"
#include "jnrlab/spectral.hpp"
#include "jnrlab/sphere.hpp"

namespace {

using jnr::Complex;
using nlohmann::json;

struct Context {
  jnr::Tolerances tol;
  std::uint64_t seed = 0;
  bool timings = false;
};

json load_json(const std::string& path) {
  try {
    if (path == "-") return json::parse(std::cin);
    std::ifstream in(path);
    if (!in) throw jnr::ValidationError("cannot open input file: " + path);
    return json::parse(in);
  } catch (const json::exception& e) {
    throw jnr::ValidationError(std::string("invalid JSON: ") + e.what());
  }
}

void emit(const json& j, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream os(out);
  if (!os) throw jnr::ValidationError("cannot open output file: " + out);
  os << j.dump(2) << "\n";
}

Complex parse_complex(const std::string& s, const char* what) {
  std::istringstream is(s);
  double re = 0.0, im = 0.0;
  char comma = 0;
  if (!(is >> re)) throw jnr::ValidationError(std::string(what) + ": expected re[,im]");
  if (is >> comma) {
    if (comma != ',' || !(is >> im))
      throw jnr::ValidationError(std::string(what) + ": expected re,im");
  }
  return {re, im};
}

json complex_pair(Complex z) { return json::array({z.real(), z.imag()}); }

json poly_json(const jnr::UniPoly& p) {
  auto arr = json::array();
  for (int k = 0; k <= p.degree(); ++k) arr.push_back(complex_pair(p.coeff(k)));
  return arr;
}

json tolerances_json(const jnr::Tolerances& t) {
  return {{"id", t.id},     {"root", t.root}, {"trim", t.trim},
          {"cluster", t.cluster}, {"sep", t.sep},   {"near", t.near}};
}

struct CheckList {
  json checks = json::array();
  bool all_pass = true;
  std::string first_failure;

  void add(const std::string& name, double defect, double threshold,
           bool pass) {
    checks.push_back({{"name", name},
                      {"defect", defect},
                      {"threshold", threshold},
                      {"pass", pass}});
    if (!pass && all_pass) {
      all_pass = false;
      std::ostringstream os;
      os << name << " failed: defect " << defect << " vs threshold "
         << threshold;
      first_failure = os.str();
    }
  }
};

// ---------------------------------------------------------------------------

int cmd_curve(const Context& ctx, const std::string& input,
              const std::string& out) {
  jnr::JnrData d = jnr::io::parse_jnr_document(load_json(input)).to_data(ctx.tol);
  jnr::BiPoly p = jnr::spectral_curve(d);

  CheckList checks;
  checks.add("reality", p.reality_defect(), ctx.tol.id,
             p.reality_defect() < ctx.tol.id);
  auto profile = p.antidiagonal_profile(200, ctx.tol);
  double pmin = *std::min_element(profile.begin(), profile.end());
  checks.add("antidiagonal_min", pmin, 0.0, pmin > 0.0);
  auto grid = jnr::verify_grid_on_curve(p, d.poles(), ctx.tol);
  checks.add("grid", grid.defect, ctx.tol.id, grid.pass);

  json j = jnr::io::curve_to_json(p);
  j["input_hash"] = jnr::io::data_hash(d);
  j["checks"] = checks.checks;
  j["pass"] = checks.all_pass;
  emit(j, out);
  if (!checks.all_pass) {
    std::cerr << "jnrlab curve: " << checks.first_failure << "\n";
    return 3;
  }
  return 0;
}

int cmd_ratmap(const Context& ctx, const std::string& input,
               const std::string& method, const std::string& out) {
  jnr::JnrData d = jnr::io::parse_jnr_document(load_json(input)).to_data(ctx.tol);

  json j;
  j["command"] = "ratmap";
  j["input_hash"] = jnr::io::data_hash(d);
  j["method"] = method;
  bool pass = true;

  auto based_defect = [](const jnr::RationalMap& m) {
    return std::abs(m.eval(Complex(1e6, 0.0)));
  };
  auto map_json = [&](const jnr::RationalMap& m) {
    return json{{"numerator", poly_json(m.num())},
                {"denominator", poly_json(m.den())},
                {"based", based_defect(m) < 1e-4}};
  };

  if (method == "closed" || method == "both") {
    jnr::RationalMap m = jnr::closed_form_map(d, ctx.tol);
    j["closed"] = map_json(m);
    pass = pass && based_defect(m) < 1e-4;
  }
  if (method == "scattering" || method == "both") {
    jnr::RationalMap m = jnr::scattering_map(d, ctx.tol);
    j["scattering"] = map_json(m);
    pass = pass && based_defect(m) < 1e-4;
  }
  if (method == "both") {
    auto cmp = jnr::compare_up_to_phase(jnr::closed_form_map(d, ctx.tol),
                                        jnr::scattering_map(d, ctx.tol), ctx.tol);
    j["phase"] = complex_pair(cmp.phase);
    j["phase_modulus"] = std::abs(cmp.phase);
    j["defect"] = cmp.defect;
    pass = pass && std::abs(std::abs(cmp.phase) - 1.0) < 1e-8 &&
           cmp.defect < 1e-8;
  }
  j["pass"] = pass;
  emit(j, out);
  if (!pass) {
    std::cerr << "jnrlab ratmap: cross-validation failed\n";
    return 3;
  }
  return 0;
}

int cmd_energy(const Context& ctx, const std::string& input, Complex center,
               double half_width, std::vector<int> res,
               const std::string& format, const std::string& out) {
  if (out.empty())
    throw jnr::ValidationError("energy rasters need --out <file>");
  jnr::JnrData d = jnr::io::parse_jnr_document(load_json(input)).to_data(ctx.tol);

  jnr::GridResolution resolution;
  resolution.nx = res.empty() ? 512 : res[0];
  resolution.ny = res.size() > 1 ? res[1] : resolution.nx;
  auto t0 = std::chrono::steady_clock::now();
  jnr::EnergyGrid grid =
      jnr::sample_grid(d, {center, half_width}, resolution, ctx.tol);

  json report;
  report["command"] = "energy";
  report["input_hash"] = jnr::io::data_hash(d);
  report["region"] = {{"center", complex_pair(center)},
                      {"half_width", half_width}};
  report["resolution"] = {resolution.nx, resolution.ny};
  report["format"] = format;
  report["artifact"] = out;
  report["min"] = grid.min_value();
  report["max"] = grid.max_value();

  if (format == "csv") {
    std::ofstream os(out);
    if (!os) throw jnr::ValidationError("cannot open output file: " + out);
    jnr::io::write_csv(os, grid);
  } else if (format == "pgm16") {
    std::ofstream os(out, std::ios::binary);
    if (!os) throw jnr::ValidationError("cannot open output file: " + out);
    report["scale"] = jnr::io::write_pgm16(os, grid);
  } else if (format == "json") {
    emit(jnr::io::energy_grid_to_json(grid), out);
  } else {
    throw jnr::ValidationError("unknown format: " + format);
  }
  if (ctx.timings)
    report["timings_ms"] = std::chrono::duration<double, std::milli>(
                               std::chrono::steady_clock::now() - t0)
                               .count();
  report["pass"] = true;
  emit(report, "");
  return 0;
}

int cmd_grid(const Context& ctx, const std::string& input,
             const std::string& seed_str, bool sweep, const std::string& out) {
  jnr::BiPoly p = jnr::io::parse_curve_document(load_json(input), ctx.tol);

  jnr::GridSearchResult res;
  if (sweep || seed_str.empty()) {
    res = jnr::detect_grid_sweep(p, {}, ctx.tol);
  } else {
    res = jnr::detect_grid(p, parse_complex(seed_str, "--seed"), {}, ctx.tol);
  }

  json j;
  j["command"] = "grid";
  j["found"] = res.found;
  j["seeds_tried"] = res.seeds_tried;
  j["best_defect"] = res.best_defect;
  j["best_seed"] = complex_pair(res.best_seed);
  if (!res.found) {
    auto best = json::array();
    for (const auto& g : res.poles) best.push_back(complex_pair(g));
    j["best_candidate_poles"] = best;
    emit(j, out);
    std::cerr << "jnrlab grid: no grid found (best defect " << res.best_defect
              << " over " << res.seeds_tried << " seeds)\n";
    return 4;
  }

  jnr::JnrData rec = jnr::recover_weights(p, res.poles, ctx.tol);
  // Round trip: the curve of the recovery against the normalized input,
  // coefficient by coefficient after positive rescaling.
  jnr::BiPoly q = jnr::spectral_curve(rec);
  jnr::BiPoly norm = jnr::normalize_real_positive(p, ctx.tol);
  double ratio = norm.max_coeff_mag() / q.max_coeff_mag();
  double rt = 0.0;
  for (int k = 0; k <= p.charge(); ++k)
    for (int l = 0; l <= p.charge(); ++l)
      rt = std::max(rt, std::abs(norm.at(k, l) - ratio * q.at(k, l)));
  rt /= norm.max_coeff_mag();

  j["data"] = jnr::io::to_json(jnr::io::JnrDocument::from_data(rec));
  j["grid_defect"] = res.defect;
  j["round_trip_defect"] = rt;
  j["pass"] = true;
  emit(j, out);
  return 0;
}

int cmd_rotate(const Context& ctx, const std::string& input,
               const std::string& a_str, const std::string& b_str,
               const std::string& out) {
  auto doc = jnr::io::parse_jnr_document(load_json(input));
  jnr::JnrData d = doc.to_data(ctx.tol);
  Complex a = parse_complex(a_str, "--a");
  Complex b = parse_complex(b_str, "--b");
  if (std::abs(std::norm(a) + std::norm(b) - 1.0) > 1e-6)
    throw jnr::ValidationError("|a|^2 + |b|^2 must equal 1 within 1e-6");

  jnr::JnrData rotated = jnr::rotate(d, jnr::Rotation(a, b, ctx.tol), ctx.tol);
  auto out_doc = jnr::io::JnrDocument::from_data(rotated);
  out_doc.labels = doc.labels;
  emit(jnr::io::to_json(out_doc), out);
  return 0;
}

int cmd_invariants(const Context& ctx, const std::string& input,
                   const std::string& out) {
  jnr::JnrData d = jnr::io::parse_jnr_document(load_json(input)).to_data(ctx.tol);
  auto inv = jnr::invariant_functions(d, ctx.tol);
  json values;
  for (int i = 0; i <= inv.charge(); ++i)
    for (int j2 = i; j2 <= inv.charge(); ++j2) {
      std::ostringstream key;
      key << i << "," << j2;
      values[key.str()] = inv.at(i, j2);
    }
  json j;
  j["command"] = "invariants";
  j["input_hash"] = jnr::io::data_hash(d);
  j["n"] = inv.charge();
  j["count"] = inv.count();
  j["values"] = values;
  emit(j, out);
  return 0;
}

int cmd_verify(const Context& ctx, const std::string& input, bool all,
               const std::string& curve_path, const std::string& out) {
  jnr::JnrData d = jnr::io::parse_jnr_document(load_json(input)).to_data(ctx.tol);
  bool external_curve = !curve_path.empty();
  jnr::BiPoly p = external_curve
                      ? jnr::io::parse_curve_document(load_json(curve_path), ctx.tol)
                      : jnr::spectral_curve(d);

  CheckList checks;
  json timings;
  auto timed = [&](const char* name, const std::function<void()>& fn) {
    auto t0 = std::chrono::steady_clock::now();
    fn();
    timings[name] = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
  };

  timed("reality", [&] {
    double defect = p.reality_defect();
    checks.add("reality", defect, ctx.tol.id, defect < ctx.tol.id);
  });
  timed("antidiagonal", [&] {
    try {
      auto profile = p.antidiagonal_profile(200, ctx.tol);
      double pmin = *std::min_element(profile.begin(), profile.end());
      checks.add("antidiagonal", pmin, 0.0, pmin > 0.0);
    } catch (const jnr::ImaginaryResidueError&) {
      checks.add("antidiagonal", std::numeric_limits<double>::infinity(), 0.0,
                 false);
    }
  });
  timed("grid", [&] {
    if (static_cast<int>(d.poles().size()) == p.charge() + 1) {
      auto grid = jnr::verify_grid_on_curve(p, d.poles(), ctx.tol);
      checks.add("grid", grid.defect, ctx.tol.id, grid.pass);
    } else {
      checks.add("grid", std::numeric_limits<double>::infinity(), ctx.tol.id,
                 false);
    }
  });
  timed("section", [&] {
    jnr::Grid grid(d.poles(), ctx.tol);
    double smallest = std::numeric_limits<double>::infinity();
    bool finite = true;
    for (auto [a, b] : grid.points()) {
      auto s = jnr::section_value(d, a, b, ctx.tol);
      finite = finite && std::isfinite(std::abs(s.value));
      smallest = std::min(smallest, std::abs(s.value));
    }
    checks.add("section", smallest, ctx.tol.id,
               finite && smallest > ctx.tol.id);
  });
  Complex ratmap_phase = 0.0;
  timed("ratmap_phase", [&] {
    auto cmp = jnr::compare_up_to_phase(jnr::closed_form_map(d, ctx.tol),
                                        jnr::scattering_map(d, ctx.tol), ctx.tol);
    ratmap_phase = cmp.phase;
    double defect = std::max(cmp.defect, std::abs(cmp.phase - Complex(-1.0)));
    checks.add("ratmap_phase", defect, 1e-8, defect < 1e-8);
  });
  timed("ratmap_based", [&] {
    double defect = std::abs(jnr::closed_form_map(d, ctx.tol).eval({1e6, 0.0}));
    checks.add("ratmap_based", defect, 1e-4, defect < 1e-4);
  });
  timed("projection", [&] {
    auto pc = jnr::projection_coefficients(d);
    Complex sum = 0.0;
    for (int i = 0; i < d.size(); ++i)
      sum += pc.a[i] * std::sqrt(d.canonical_weight_sq(i));
    auto closed = jnr::closed_form_map(d, ctx.tol);
    std::mt19937_64 rng(ctx.seed + 17);
    std::uniform_real_distribution<double> unif(-3.0, 3.0);
    double worst = std::abs(sum);
    for (int s = 0; s < 100; ++s) {
      Complex z(unif(rng), unif(rng));
      bool near = false;
      for (const auto& g : d.poles())
        if (std::abs(z - g) < 0.05) near = true;
      if (near) continue;
      Complex a = jnr::eval_projection_map(pc, d, z);
      Complex b = closed.eval(z);
      worst = std::max(worst, std::abs(a - b) / (1.0 + std::abs(b)));
    }
    checks.add("projection", worst, 1e-9, worst < 1e-9);
  });
  timed("pairing", [&] {
    double defect = jnr::pairing_check(d, 200, ctx.seed);
    checks.add("pairing", defect, 1e-9, defect < 1e-9);
  });
  timed("pairing_on_curve", [&] {
    double defect = jnr::pairing_on_curve(d, 10, ctx.seed);
    checks.add("pairing_on_curve", defect, 1e-8, defect < 1e-8);
  });
  timed("energy_pole", [&] {
    jnr::HolomorphicSphere q(d);
    double worst = 0.0;
    for (int k = 0; k < d.size(); ++k) {
      auto ring = [&](double r) {
        double mean = 0.0;
        for (int dir = 0; dir < 8; ++dir)
          mean += jnr::energy_density(
              q, d.pole(k) + r * std::polar(1.0, 2.0 * M_PI * dir / 8), ctx.tol);
        return mean / 8.0;
      };
      double limit = (4.0 * ring(5e-5) - ring(1e-4)) / 3.0;
      double closed = jnr::energy_at_pole(d, k);
      worst = std::max(worst, std::abs(limit - closed) / closed);
    }
    checks.add("energy_pole", worst, 1e-5, worst < 1e-5);
  });
  timed("rotation_invariants", [&] {
    std::mt19937_64 rng(ctx.seed + 23);
    std::normal_distribution<double> gauss;
    double worst = 0.0;
    int done = 0;
    int attempts = 0;
    while (done < 5 && attempts < 100) {
      ++attempts;
      Complex a(gauss(rng), gauss(rng)), b(gauss(rng), gauss(rng));
      double nrm = std::sqrt(std::norm(a) + std::norm(b));
      if (nrm < 1e-3) continue;
      try {
        jnr::JnrData rd =
            jnr::rotate(d, jnr::Rotation(a / nrm, b / nrm, ctx.tol), ctx.tol);
        auto before = jnr::invariant_functions(d, ctx.tol);
        auto after = jnr::invariant_functions(rd, ctx.tol);
        for (int i = 0; i < d.size(); ++i)
          for (int j2 = i; j2 < d.size(); ++j2)
            worst = std::max(worst,
                             std::abs(after.at(i, j2) - before.at(i, j2)) /
                                 std::max(1e-300, std::abs(before.at(i, j2))));
        ++done;
      } catch (const jnr::PoleAtInfinityError&) {
      } catch (const jnr::AntipodalDegeneracyError&) {
        break;  // antipodal pole pair: the invariants themselves degenerate
      }
    }
    if (done > 0) checks.add("rotation_invariants", worst, 1e-9, worst < 1e-9);
  });
  if (all) {
    timed("total_energy", [&] {
      auto report = jnr::total_energy(d, 512, ctx.tol);
      double ratio = report.value / (M_PI * d.charge());
      checks.add("total_energy", std::abs(ratio - 1.0), 0.01,
                 std::abs(ratio - 1.0) < 0.01);
    });
  }

  json j;
  j["command"] = "verify";
  j["input_hash"] = jnr::io::data_hash(d);
  j["tolerances"] = tolerances_json(ctx.tol);
  j["seed"] = ctx.seed;
  if (external_curve) j["curve"] = curve_path;
  j["checks"] = checks.checks;
  j["ratmap_phase_constant"] = complex_pair(ratmap_phase);
  j["pass"] = checks.all_pass;
  if (ctx.timings) j["timings_ms"] = timings;
  emit(j, out);
  if (!checks.all_pass) {
    std::cerr << "jnrlab verify: " << checks.first_failure << "\n";
    return 3;
  }
  return 0;
}

int dispatch(const std::function<int()>& action) {
  try {
    return action();
  } catch (const jnr::ResourceLimitError& e) {
    std::cerr << "jnrlab: resource limit: " << e.what() << "\n";
    return 5;
  } catch (const jnr::ValidationError& e) {
    std::cerr << "jnrlab: invalid input: " << e.what() << "\n";
    return 2;
  } catch (const jnr::Error& e) {
    std::cerr << "jnrlab: check failed: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "jnrlab: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "jnrlab: invariants of JNR hyperbolic monopoles (spectral curves, "
      "rational maps, holomorphic spheres, boundary energy density)"};
  app.require_subcommand(1);
  app.fallthrough();

  Context ctx;
  app.add_option("--tol-id", ctx.tol.id, "identity-check tolerance");
  app.add_option("--tol-root", ctx.tol.root, "root residual tolerance");
  app.add_option("--tol-trim", ctx.tol.trim, "coefficient trim tolerance");
  app.add_option("--tol-cluster", ctx.tol.cluster, "root clustering radius");
  app.add_option("--tol-sep", ctx.tol.sep, "minimum pole separation");
  app.add_option("--tol-near", ctx.tol.near, "near-grid regularization radius");
  app.add_option("--seed", ctx.seed, "seed for sampling checks");
  app.add_flag("--timings", ctx.timings, "include timings in reports");

  std::string input = "-", out, method = "both", format = "csv";
  std::string seed_point, a_str, b_str, curve_path;
  std::string center_str = "0,0";
  double half_width = 2.5;
  std::vector<int> res;
  bool sweep = false, all = false;
  std::function<int()> action;

  auto* curve = app.add_subcommand("curve", "spectral curve + verification");
  curve->add_option("input", input, "JNR data document (JSON, - for stdin)");
  curve->add_option("--out", out, "output file (default stdout)");
  curve->callback([&] { action = [&] { return cmd_curve(ctx, input, out); }; });

  auto* ratmap = app.add_subcommand("ratmap", "rational map(s) of the data");
  ratmap->add_option("input", input, "JNR data document");
  ratmap->add_option("--method", method, "closed|scattering|both")
      ->check(CLI::IsMember({"closed", "scattering", "both"}));
  ratmap->add_option("--out", out, "output file");
  ratmap->callback(
      [&] { action = [&] { return cmd_ratmap(ctx, input, method, out); }; });

  auto* energy = app.add_subcommand("energy", "boundary energy raster");
  energy->add_option("input", input, "JNR data document");
  energy->add_option("--center", center_str, "region center re,im");
  energy->add_option("--halfwidth", half_width, "region half-width");
  energy->add_option("--res", res, "resolution nx [ny]")->expected(1, 2);
  energy->add_option("--format", format, "csv|pgm16|json")
      ->check(CLI::IsMember({"csv", "pgm16", "json"}));
  energy->add_option("--out", out, "raster output file (required)");
  energy->callback([&] {
    action = [&] {
      return cmd_energy(ctx, input, parse_complex(center_str, "--center"),
                        half_width, res, format, out);
    };
  });

  auto* grid = app.add_subcommand("grid", "detect a grid / recover JNR data");
  grid->add_option("input", input, "curve document");
  grid->add_option("--seed", seed_point, "search seed re,im");
  grid->add_flag("--sweep", sweep, "deterministic seed-lattice sweep");
  grid->add_option("--out", out, "output file");
  grid->callback([&] {
    action = [&] { return cmd_grid(ctx, input, seed_point, sweep, out); };
  });

  auto* rotate = app.add_subcommand("rotate", "apply a rotation to the data");
  rotate->add_option("input", input, "JNR data document");
  rotate->add_option("--a", a_str, "rotation parameter a = re,im")->required();
  rotate->add_option("--b", b_str, "rotation parameter b = re,im")->required();
  rotate->add_option("--out", out, "output file");
  rotate->callback([&] {
    action = [&] { return cmd_rotate(ctx, input, a_str, b_str, out); };
  });

  auto* invariants = app.add_subcommand("invariants", "rotation invariants");
  invariants->add_option("input", input, "JNR data document");
  invariants->add_option("--out", out, "output file");
  invariants->callback(
      [&] { action = [&] { return cmd_invariants(ctx, input, out); }; });

  auto* verify = app.add_subcommand("verify", "run the identity suite");
  verify->add_option("input", input, "JNR data document");
  verify->add_flag("--all", all, "include the quadrature check");
  verify->add_option("--curve", curve_path,
                     "verify this curve document instead of the computed one");
  verify->add_option("--out", out, "output file");
  verify->callback([&] {
    action = [&] { return cmd_verify(ctx, input, all, curve_path, out); };
  });

  CLI11_PARSE(app, argc, argv);
  return dispatch(action);
}
