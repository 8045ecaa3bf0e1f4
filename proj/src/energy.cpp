#include "jnrlab/energy.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <limits>
#include <sstream>
#include <thread>
#include <vector>

#include "jnrlab/errors.hpp"

namespace jnr {

int worker_count() {
  int hw = static_cast<int>(std::thread::hardware_concurrency());
  int n = hw > 0 ? hw : 1;
  if (const char* env = std::getenv("JNRLAB_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) n = static_cast<int>(v);
  }
  return std::clamp(n, 1, 64);
}

namespace {

// Runs fn(row) for row in [0, rows); the work is pure per row, so the
// result is identical to a serial loop for any thread count.
void parallel_rows(int rows, const std::function<void(int)>& fn) {
  int workers = std::min(worker_count(), rows);
  if (workers <= 1) {
    for (int r = 0; r < rows; ++r) fn(r);
    return;
  }
  std::vector<std::thread> pool;
  std::atomic<int> next{0};
  for (int t = 0; t < workers; ++t)
    pool.emplace_back([&] {
      for (;;) {
        int r = next.fetch_add(1);
        if (r >= rows) return;
        fn(r);
      }
    });
  for (auto& th : pool) th.join();
}

}  // namespace

double energy_density(const HolomorphicSphere& q, Complex z,
                      const Tolerances& tol) {
  const auto& lam = q.weights();
  const auto& g = q.poles();
  const int m = static_cast<int>(g.size());

  double dmin = std::numeric_limits<double>::infinity();
  for (const auto& gi : g) dmin = std::min(dmin, std::abs(z - gi));

  if (dmin > tol.near) {
    // Wedge components l_i l_j (g_i - g_j)/((z-g_i)^2 (z-g_j)^2); every
    // term is a modulus, so the only failure mode is the poles themselves.
    std::vector<double> inv2(m);
    for (int i = 0; i < m; ++i) inv2[i] = 1.0 / std::norm(z - g[i]);
    double denom = 0.0;
    for (int i = 0; i < m; ++i) denom += lam[i] * lam[i] * inv2[i];
    double num = 0.0;
    for (int i = 0; i < m; ++i)
      for (int j = i + 1; j < m; ++j)
        num += lam[i] * lam[i] * lam[j] * lam[j] * std::norm(g[i] - g[j]) *
               inv2[i] * inv2[i] * inv2[j] * inv2[j];
    return num / (denom * denom);
  }

  // Near a pole: the polynomial lift q_i = l_i prod_{j != i}(z - g_j) is
  // cancellation-free.
  std::vector<Complex> qv(m), dq(m);
  for (int i = 0; i < m; ++i) {
    Complex v = lam[i];
    for (int j = 0; j < m; ++j)
      if (j != i) v *= z - g[j];
    qv[i] = v;
    Complex s = 0.0;
    for (int k = 0; k < m; ++k) {
      if (k == i) continue;
      Complex t = lam[i];
      for (int j = 0; j < m; ++j)
        if (j != i && j != k) t *= z - g[j];
      s += t;
    }
    dq[i] = s;
  }
  double num = 0.0, qq = 0.0;
  for (int i = 0; i < m; ++i) qq += std::norm(qv[i]);
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      num += std::norm(qv[i] * dq[j] - qv[j] * dq[i]);
  return num / (qq * qq);
}

double energy_at_pole(const JnrData& d, int k) {
  if (k < 0 || k > d.charge()) throw ValidationError("pole index out of range");
  double s = 0.0;
  for (int j = 0; j < d.size(); ++j) {
    if (j == k) continue;
    double ratio = d.weight(j) / d.weight(k);
    s += ratio * ratio / std::norm(d.pole(k) - d.pole(j));
  }
  return s;
}

EnergyGrid::EnergyGrid(GridRegion region, GridResolution res,
                       std::vector<double> values, std::string source_hash)
    : region_(region), res_(res), values_(std::move(values)),
      source_hash_(std::move(source_hash)) {
  if (values_.size() != static_cast<std::size_t>(res_.nx) * res_.ny)
    throw ValidationError("raster size does not match its resolution");
}

double EnergyGrid::x_at(int ix) const {
  if (res_.nx == 1) return region_.center.real();
  return region_.center.real() - region_.half_width +
         2.0 * region_.half_width * ix / (res_.nx - 1);
}

double EnergyGrid::y_at(int iy) const {
  if (res_.ny == 1) return region_.center.imag();
  return region_.center.imag() - region_.half_width +
         2.0 * region_.half_width * iy / (res_.ny - 1);
}

double EnergyGrid::min_value() const {
  return *std::min_element(values_.begin(), values_.end());
}

double EnergyGrid::max_value() const {
  return *std::max_element(values_.begin(), values_.end());
}

namespace {

std::string weights_poles_hash(const JnrData& d) {
  // FNV-1a over the weight/pole bit patterns.
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&h](double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, sizeof bits);
    for (int b = 0; b < 8; ++b) {
      h ^= (bits >> (8 * b)) & 0xffULL;
      h *= 1099511628211ULL;
    }
  };
  for (int i = 0; i < d.size(); ++i) {
    mix(d.weight(i));
    mix(d.pole(i).real());
    mix(d.pole(i).imag());
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace

EnergyGrid sample_grid(const JnrData& d, GridRegion region, GridResolution res,
                       const Tolerances& tol) {
  if (res.nx < 1 || res.ny < 1 || res.nx > 8192 || res.ny > 8192) {
    std::ostringstream os;
    os << "resolution " << res.nx << "x" << res.ny << " outside [1, 8192]^2";
    throw ResourceLimitError(os.str());
  }
  if (!is_finite(region.center) || !(region.half_width > 0.0))
    throw ValidationError("raster region must be finite with positive half-width");

  HolomorphicSphere q(d);
  auto coord = [&](double c, int i, int count) {
    return count == 1 ? c : c - region.half_width +
                                2.0 * region.half_width * i / (count - 1);
  };
  std::vector<double> values(static_cast<std::size_t>(res.nx) * res.ny);
  parallel_rows(res.ny, [&](int iy) {
    double y = coord(region.center.imag(), iy, res.ny);
    for (int ix = 0; ix < res.nx; ++ix) {
      double x = coord(region.center.real(), ix, res.nx);
      values[static_cast<std::size_t>(iy) * res.nx + ix] =
          energy_density(q, Complex(x, y), tol);
    }
  });
  return EnergyGrid(region, res, std::move(values), weights_poles_hash(d));
}

namespace {

// Midpoint rule in polar coordinates over the unit disk of one chart;
// row partials are reduced in index order so the sum is deterministic.
double disk_integral(int nr, int ntheta,
                     const std::function<double(Complex)>& f) {
  std::vector<double> row(nr, 0.0);
  parallel_rows(nr, [&](int i) {
    double r = (i + 0.5) / nr;
    double s = 0.0;
    for (int j = 0; j < ntheta; ++j) {
      double th = (j + 0.5) * 2.0 * M_PI / ntheta;
      s += f(Complex(r * std::cos(th), r * std::sin(th)));
    }
    row[i] = s * r;
  });
  double total = 0.0;
  for (int i = 0; i < nr; ++i) total += row[i];
  return total * (1.0 / nr) * (2.0 * M_PI / ntheta);
}

}  // namespace

QuadratureReport total_energy(const JnrData& d, int resolution,
                              const Tolerances& tol) {
  if (resolution < 16) throw ValidationError("quadrature resolution too small");
  HolomorphicSphere q(d);

  auto integrate = [&](int nr) {
    // z chart inside the unit circle; w = 1/z outside, where the density
    // picks up |dz/dw|^2 = |w|^-4.
    double inner = disk_integral(
        nr, 2 * nr, [&](Complex z) { return energy_density(q, z, tol); });
    double outer = disk_integral(nr, 2 * nr, [&](Complex w) {
      double w4 = std::norm(w) * std::norm(w);
      return energy_density(q, 1.0 / w, tol) / w4;
    });
    return inner + outer;
  };

  QuadratureReport report;
  report.estimates = {integrate(resolution / 4), integrate(resolution / 2),
                      integrate(resolution)};
  double mid = report.estimates[1];
  double fine = report.estimates[2];
  if (std::abs(fine - mid) > 0.005 * std::abs(fine)) {
    std::ostringstream os;
    os << "quadrature estimates " << mid << " and " << fine
       << " disagree by more than 0.5%";
    throw QuadratureError(os.str());
  }
  report.value = (4.0 * fine - mid) / 3.0;
  return report;
}

DegenerationReport degeneration_profile(const JnrData& d, int k,
                                        const std::vector<double>& epsilons) {
  if (k < 0 || k > d.charge()) throw ValidationError("pole index out of range");
  if (epsilons.empty()) throw ValidationError("need at least one epsilon");
  const int n = d.charge();

  DegenerationReport rep;
  rep.k = k;
  rep.epsilons = epsilons;
  for (double eps : epsilons) {
    if (!(eps > 0.0) || !(n * eps < 1.0))
      throw ValidationError("epsilon must satisfy 0 < N*eps < 1");
    std::vector<double> w(d.size());
    for (int i = 0; i < d.size(); ++i)
      w[i] = std::sqrt(i == k ? 1.0 - n * eps : eps);
    JnrData deg(w, d.poles());
    std::vector<double> row(d.size());
    for (int j = 0; j < d.size(); ++j) row[j] = energy_at_pole(deg, j);
    rep.pole_energies.push_back(std::move(row));
  }

  // Least-squares log-log slope per pole.
  const int ne = static_cast<int>(epsilons.size());
  rep.slopes.assign(d.size(), 0.0);
  for (int j = 0; j < d.size(); ++j) {
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (int e = 0; e < ne; ++e) {
      double x = std::log(epsilons[e]);
      double y = std::log(rep.pole_energies[e][j]);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    double denom = ne * sxx - sx * sx;
    rep.slopes[j] = denom != 0.0 ? (ne * sxy - sx * sy) / denom : 0.0;
  }
  return rep;
}

}  // namespace jnr
