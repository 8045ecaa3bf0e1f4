#pragma once

#include <string>
#include <vector>

#include "jnrlab/jnr_data.hpp"
#include "jnrlab/sphere.hpp"

namespace jnr {

/// Boundary energy density E(q) = |q ^ dq|^2 / |q|^4 at a point of the z
/// chart (flat area element). Away from the poles this uses the rational
/// wedge components l_i l_j (g_i - g_j)/((z-g_i)^2 (z-g_j)^2); within
/// tol.near of a pole it switches to the cancellation-free polynomial lift.
double energy_density(const HolomorphicSphere& q, Complex z,
                      const Tolerances& tol = Tolerances::defaults());

/// Closed form at the k-th pole: sum_{j != k} (l_j/l_k)^2 / |g_k - g_j|^2.
double energy_at_pole(const JnrData& d, int k);

struct GridRegion {
  Complex center;
  double half_width = 1.0;
};

struct GridResolution {
  int nx = 1;
  int ny = 1;
};

/// Raster of energy-density samples over an axis-aligned square of the z
/// chart. Sample locations are endpoint-inclusive; values are stored
/// row-major with y ascending. Deterministic regardless of thread count.
class EnergyGrid {
 public:
  EnergyGrid(GridRegion region, GridResolution res, std::vector<double> values,
             std::string source_hash);

  const GridRegion& region() const { return region_; }
  const GridResolution& resolution() const { return res_; }
  const std::vector<double>& values() const { return values_; }
  const std::string& source_hash() const { return source_hash_; }
  const std::string& chart() const { return chart_; }

  double x_at(int ix) const;
  double y_at(int iy) const;
  double value(int ix, int iy) const { return values_[iy * res_.nx + ix]; }
  double min_value() const;
  double max_value() const;

 private:
  GridRegion region_;
  GridResolution res_;
  std::vector<double> values_;
  std::string source_hash_;
  std::string chart_ = "z";
};

/// Samples the energy density over the region. Throws ResourceLimitError
/// when a resolution side exceeds 8192. Parallel over rows (JNRLAB_THREADS
/// caps the thread count) with a fixed fill order.
EnergyGrid sample_grid(const JnrData& d, GridRegion region, GridResolution res,
                       const Tolerances& tol = Tolerances::defaults());

/// Total boundary energy by two-chart quadrature: polar midpoint rule over
/// the unit disks of the z and w = 1/z charts (the density picks up |w|^-4
/// in the second), run at three resolutions with Richardson extrapolation
/// of the finest pair. The expected value is N pi (convention pinned by the
/// charge-1 closed form). Throws QuadratureError when the two finest
/// estimates differ by more than 0.5%.
struct QuadratureReport {
  std::vector<double> estimates;  ///< coarse, mid, fine
  double value = 0.0;             ///< Richardson-extrapolated total
};
QuadratureReport total_energy(const JnrData& d, int resolution = 512,
                              const Tolerances& tol = Tolerances::defaults());

/// Pole energies under the degeneration lambda_k^2 = 1 - N eps, others eps:
/// E at the surviving pole decays like eps while every other pole grows like
/// 1/eps. Reports the table of pole energies and fitted log-log slopes.
struct DegenerationReport {
  int k = 0;
  std::vector<double> epsilons;
  std::vector<std::vector<double>> pole_energies;  ///< [eps][pole]
  std::vector<double> slopes;                      ///< per pole
};
DegenerationReport degeneration_profile(const JnrData& d, int k,
                                        const std::vector<double>& epsilons);

/// Worker count for data-parallel loops: JNRLAB_THREADS when set, else the
/// hardware concurrency, clamped to [1, 64].
int worker_count();

}  // namespace jnr
