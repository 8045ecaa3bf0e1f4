#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "jnrlab/bipoly.hpp"
#include "jnrlab/jnr_data.hpp"

namespace jnr {

/// Spectral curve of the JNR data: the bidegree-(N, N) polynomial
///   p(eta, zeta) = sum_i w_i prod_{j != i} (zeta - g_j)(1 + eta conj(g_j))
/// with w_i the stored weight squares. Output carries the `normalized` flag
/// (this construction already satisfies the reality normalization and has a
/// positive anti-diagonal profile).
BiPoly spectral_curve(const JnrData& d);

/// Same construction from explicit weight squares; used wherever a formula
/// assumes sum w_i = 1 (pass canonical squares) and by tests.
BiPoly spectral_curve_from_squares(const std::vector<double>& weight_squares,
                                   const std::vector<Complex>& poles);

/// The limit curve when all weight but the k-th goes to zero: the product
/// of generator pairs through the remaining poles.
BiPoly degenerate_limit_curve(const JnrData& d, int k);

/// The grid built from N+1 distinct poles: points (antipode(g_i), g_j) for
/// i != j; the closure also includes i = j (those sit on the anti-diagonal).
class Grid {
 public:
  explicit Grid(std::vector<Complex> poles,
                const Tolerances& tol = Tolerances::defaults());

  int charge() const { return static_cast<int>(poles_.size()) - 1; }
  const std::vector<Complex>& poles() const { return poles_; }

  std::pair<ProjPoint, ProjPoint> point(int i, int j) const;
  std::vector<std::pair<int, int>> index_pairs(bool closure = false) const;
  std::vector<std::pair<ProjPoint, ProjPoint>> points() const;
  std::vector<std::pair<ProjPoint, ProjPoint>> closure_points() const;

 private:
  std::vector<Complex> poles_;
};

Grid make_grid(const std::vector<Complex>& poles,
               const Tolerances& tol = Tolerances::defaults());

struct GridCheck {
  double defect = 0.0;  ///< max |p| over grid points, relative to max |coeff|
  bool pass = false;
  int worst_i = -1;
  int worst_j = -1;
};

/// Evaluates p at all N(N+1) grid points of the given poles (unit
/// representatives); pass iff the relative defect is below tol.id.
GridCheck verify_grid_on_curve(const BiPoly& p,
                               const std::vector<Complex>& poles,
                               const Tolerances& tol = Tolerances::defaults());

/// Rescales a curve that is real up to a constant so that the reality
/// transform fixes it and the anti-diagonal profile is positive. Throws
/// ValidationError when no such phase exists.
BiPoly normalize_real_positive(const BiPoly& p,
                               const Tolerances& tol = Tolerances::defaults());

/// Weight recovery from a curve through the grid of the given poles:
///   w_i = conj(g_i)^N q(-1/conj(g_i), g_i) / prod_{j != i} |g_i - g_j|^2
/// on the normalized representative q, evaluated homogeneously so g_i = 0 is
/// legal. Returns canonical data; the curve of the result reproduces p up to
/// an overall positive scale. Throws GridMismatchError if the grid check
/// fails and NegativeWeightError if any recovered square is not positive.
JnrData recover_weights(const BiPoly& p, const std::vector<Complex>& poles,
                        const Tolerances& tol = Tolerances::defaults());

/// Value of the meromorphic section
///   s = prod_i (zeta - g_i) / prod_i (1 + eta conj(g_i))
/// at homogeneous representatives. Within tol.near of an off-diagonal
/// closure grid point the vanishing numerator/denominator pair is resolved
/// along the curve (regular = true); the section is finite and nonzero
/// there. Queries at anti-diagonal closure points or at section poles away
/// from the grid throw PoleOffCurveError.
struct SectionValue {
  Complex value;
  bool regular = false;
};
SectionValue section_value(const JnrData& d, const ProjPoint& eta,
                           const ProjPoint& zeta,
                           const Tolerances& tol = Tolerances::defaults());

struct GridSearchOptions {
  int lattice = 32;        ///< sweep lattice is lattice x lattice
  double radius = 3.0;     ///< seeds kept inside this disk
  int refine_top = 32;     ///< candidates refined in sweep mode
  int max_iterations = 60; ///< damped least-squares iteration cap
};

/// Best-effort grid search. `found == false` is not a proof of
/// non-existence; diagnostics report the best defect seen.
struct GridSearchResult {
  bool found = false;
  std::vector<Complex> poles;  ///< candidate pole set (best one if !found)
  double defect = 0.0;         ///< its grid defect
  double best_defect = 0.0;
  Complex best_seed = 0.0;
  int seeds_tried = 0;
};

/// Fiber-propagation search from one seed: slice at the antipode of the
/// seed, take the fiber roots as co-pole candidates, then refine the full
/// pole set by damped least squares on the grid defect.
GridSearchResult detect_grid(const BiPoly& p, Complex seed,
                             const GridSearchOptions& opts = {},
                             const Tolerances& tol = Tolerances::defaults());

/// Deterministic seed-lattice sweep; the lowest-defect candidate (ties by
/// lowest seed index) is refined first.
GridSearchResult detect_grid_sweep(const BiPoly& p,
                                   const GridSearchOptions& opts = {},
                                   const Tolerances& tol = Tolerances::defaults());

}  // namespace jnr
