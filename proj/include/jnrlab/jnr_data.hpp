#pragma once

#include <vector>

#include "jnrlab/types.hpp"

namespace jnr {

/// JNR data: N+1 positive weights and N+1 distinct finite poles defining a
/// charge-N monopole. Weights are stored exactly as given (an overall weight
/// rescaling is gauge); canonical() rescales them so the squares sum to 1.
class JnrData {
 public:
  JnrData(std::vector<double> weights, std::vector<Complex> poles,
          const Tolerances& tol = Tolerances::defaults());

  int charge() const { return static_cast<int>(poles_.size()) - 1; }
  int size() const { return static_cast<int>(poles_.size()); }
  const std::vector<double>& weights() const { return weights_; }
  const std::vector<Complex>& poles() const { return poles_; }
  double weight(int i) const { return weights_[i]; }
  Complex pole(int i) const { return poles_[i]; }

  double weight_sq_sum() const;
  /// Weight squares rescaled to sum to 1, computed directly from the stored
  /// squares so symmetric inputs stay exact.
  double canonical_weight_sq(int i) const;
  std::vector<double> canonical_weight_squares() const;
  JnrData canonical() const;
  double min_pole_separation() const;

 private:
  std::vector<double> weights_;
  std::vector<Complex> poles_;
};

}  // namespace jnr
