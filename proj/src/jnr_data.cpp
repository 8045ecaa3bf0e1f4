#include "jnrlab/jnr_data.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "jnrlab/errors.hpp"

namespace jnr {

JnrData::JnrData(std::vector<double> weights, std::vector<Complex> poles,
                 const Tolerances& tol)
    : weights_(std::move(weights)), poles_(std::move(poles)) {
  if (weights_.size() != poles_.size())
    throw ValidationError("weights and poles must have the same length");
  if (poles_.size() < 2)
    throw ValidationError("JNR data needs at least two weight/pole pairs");
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    if (!std::isfinite(weights_[i]) || weights_[i] <= 0.0) {
      std::ostringstream os;
      os << "weight " << i << " must be positive and finite";
      throw ValidationError(os.str());
    }
    if (!is_finite(poles_[i])) {
      std::ostringstream os;
      os << "pole " << i << " is not finite";
      throw ValidationError(os.str());
    }
  }
  for (std::size_t i = 0; i < poles_.size(); ++i)
    for (std::size_t j = i + 1; j < poles_.size(); ++j)
      if (std::abs(poles_[i] - poles_[j]) <= tol.sep) {
        std::ostringstream os;
        os << "poles " << i << " and " << j << " coincide within tau_sep ("
           << tol.sep << ")";
        throw DuplicatePolesError(os.str());
      }
}

double JnrData::weight_sq_sum() const {
  double s = 0.0;
  for (double w : weights_) s += w * w;
  return s;
}

double JnrData::canonical_weight_sq(int i) const {
  return weights_[i] * weights_[i] / weight_sq_sum();
}

std::vector<double> JnrData::canonical_weight_squares() const {
  double s = weight_sq_sum();
  std::vector<double> out(weights_.size());
  for (std::size_t i = 0; i < weights_.size(); ++i)
    out[i] = weights_[i] * weights_[i] / s;
  return out;
}

JnrData JnrData::canonical() const {
  double s = std::sqrt(weight_sq_sum());
  std::vector<double> w(weights_);
  for (double& v : w) v /= s;
  return JnrData(std::move(w), poles_);
}

double JnrData::min_pole_separation() const {
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < poles_.size(); ++i)
    for (std::size_t j = i + 1; j < poles_.size(); ++j)
      m = std::min(m, std::abs(poles_[i] - poles_[j]));
  return m;
}

}  // namespace jnr
