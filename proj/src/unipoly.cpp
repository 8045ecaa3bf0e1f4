#include "jnrlab/unipoly.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>

#include "jnrlab/errors.hpp"

namespace jnr {

namespace {

double max_mag(const std::vector<Complex>& c) {
  double m = 0.0;
  for (const auto& v : c) m = std::max(m, std::abs(v));
  return m;
}

void trim_trailing(std::vector<Complex>& c, double trim_tol) {
  double m = max_mag(c);
  double cut = trim_tol * m;
  while (!c.empty() && std::abs(c.back()) <= cut) c.pop_back();
}

}  // namespace

UniPoly::UniPoly(std::vector<Complex> coeffs, double trim_tol)
    : coeffs_(std::move(coeffs)) {
  for (const auto& v : coeffs_)
    if (!is_finite(v)) throw ValidationError("polynomial coefficient is not finite");
  trim_trailing(coeffs_, trim_tol);
}

UniPoly UniPoly::constant(Complex c) { return UniPoly(std::vector<Complex>{c}); }

UniPoly UniPoly::from_roots(const std::vector<Complex>& roots, Complex lead) {
  std::vector<Complex> c{lead};
  for (Complex r : roots) {
    c.push_back(0.0);
    for (int k = static_cast<int>(c.size()) - 1; k > 0; --k)
      c[k] = c[k - 1] - r * c[k];
    c[0] *= -r;
  }
  return UniPoly(std::move(c), 0.0);
}

Complex UniPoly::coeff(int k) const {
  if (k < 0 || k > degree()) return 0.0;
  return coeffs_[k];
}

Complex UniPoly::lead() const {
  if (is_zero()) throw ZeroPolynomialError("zero polynomial has no leading coefficient");
  return coeffs_.back();
}

double UniPoly::max_coeff_mag() const { return max_mag(coeffs_); }

Complex UniPoly::eval(Complex z) const {
  Complex r = 0.0;
  for (int k = degree(); k >= 0; --k) r = r * z + coeffs_[k];
  return r;
}

UniPoly UniPoly::derivative() const {
  if (degree() < 1) return UniPoly();
  std::vector<Complex> c(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k)
    c[k - 1] = coeffs_[k] * static_cast<double>(k);
  return UniPoly(std::move(c), 0.0);
}

UniPoly UniPoly::monic() const { return scaled(1.0 / lead()); }

UniPoly UniPoly::scaled(Complex s) const {
  std::vector<Complex> c(coeffs_);
  for (auto& v : c) v *= s;
  return UniPoly(std::move(c), 0.0);
}

UniPoly operator+(const UniPoly& a, const UniPoly& b) {
  std::vector<Complex> c(std::max(a.coeffs_.size(), b.coeffs_.size()), 0.0);
  for (std::size_t k = 0; k < a.coeffs_.size(); ++k) c[k] += a.coeffs_[k];
  for (std::size_t k = 0; k < b.coeffs_.size(); ++k) c[k] += b.coeffs_[k];
  return UniPoly(std::move(c));
}

UniPoly operator-(const UniPoly& a, const UniPoly& b) {
  return a + b.scaled(-1.0);
}

UniPoly operator*(const UniPoly& a, const UniPoly& b) {
  if (a.is_zero() || b.is_zero()) return UniPoly();
  std::vector<Complex> c(a.coeffs_.size() + b.coeffs_.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
      c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return UniPoly(std::move(c));
}

namespace {

// One Newton step, kept only when it lowers the residual.
Complex polish_root(const UniPoly& q, const UniPoly& dq, Complex r) {
  Complex f = q.eval(r);
  Complex df = dq.eval(r);
  if (std::abs(df) == 0.0) return r;
  Complex r2 = r - f / df;
  return std::abs(q.eval(r2)) < std::abs(f) ? r2 : r;
}

}  // namespace

std::vector<Complex> roots(const UniPoly& q, const Tolerances& tol) {
  if (q.is_zero()) throw ZeroPolynomialError("root extraction on the zero polynomial");
  int n = q.degree();
  if (n == 0) return {};

  std::vector<Complex> out;
  if (n == 1) {
    out.push_back(-q.coeff(0) / q.coeff(1));
  } else {
    Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(n, n);
    Complex lead = q.lead();
    for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i) companion(i, n - 1) = -q.coeff(i) / lead;
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
    if (solver.info() != Eigen::Success)
      throw Error("companion-matrix eigensolver failed to converge");
    for (int i = 0; i < n; ++i) out.push_back(solver.eigenvalues()(i));
  }

  UniPoly dq = q.derivative();
  for (auto& r : out) r = polish_root(q, dq, r);

  // Eigenvalues of an exact m-fold root scatter like eps^(1/m); their
  // centroid cancels the leading perturbation. Merge tight clusters when
  // that lowers the worst residual, so multiplicities group within
  // tol.cluster.
  const double link = std::max(tol.cluster, 1e-4);
  std::sort(out.begin(), out.end(), [](Complex a, Complex b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  std::vector<Complex> merged;
  std::size_t i = 0;
  while (i < out.size()) {
    std::size_t j = i + 1;
    Complex sum = out[i];
    while (j < out.size() && std::abs(out[j] - out[j - 1]) < link) {
      sum += out[j];
      ++j;
    }
    std::size_t m = j - i;
    if (m > 1) {
      Complex centroid = sum / static_cast<double>(m);
      double before = 0.0, after = std::abs(q.eval(centroid));
      for (std::size_t k = i; k < j; ++k)
        before = std::max(before, std::abs(q.eval(out[k])));
      if (after <= before)
        for (std::size_t k = i; k < j; ++k) merged.push_back(centroid);
      else
        for (std::size_t k = i; k < j; ++k) merged.push_back(out[k]);
    } else {
      merged.push_back(out[i]);
    }
    i = j;
  }
  return merged;
}

}  // namespace jnr
