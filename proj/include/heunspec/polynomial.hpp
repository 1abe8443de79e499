#pragma once

#include <span>
#include <vector>

namespace heunspec {

/// Dense real polynomial, coefficients in ascending order of power.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<double> coeffs);

  static Polynomial constant(double c) { return Polynomial({c}); }
  /// a + b t
  static Polynomial affine(double a, double b) { return Polynomial({a, b}); }

  std::span<const double> coeffs() const { return coeffs_; }
  double operator[](std::size_t i) const {
    return i < coeffs_.size() ? coeffs_[i] : 0.0;
  }

  /// Degree ignoring exact-zero leading coefficients; -1 for the zero
  /// polynomial.
  int degree() const;

  double operator()(double t) const;
  /// sum_k |a_k| |t|^k, the natural scale for the rounding error of p(t).
  double magnitude_at(double t) const;

  Polynomial derivative() const;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(double s, const Polynomial& a);

 private:
  std::vector<double> coeffs_;
};

}  // namespace heunspec
