#include "heunspec/roots.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

namespace heunspec {
namespace {

// Parlett-Reinsch style balancing by powers of two.
void balance(Eigen::MatrixXd& m) {
  const Eigen::Index n = m.rows();
  bool changed = true;
  while (changed) {
    changed = false;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double row = m.row(i).lpNorm<1>() - std::abs(m(i, i));
      const double col = m.col(i).lpNorm<1>() - std::abs(m(i, i));
      if (row == 0.0 || col == 0.0) continue;
      int exponent = 0;
      std::frexp(row / col, &exponent);
      exponent /= 2;
      if (exponent == 0) continue;
      const double scaled = std::ldexp(col, exponent) + std::ldexp(row, -exponent);
      if (scaled < 0.95 * (row + col)) {
        m.row(i) *= std::ldexp(1.0, -exponent);
        m.col(i) *= std::ldexp(1.0, exponent);
        changed = true;
      }
    }
  }
}

double newton_polish(const Polynomial& p, const Polynomial& dp, double t) {
  for (int it = 0; it < 60; ++it) {
    const double f = p(t);
    const double df = dp(t);
    if (f == 0.0 || df == 0.0) break;
    const double step = f / df;
    const double next = t - step;
    // Accept only steps that do not increase |p|.
    if (std::abs(p(next)) > std::abs(f)) break;
    t = next;
    if (std::abs(step) <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t)))
      break;
  }
  return t;
}

}  // namespace

std::vector<std::complex<double>> companion_roots(const Polynomial& p) {
  const int degree = p.degree();
  if (degree <= 0) return {};
  const double lead = p[degree];
  if (degree == 1) return {{-p[0] / lead, 0.0}};

  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(degree, degree);
  companion.diagonal(-1).setOnes();
  for (int i = 0; i < degree; ++i) companion(i, degree - 1) = -p[i] / lead;
  balance(companion);

  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
  std::vector<std::complex<double>> roots;
  roots.reserve(degree);
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i)
    roots.push_back(solver.eigenvalues()[i]);
  return roots;
}

double normalized_residual(const Polynomial& p, double t) {
  const double scale = p.magnitude_at(t);
  return scale == 0.0 ? 0.0 : std::abs(p(t)) / scale;
}

std::vector<double> real_roots(const Polynomial& p, double tolerance) {
  const Polynomial dp = p.derivative();
  std::vector<double> out;
  for (const auto& z : companion_roots(p)) {
    if (std::abs(z.imag()) > 1e-6 * std::max(1.0, std::abs(z.real()))) continue;
    const double t = newton_polish(p, dp, z.real());
    if (normalized_residual(p, t) <= tolerance) out.push_back(t);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace heunspec
