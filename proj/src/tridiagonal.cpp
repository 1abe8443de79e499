#include "heunspec/tridiagonal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "heunspec/errors.hpp"

namespace heunspec {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Solves (T - shift) x = b with partial pivoting (general tridiagonal
// elimination; the shifted matrix is indefinite).
std::vector<double> shifted_solve(const SymTridiagonal& t, double shift, std::vector<double> b) {
  const int n = t.size();
  std::vector<double> d(n), du(n, 0.0), du2(n, 0.0), dl(n, 0.0);
  for (int i = 0; i < n; ++i) d[i] = t.diag[i] - shift;
  for (int i = 0; i + 1 < n; ++i) {
    dl[i] = t.off[i];
    du[i] = t.off[i];
  }
  const double tiny = kEps * std::max(1.0, std::abs(shift));
  for (int i = 0; i + 1 < n; ++i) {
    if (std::abs(d[i]) >= std::abs(dl[i])) {
      if (d[i] == 0.0) d[i] = tiny;
      const double f = dl[i] / d[i];
      d[i + 1] -= f * du[i];
      b[i + 1] -= f * b[i];
      dl[i] = 0.0;
    } else {
      const double f = d[i] / dl[i];
      d[i] = dl[i];
      std::swap(b[i], b[i + 1]);
      b[i + 1] -= f * b[i];
      const double tmp = d[i + 1];
      d[i + 1] = du[i] - f * tmp;
      du[i] = tmp;
      if (i + 2 < n) {
        du2[i] = du[i + 1];
        du[i + 1] = -f * du2[i];
      }
    }
  }
  if (d[n - 1] == 0.0) d[n - 1] = tiny;
  std::vector<double> x(n);
  for (int i = n - 1; i >= 0; --i) {
    double v = b[i];
    if (i + 1 < n) v -= du[i] * x[i + 1];
    if (i + 2 < n) v -= du2[i] * x[i + 2];
    x[i] = v / d[i];
  }
  return x;
}

void normalize(std::vector<double>& v) {
  double norm = 0.0;
  for (double x : v) norm += x * x;
  norm = std::sqrt(norm);
  for (double& x : v) x /= norm;
}

}  // namespace

std::vector<double> SymTridiagonal::apply(const std::vector<double>& x) const {
  const int n = size();
  std::vector<double> y(n);
  for (int i = 0; i < n; ++i) {
    double v = diag[i] * x[i];
    if (i > 0) v += off[i - 1] * x[i - 1];
    if (i + 1 < n) v += off[i] * x[i + 1];
    y[i] = v;
  }
  return y;
}

int sturm_count(const SymTridiagonal& t, double x) {
  const int n = t.size();
  int count = 0;
  double q = 1.0;
  for (int i = 0; i < n; ++i) {
    const double e2 = i > 0 ? t.off[i - 1] * t.off[i - 1] : 0.0;
    q = t.diag[i] - x - (i > 0 ? e2 / q : 0.0);
    if (q == 0.0) q = -kEps * (std::abs(t.diag[i]) + std::abs(x) + kEps);
    if (q < 0.0) ++count;
  }
  return count;
}

std::vector<double> tridiagonal_eigenvalues(const SymTridiagonal& t, int first, int count) {
  const int n = t.size();
  if (n == 0 || static_cast<int>(t.off.size()) != n - 1)
    throw InvalidParameter("tridiagonal matrix has inconsistent sizes");
  if (first < 0 || count < 0 || first + count > n)
    throw InvalidParameter("eigenvalue index range out of bounds");

  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (int i = 0; i < n; ++i) {
    const double radius = (i > 0 ? std::abs(t.off[i - 1]) : 0.0) +
                          (i + 1 < n ? std::abs(t.off[i]) : 0.0);
    lo = std::min(lo, t.diag[i] - radius);
    hi = std::max(hi, t.diag[i] + radius);
  }
  const double pad = kEps * std::max(std::abs(lo), std::abs(hi)) * n + kEps;
  lo -= pad;
  hi += pad;

  std::vector<double> values;
  values.reserve(count);
  for (int k = first; k < first + count; ++k) {
    // Invariant: count(a) <= k < count(b).
    double a = values.empty() ? lo : values.back();
    double b = hi;
    if (sturm_count(t, a) > k) a = lo;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (a + b);
      if (mid <= a || mid >= b) break;
      if (b - a <= 2.0 * kEps * std::max(std::abs(a), std::abs(b))) break;
      if (sturm_count(t, mid) > k)
        b = mid;
      else
        a = mid;
    }
    values.push_back(0.5 * (a + b));
  }
  return values;
}

std::vector<double> tridiagonal_eigenvector(const SymTridiagonal& t, double eigenvalue) {
  const int n = t.size();
  double scale = 0.0;
  for (double d : t.diag) scale = std::max(scale, std::abs(d));
  for (double e : t.off) scale = std::max(scale, std::abs(e));
  const double shift = eigenvalue + 8.0 * kEps * std::max(scale, std::abs(eigenvalue));

  // Deterministic start vector with no special symmetry.
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = 1.0 + 0.5 * std::sin(1.0 + 0.7 * i);
  normalize(v);
  for (int it = 0; it < 4; ++it) {
    v = shifted_solve(t, shift, v);
    normalize(v);
  }

  double vmax = 0.0;
  for (double x : v) vmax = std::max(vmax, std::abs(x));
  for (double x : v) {
    if (std::abs(x) > 1e-8 * vmax) {
      if (x < 0.0)
        for (double& y : v) y = -y;
      break;
    }
  }
  return v;
}

}  // namespace heunspec
