#pragma once

#include <vector>

namespace heunspec {

/// Real symmetric tridiagonal matrix: `diag` has n entries, `off` n - 1.
struct SymTridiagonal {
  std::vector<double> diag;
  std::vector<double> off;

  int size() const { return static_cast<int>(diag.size()); }
  /// y = T x
  std::vector<double> apply(const std::vector<double>& x) const;
};

/// Number of eigenvalues strictly below `x` (Sturm sequence count).
int sturm_count(const SymTridiagonal& t, double x);

/// Eigenvalues with indices first .. first + count - 1 (ascending), each by
/// bisection inside the Gershgorin interval to full double precision.
std::vector<double> tridiagonal_eigenvalues(const SymTridiagonal& t, int first, int count);

/// Unit eigenvector for an (accurate) eigenvalue, by inverse iteration.
/// The first component that is not negligible is made positive.
std::vector<double> tridiagonal_eigenvector(const SymTridiagonal& t, double eigenvalue);

}  // namespace heunspec
