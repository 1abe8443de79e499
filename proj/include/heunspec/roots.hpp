#pragma once

#include <complex>
#include <vector>

#include "heunspec/polynomial.hpp"

namespace heunspec {

/// All complex roots from the eigenvalues of the balanced companion matrix.
/// Leading zero coefficients are stripped; constants have no roots.
std::vector<std::complex<double>> companion_roots(const Polynomial& p);

/// |p(t)| / sum_k |a_k| |t|^k.
double normalized_residual(const Polynomial& p, double t);

/// Real roots in ascending order: companion-matrix seeds whose imaginary part
/// is negligible, each polished by Newton iteration on p and kept only if its
/// normalized residual is at most `tolerance`.
std::vector<double> real_roots(const Polynomial& p, double tolerance = 1e-10);

}  // namespace heunspec
