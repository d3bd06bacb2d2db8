#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace hardy {

/// Symmetric tridiagonal matrix: diagonal d[0..m), off-diagonal e[0..m-1).
struct SymmetricTridiagonal {
  std::vector<double> diagonal;
  std::vector<double> off_diagonal;

  std::size_t size() const noexcept { return diagonal.size(); }
  void validate() const;
  /// y = T x
  std::vector<double> apply(const std::vector<double>& x) const;
  /// Gershgorin interval [lo, hi] containing the spectrum.
  std::pair<double, double> gershgorin() const;
};

/// Number of eigenvalues strictly below x (Sturm sequence).
std::size_t sturm_count(const SymmetricTridiagonal& t, double x);

/// k-th smallest eigenvalue (k = 0 is the minimum) by bisection.
double bisect_eigenvalue(const SymmetricTridiagonal& t, std::size_t k, double abs_tol = 0.0);

/// Solves (T - shift I) x = b by Gaussian elimination with partial pivoting.
std::vector<double> solve_shifted(const SymmetricTridiagonal& t, double shift, const std::vector<double>& b);

/// All eigenvalues and eigenvectors by implicit QL; O(m^3), meant for small m.
/// vectors[j] is the unit eigenvector of values[j]; values ascending.
struct TridiagonalEigensystem {
  std::vector<double> values;
  std::vector<std::vector<double>> vectors;
};
TridiagonalEigensystem ql_eigensystem(const SymmetricTridiagonal& t, int max_sweeps = 60);

struct Eigenpair {
  double value = 0.0;
  std::vector<double> vector;  // unit 2-norm
  double residual = 0.0;       // ||T v - value v|| / max(1, ||T||_inf)
  int iterations = 0;
  std::string method;  // "bisection+inverse-iteration" or "ql"
};

/// Smallest eigenpair: Sturm bisection, then shifted inverse iteration and a
/// Rayleigh-quotient update. Falls back to QL for m <= ql_fallback_limit when
/// the residual stays above tolerance; throws NumericalFailure otherwise.
Eigenpair smallest_eigenpair(const SymmetricTridiagonal& t, double residual_tol = 1e-10,
                             std::size_t ql_fallback_limit = 1024);

}  // namespace hardy
