#include "hardy/tridiagonal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "hardy/error.hpp"
#include "hardy/group.hpp"

namespace hardy {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double inf_norm(const SymmetricTridiagonal& t) {
  const std::size_t m = t.size();
  double best = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    double row = std::abs(t.diagonal[i]);
    if (i > 0) row += std::abs(t.off_diagonal[i - 1]);
    if (i + 1 < m) row += std::abs(t.off_diagonal[i]);
    best = std::max(best, row);
  }
  return best;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

void normalize(std::vector<double>& v) {
  const double n = std::sqrt(dot(v, v));
  if (!(n > 0.0) || !std::isfinite(n)) throw NumericalFailure("eigenvector iterate vanished or overflowed");
  for (double& x : v) x /= n;
}

double residual_of(const SymmetricTridiagonal& t, const std::vector<double>& v, double value) {
  const std::vector<double> tv = t.apply(v);
  double r2 = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) r2 += (tv[i] - value * v[i]) * (tv[i] - value * v[i]);
  return std::sqrt(r2) / std::max(1.0, inf_norm(t));
}

}  // namespace

void SymmetricTridiagonal::validate() const {
  if (diagonal.empty()) throw std::invalid_argument("tridiagonal matrix is empty");
  if (off_diagonal.size() + 1 != diagonal.size()) {
    throw std::invalid_argument("off-diagonal must have one entry fewer than the diagonal");
  }
  for (double x : diagonal)
    if (!std::isfinite(x)) throw std::invalid_argument("non-finite diagonal entry");
  for (double x : off_diagonal)
    if (!std::isfinite(x)) throw std::invalid_argument("non-finite off-diagonal entry");
}

std::vector<double> SymmetricTridiagonal::apply(const std::vector<double>& x) const {
  const std::size_t m = size();
  std::vector<double> y(m);
  for (std::size_t i = 0; i < m; ++i) {
    double s = diagonal[i] * x[i];
    if (i > 0) s += off_diagonal[i - 1] * x[i - 1];
    if (i + 1 < m) s += off_diagonal[i] * x[i + 1];
    y[i] = s;
  }
  return y;
}

std::pair<double, double> SymmetricTridiagonal::gershgorin() const {
  const std::size_t m = size();
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t i = 0; i < m; ++i) {
    double radius = 0.0;
    if (i > 0) radius += std::abs(off_diagonal[i - 1]);
    if (i + 1 < m) radius += std::abs(off_diagonal[i]);
    lo = std::min(lo, diagonal[i] - radius);
    hi = std::max(hi, diagonal[i] + radius);
  }
  return {lo, hi};
}

std::size_t sturm_count(const SymmetricTridiagonal& t, double x) {
  double max_e2 = 1.0;
  for (double e : t.off_diagonal) max_e2 = std::max(max_e2, e * e);
  const double pivmin = std::numeric_limits<double>::min() * max_e2;
  std::size_t count = 0;
  double q = 1.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    q = t.diagonal[i] - x - (i > 0 ? t.off_diagonal[i - 1] * t.off_diagonal[i - 1] / q : 0.0);
    if (std::abs(q) < pivmin) q = -pivmin;
    if (q < 0.0) ++count;
  }
  return count;
}

double bisect_eigenvalue(const SymmetricTridiagonal& t, std::size_t k, double abs_tol) {
  t.validate();
  if (k >= t.size()) throw std::invalid_argument("bisect_eigenvalue: index out of range");
  auto [lo, hi] = t.gershgorin();
  const double scale = std::max(std::abs(lo), std::abs(hi));
  const double tol = std::max(abs_tol, 4.0 * kEps * scale);
  lo -= tol;
  hi += tol;
  for (int it = 0; it < 2000 && hi - lo > tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (sturm_count(t, mid) > k) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 0.5 * (lo + hi);
}

std::vector<double> solve_shifted(const SymmetricTridiagonal& t, double shift, const std::vector<double>& b) {
  t.validate();
  const std::size_t m = t.size();
  if (b.size() != m) throw std::invalid_argument("solve_shifted: right-hand side has the wrong size");
  std::vector<double> d(m), dl(t.off_diagonal), du(t.off_diagonal), du2(m > 2 ? m - 2 : 0, 0.0), x(b);
  for (std::size_t i = 0; i < m; ++i) d[i] = t.diagonal[i] - shift;
  const double tiny = kEps * std::max(1.0, inf_norm(t));

  for (std::size_t i = 0; i + 1 < m; ++i) {
    if (std::abs(d[i]) >= std::abs(dl[i])) {
      if (d[i] == 0.0) d[i] = tiny;
      const double fact = dl[i] / d[i];
      d[i + 1] -= fact * du[i];
      x[i + 1] -= fact * x[i];
    } else {
      const double fact = d[i] / dl[i];
      d[i] = dl[i];
      const double temp = d[i + 1];
      d[i + 1] = du[i] - fact * temp;
      if (i + 2 < m) {
        du2[i] = du[i + 1];
        du[i + 1] = -fact * du2[i];
      }
      du[i] = temp;
      const double xi = x[i];
      x[i] = x[i + 1];
      x[i + 1] = xi - fact * x[i + 1];
    }
  }
  if (d[m - 1] == 0.0) d[m - 1] = tiny;

  x[m - 1] /= d[m - 1];
  if (m > 1) x[m - 2] = (x[m - 2] - du[m - 2] * x[m - 1]) / d[m - 2];
  for (std::size_t j = m >= 2 ? m - 2 : 0; j-- > 0;) {
    x[j] = (x[j] - du[j] * x[j + 1] - du2[j] * x[j + 2]) / d[j];
  }
  return x;
}

TridiagonalEigensystem ql_eigensystem(const SymmetricTridiagonal& t, int max_sweeps) {
  t.validate();
  const int n = static_cast<int>(t.size());
  std::vector<double> d(t.diagonal);
  std::vector<double> e(t.off_diagonal);
  e.push_back(0.0);
  // z[i] is column i of the accumulated rotation.
  std::vector<std::vector<double>> z(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i) z[i][i] = 1.0;

  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int m = l;
    do {
      for (m = l; m < n - 1; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= kEps * dd) break;
      }
      if (m != l) {
        if (iter++ == max_sweeps) throw NumericalFailure("ql_eigensystem: no convergence");
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1.0, c = 1.0, p = 0.0;
        int i = m - 1;
        for (; i >= l; --i) {
          double f = s * e[i];
          const double b = c * e[i];
          r = std::hypot(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
          std::vector<double>& zi = z[i];
          std::vector<double>& zi1 = z[i + 1];
          for (int k = 0; k < n; ++k) {
            f = zi1[k];
            zi1[k] = s * zi[k] + c * f;
            zi[k] = c * zi[k] - s * f;
          }
        }
        if (r == 0.0 && i >= l) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return d[a] < d[b]; });
  TridiagonalEigensystem out;
  for (int j : order) {
    out.values.push_back(d[j]);
    out.vectors.push_back(std::move(z[j]));
  }
  return out;
}

Eigenpair smallest_eigenpair(const SymmetricTridiagonal& t, double residual_tol, std::size_t ql_fallback_limit) {
  t.validate();
  const std::size_t m = t.size();
  Eigenpair out;
  out.method = "bisection+inverse-iteration";
  const double shift = bisect_eigenvalue(t, 0);
  std::vector<double> v(m, 1.0 / std::sqrt(static_cast<double>(m)));
  double value = shift;
  double residual = std::numeric_limits<double>::infinity();
  for (int it = 1; it <= 8; ++it) {
    v = solve_shifted(t, shift, v);
    normalize(v);
    value = dot(v, t.apply(v));
    residual = residual_of(t, v, value);
    out.iterations = it;
    if (residual <= residual_tol && it >= 2) break;
  }
  if (residual <= residual_tol && std::isfinite(value)) {
    out.value = value;
    out.vector = std::move(v);
    out.residual = residual;
    return out;
  }
  if (m <= ql_fallback_limit) {
    TridiagonalEigensystem sys = ql_eigensystem(t);
    out.value = sys.values.front();
    out.vector = std::move(sys.vectors.front());
    out.residual = residual_of(t, out.vector, out.value);
    out.method = "ql";
    if (out.residual <= residual_tol) return out;
    residual = out.residual;
  }
  std::ostringstream msg;
  msg << "smallest_eigenpair: no convergence (size " << m << ", bisection estimate " << format_number(shift)
      << ", residual " << format_number(residual) << " > " << format_number(residual_tol) << ")";
  throw NumericalFailure(msg.str());
}

}  // namespace hardy
