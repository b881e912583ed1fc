#include "noisebench/dpss.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "noisebench/errors.hpp"
#include "noisebench/rng.hpp"

namespace noisebench {

namespace {

constexpr double kPi = std::numbers::pi;

// Number of eigenvalues of the symmetric tridiagonal (diag, offdiag) that
// are strictly less than x (Sturm sequence count).
int count_below(const std::vector<double>& diag, const std::vector<double>& off, double x) {
  const std::size_t n = diag.size();
  int count = 0;
  double q = diag[0] - x;
  if (q < 0.0) ++count;
  for (std::size_t i = 1; i < n; ++i) {
    if (q == 0.0) q = -1e-300;
    q = (diag[i] - x) - off[i] * off[i] / q;
    if (q < 0.0) ++count;
  }
  return count;
}

// Bisection for the eigenvalue with ascending index idx (0 = smallest).
double bisect_eigenvalue(const std::vector<double>& diag, const std::vector<double>& off,
                         int idx, double lo, double hi) {
  for (int it = 0; it < 120 && hi - lo > 1e-15 * (std::abs(lo) + std::abs(hi)); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (count_below(diag, off, mid) <= idx) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Solve (T - shift I) v = b for tridiagonal T, Gaussian elimination with
// partial pivoting (one superdiagonal of fill-in).
void solve_shifted(const std::vector<double>& diag, const std::vector<double>& off,
                   double shift, std::vector<double>& v) {
  const std::size_t n = diag.size();
  std::vector<double> a(n, 0.0), d(n), c(n, 0.0), f(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) d[i] = diag[i] - shift;
  for (std::size_t i = 1; i < n; ++i) {
    a[i] = off[i];      // sub-diagonal entry in row i
    c[i - 1] = off[i];  // super-diagonal entry in row i-1
  }
  constexpr double tiny = 1e-300;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (std::abs(a[i + 1]) > std::abs(d[i])) {
      std::swap(d[i], a[i + 1]);
      std::swap(c[i], d[i + 1]);
      std::swap(f[i], c[i + 1]);
      std::swap(v[i], v[i + 1]);
    }
    if (d[i] == 0.0) d[i] = tiny;
    const double m = a[i + 1] / d[i];
    d[i + 1] -= m * c[i];
    c[i + 1] -= m * f[i];
    v[i + 1] -= m * v[i];
  }
  if (d[n - 1] == 0.0) d[n - 1] = tiny;
  v[n - 1] /= d[n - 1];
  if (n >= 2) {
    if (d[n - 2] == 0.0) d[n - 2] = tiny;
    v[n - 2] = (v[n - 2] - c[n - 2] * v[n - 1]) / d[n - 2];
  }
  for (std::size_t ir = n; ir-- > 2;) {
    const std::size_t i = ir - 2;
    if (d[i] == 0.0) d[i] = tiny;
    v[i] = (v[i] - c[i] * v[i + 1] - f[i] * v[i + 2]) / d[i];
  }
}

void normalize(std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  s = std::sqrt(s);
  for (double& x : v) x /= s;
}

}  // namespace

DpssSet dpss(std::size_t n, double nw, int k) {
  require(nw > 0.0, ErrorCategory::InvalidParameter, "nw must be > 0");
  require(k >= 1, ErrorCategory::InvalidParameter, "taper count must be >= 1");
  require(double(k) <= 2.0 * nw - 1.0, ErrorCategory::InvalidParameter,
          "taper count must satisfy k <= 2 nw - 1");
  require(2.0 * nw - 1.0 < double(n), ErrorCategory::InvalidParameter,
          "series too short for the requested bandwidth");

  const double w = nw / double(n);
  const double cw = std::cos(2.0 * kPi * w);
  std::vector<double> diag(n), off(n, 0.0);
  for (std::size_t t = 0; t < n; ++t) {
    const double h = (double(n) - 1.0) / 2.0 - double(t);
    diag[t] = h * h * cw;
  }
  for (std::size_t t = 1; t < n; ++t) off[t] = double(t) * double(n - t) / 2.0;

  // Gershgorin interval
  double lo = diag[0], hi = diag[0];
  for (std::size_t i = 0; i < n; ++i) {
    const double r = (i > 0 ? std::abs(off[i]) : 0.0) + (i + 1 < n ? std::abs(off[i + 1]) : 0.0);
    lo = std::min(lo, diag[i] - r);
    hi = std::max(hi, diag[i] + r);
  }

  DpssSet out;
  out.n = n;
  out.nw = nw;
  out.tapers.resize(k);
  out.eigenvalues.resize(k);

  for (int j = 0; j < k; ++j) {
    // taper order j corresponds to the (j+1)-th largest tridiagonal eigenvalue
    const int idx = int(n) - 1 - j;
    const double theta = bisect_eigenvalue(diag, off, idx, lo, hi);

    // Inverse iteration from a fixed pseudo-random start (a symmetric start
    // vector would be orthogonal to the antisymmetric tapers).
    RngStream start(0x5eedD5u, std::uint64_t(j));
    std::vector<double> v(n);
    for (double& x : v) x = start.uniform_co() - 0.5;
    normalize(v);
    for (int it = 0; it < 4; ++it) {
      solve_shifted(diag, off, theta, v);
      normalize(v);
    }
    // One modified Gram-Schmidt pass against earlier tapers.
    for (int m = 0; m < j; ++m) {
      double dot = 0.0;
      for (std::size_t t = 0; t < n; ++t) dot += v[t] * out.tapers[m][t];
      for (std::size_t t = 0; t < n; ++t) v[t] -= dot * out.tapers[m][t];
    }
    normalize(v);

    // Sign convention: symmetric (even) orders have positive mean; odd orders
    // start positive (positive sum over the first half).
    double s = 0.0;
    if (j % 2 == 0) {
      for (double x : v) s += x;
    } else {
      for (std::size_t t = 0; t < n / 2; ++t) s += v[t];
    }
    if (s < 0.0) {
      for (double& x : v) x = -x;
    }
    out.tapers[j] = std::move(v);
  }

  // Concentration ratios from the sinc-kernel quadratic form,
  // lambda = sum_tau r(tau) s(tau) with r the taper autocorrelation.
  for (int j = 0; j < k; ++j) {
    const std::vector<double>& v = out.tapers[j];
    double lambda = 2.0 * w;  // tau = 0 term, r(0) = 1
    for (std::size_t tau = 1; tau < n; ++tau) {
      double r = 0.0;
      for (std::size_t t = 0; t + tau < n; ++t) r += v[t] * v[t + tau];
      lambda += 2.0 * r * std::sin(2.0 * kPi * w * double(tau)) / (kPi * double(tau));
    }
    out.eigenvalues[j] = lambda;
  }

  for (int j = 1; j < k; ++j) {
    require(out.eigenvalues[j] < out.eigenvalues[j - 1], ErrorCategory::NumericalDesign,
            "dpss concentration eigenvalues are not strictly decreasing");
  }
  return out;
}

}  // namespace noisebench
