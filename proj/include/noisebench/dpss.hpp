#pragma once

#include <cstddef>
#include <vector>

namespace noisebench {

/// Discrete prolate spheroidal (Slepian) sequences.
struct DpssSet {
  std::size_t n = 0;
  double nw = 0.0;
  std::vector<std::vector<double>> tapers;  // k orthonormal sequences, order 0 first
  std::vector<double> eigenvalues;          // in-band concentration ratios, decreasing
};

/// First k Slepian sequences of length n for time half-bandwidth nw, via the
/// symmetric tridiagonal formulation; concentration eigenvalues from the
/// sinc-kernel quadratic form.  Requires 0 < k <= 2 nw - 1 < n.
DpssSet dpss(std::size_t n, double nw, int k);

}  // namespace noisebench
