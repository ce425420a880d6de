#pragma once

#include "cyv/logsigned.hpp"
#include "cyv/spectrum.hpp"

#include <vector>

namespace cyv {

/// Window of nodes lambda_{-n}..lambda_n with log-domain evaluation of the
/// nodal polynomial P_{2n+1}(lambda) = Prod (lambda - lambda_i), of its
/// derivative at the nodes, and of Lagrange weights.
///
/// Immutable after construction; all operations are pure.
class NodalContext {
 public:
  NodalContext(Spectrum spectrum, Window window);
  NodalContext(Spectrum spectrum, long n) : NodalContext(std::move(spectrum), Window(n)) {}

  long n() const { return window_.n; }
  long size() const { return window_.size(); }
  const Spectrum& spectrum() const { return spectrum_; }
  const std::vector<Real>& nodes() const { return nodes_; }

  /// Node lambda_i, |i| <= n. Throws IndexOutOfWindow.
  const Real& node(long i) const;

  /// Log-signed P_{2n+1}(lambda). Sign 0 iff lambda hits a node exactly at
  /// working precision. Factors accumulate in index order -n..n.
  LogSigned eval_P(const Real& lambda) const;

  /// Pdot at node i: Prod_{j != i} (lambda_i - lambda_j). Integer-line and
  /// affine spectra take the factorial fast path
  /// (-1)^{n-i} (n+i)! (n-i)! (times a^{2n} for slope a).
  LogSigned pdot_at_node(long i) const;

  /// P(mu) / (Pdot(lambda_i) * (mu - lambda_i)). Throws NodeCollision when
  /// mu is within collision_threshold of any node.
  LogSigned lagrange_weight(long i, const Real& mu) const;

  /// Collision threshold around a node: 2^{-bits/2} * max(1, |node|).
  Real collision_threshold(const Real& node_value) const;

 private:
  Spectrum spectrum_;
  Window window_;
  std::vector<Real> nodes_;
};

}  // namespace cyv
