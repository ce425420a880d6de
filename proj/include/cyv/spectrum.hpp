#pragma once

#include "cyv/numeric.hpp"

#include <memory>
#include <optional>
#include <vector>

namespace cyv {

/// Symmetric index window: the 2n+1 integers -n..n.
struct Window {
  long n = 0;

  explicit Window(long n_) : n(n_) {
    if (n < 0) throw std::invalid_argument("Window: n must be >= 0");
  }
  long size() const { return 2 * n + 1; }
  bool contains(long i) const { return i >= -n && i <= n; }
};

/// Simple discrete spectrum: strictly increasing eigenvalues indexed by
/// signed integers. Immutable and cheap to copy.
class Spectrum {
 public:
  enum class Kind { IntegerLine, AffineInteger, ExplicitTable };

  /// lambda_j = j.
  static Spectrum integer_line();
  /// lambda_j = a*j + b with a > 0.
  static Spectrum affine(Real a, Real b);
  /// Finite symmetric table over indices -J..J (odd length, strictly
  /// increasing). Queries outside the range throw IndexOutOfTable.
  static Spectrum table(std::vector<Real> values);

  Kind kind() const;

  /// spectrum_eval: lambda_j.
  Real operator()(long j) const;

  bool in_range(long j) const;

  /// J for table spectra, empty otherwise.
  std::optional<long> table_radius() const;

  /// |lambda_j| <= bound_slope*|j| + bound_offset for every valid j.
  /// Slope is positive for the unbounded kinds; tables never need it
  /// (their tails are finite).
  Real bound_slope() const;
  Real bound_offset() const;

  /// Exact lower bound on lambda_s - lambda_i for |s| = m > n >= |i|,
  /// valid for the unbounded kinds (lambda affine in the index).
  Real min_gap_to_window(long m, long n) const;

  /// Certified lower growth bound |lambda_j| >= alpha*|j| for |j| >= j0
  /// (alpha may be 0 when the table admits nothing better).
  struct GrowthHint {
    Real alpha;
    long j0;
  };
  GrowthHint growth_hint() const;

 private:
  struct Impl;
  explicit Spectrum(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

}  // namespace cyv
