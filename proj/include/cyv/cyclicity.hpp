#pragma once

#include "cyv/hermitian.hpp"
#include "cyv/tail.hpp"

#include <optional>
#include <vector>

namespace cyv {

/// The (2n+1) x (2n+1) Hermitian PSD matrix K_{2n+1} whose entries encode
/// the out-of-window spectral tail. Matrix row/column t corresponds to
/// spectral index t - n.
struct KMatrix {
  long n = 0;
  HermMatrix entries;
  /// Worst absolute per-entry tail-truncation uncertainty.
  Real truncation_bound_max{0};
  bool tail_assumed_zero = false;
  bool support_clipped = false;

  Index dim() const { return entries.dim(); }
  Cx entry(long i, long j) const { return entries(i + n, j + n); }
  Real diag(long i) const { return entries.re(i + n, i + n); }

  /// Synthetic construction (tests, equality cases). Validates Hermitian
  /// storage and real diagonal.
  static KMatrix from_entries(long n, HermMatrix m);
  static KMatrix diagonal(long n, const RealVector& diag_values);
};

/// Support relabeling: restrict to the nonzero-coefficient indices found in
/// a symmetric scan, preserving order. Identity (inputs returned unchanged)
/// when the scan finds no zero.
struct RelabelResult {
  Spectrum spectrum;
  CoefficientSequence coeffs;
  bool identity = true;
  /// Original index m_s for relabeled index s (offset by `radius`):
  /// index_map[s + radius] = m_s. Empty when identity.
  std::vector<long> index_map;
  long radius = 0;

  /// Relabeled position of an original index, if it survived.
  std::optional<long> position_of(long original_index) const;
};

RelabelResult relabel_support(const Spectrum& spectrum, const CoefficientSequence& coeffs,
                              long scan_radius);

/// Assemble K_{2n+1}: upper triangle from certified tail sums and the nodal
/// derivative, mirrored to exact Hermitian storage. All window coefficients
/// must be nonzero (relabel first otherwise).
KMatrix build_K(const NodalContext& ctx, const CoefficientSequence& coeffs,
                const PrecisionConfig& cfg);

struct CriterionReport {
  long k = 0;
  long n = 0;
  Real q;             // <(E+K)^{-1} e^{(k)}, e^{(k)}>
  Real rho2;          // 1 - q
  Real bound_t2;      // k_kk / (1 + k_kk)
  Real bound_refined; // second-order refinement, clipped to [0, bound_t2]
  Real k_kk;
  bool condition1_ok = true;
  bool refined_degenerate = false;
  Real tail_bound_max{0};
  Real solve_residual{0};
};

/// Evaluate the criterion quantity and the distance for |k| < n via a
/// residual-verified Hermitian positive definite solve of (E + K) x = e^(k).
CriterionReport criterion_value(const KMatrix& K, long k, const PrecisionConfig& cfg);

/// k_kk / (1 + k_kk).
Real theorem2_bound(const KMatrix& K, long k);

/// The refined two-term estimate. `literal_positive_range` restricts the
/// index sums to i, j in 1..n (the range as printed) instead of the default
/// symmetric -n..n, k excluded either way. Sets *degenerate and falls back
/// to theorem2_bound when the denominator vanishes against a nonzero
/// numerator.
Real refined_bound(const KMatrix& K, long k, bool literal_positive_range = false,
                   bool* degenerate = nullptr);

/// <M^{-1}e, e> <Me, e> for Hermitian PD M and unit e; always >= 1.
Real kantorovich_check(const HermMatrix& M, const CxVector& e, const PrecisionConfig& cfg);

}  // namespace cyv
