#pragma once

#include "cyv/coefficients.hpp"
#include "cyv/nodal.hpp"

#include <memory>

namespace cyv {

/// Result of a certified series summation.
struct TailSumResult {
  LogSigned value;
  /// Absolute bound on the dropped remainder. 0 for finite sums.
  Real truncation_bound{0};
  long terms_used = 0;
  /// The zero tail is an ingestion artifact (table/quadrature coefficients).
  bool tail_assumed_zero = false;
  /// Coefficient support was clipped to a finite spectrum table.
  bool support_clipped = false;
};

/// Per-(spectrum, window, coefficients) cache of the s-dependent factors of
/// Eq-tail terms, shared across the (i, j) pairs of one K assembly. Grows
/// lazily; not synchronized (use one instance per thread).
class TailSweepCache {
 public:
  TailSweepCache(const NodalContext& ctx, const CoefficientSequence& coeffs);
  ~TailSweepCache();

  struct Side {
    bool present = false;     // in spectrum range and coefficient nonzero
    Real log_w;               // ln(P^2(lambda_s) |c_s|^2)
    std::vector<Real> log_gap;  // ln|lambda_s - lambda_t|, t = -n..n
  };
  struct Entry {
    Side pos, neg;  // s = +m and s = -m
  };

  /// Entry at distance m (> n).
  const Entry& at(long m);

  const NodalContext& ctx() const { return ctx_; }
  const CoefficientSequence& coeffs() const { return coeffs_; }

 private:
  const NodalContext& ctx_;
  const CoefficientSequence& coeffs_;
  struct Store;
  std::unique_ptr<Store> store_;
};

/// Certified evaluation of S_ij = Sigma_{|s|>n} P^2(lambda_s) |c_s|^2 /
/// ((lambda_s - lambda_i)(lambda_s - lambda_j)).
///
/// Sums outward in +-s pairs; stops once the closed-form envelope remainder
/// is below tail_rel_tol relative to the accumulated value (absolute when
/// the value is zero). All terms are nonnegative: outside the window both
/// gap factors carry the same sign.
///
/// Throws DivergentTail when the envelope cannot certify convergence and
/// ToleranceUnreachable when the cap on summed terms is hit.
TailSumResult tail_sum_kij(const NodalContext& ctx, const CoefficientSequence& coeffs, long i,
                           long j, const PrecisionConfig& cfg, TailSweepCache* cache = nullptr);

/// Certified doubly infinite moment series Sigma_{s in Z} lambda_s^p |c_s|^2.
TailSumResult gram_entry_series(const Spectrum& spectrum, const CoefficientSequence& coeffs,
                                long p, const PrecisionConfig& cfg);

}  // namespace cyv
