#pragma once

#include "cyv/tail.hpp"

#include <span>

namespace cyv {

/// Moment (Gram) system for the vectors f, Af, ..., A^{2n}f:
/// A[a][b] = (A^a f, A^b f) = Sigma_s lambda_s^{a+b} |c_s|^2.
struct GramSystem {
  long n = 0;
  Spectrum spectrum;
  CoefficientSequence coeffs;
  RealMatrix A;                // (2n+1) x (2n+1), real symmetric Hankel
  std::vector<Real> moments;   // p = 0..4n
  Real entry_trunc_bound_max{0};
  bool tail_assumed_zero = false;
  bool support_clipped = false;
};

GramSystem build_gram(const Spectrum& spectrum, const CoefficientSequence& coeffs, long n,
                      const PrecisionConfig& cfg);

struct GramRho2 {
  Real rho2;         // clipped to [0, 1]
  Real q;            // |c_k|^2 <A^{-1} v, v>
  Real solve_residual;
  Real clip_amount;  // |raw - clipped|
};

/// rho^2(e_k, L_{2n+1}(f)) = 1 - <A^{-1} b_k, b_k> via a residual-verified
/// solve. Throws SingularGram (with a condition estimate) when A is not
/// numerically positive definite.
GramRho2 rho2_via_gram(const GramSystem& gs, long k, const PrecisionConfig& cfg);

/// Same distance as a ratio of Gram determinants (bordered by e_k), computed
/// through LDLT log-determinants. Must agree with rho2_via_gram.
Real rho2_via_gram_determinant(const GramSystem& gs, long k, const PrecisionConfig& cfg);

/// Small-scale check of A = Sigma_j B_j B_j^* against build_gram on the
/// correspondingly truncated coefficients. Returns the max absolute
/// entrywise deviation.
Real verify_B_factorization(const Spectrum& spectrum, const CoefficientSequence& coeffs, long n,
                            long jmax, const PrecisionConfig& cfg);

/// Vandermonde determinant Prod_{i<j} (nodes[j] - nodes[i]).
LogSigned vandermonde_det(std::span<const Real> nodes);

}  // namespace cyv
