#pragma once

#include "cyv/cyclicity.hpp"
#include "cyv/gram.hpp"

#include <vector>

namespace cyv {

/// Constants of the completeness threshold: c0 solves c^2 = e^{1/c^2},
/// sigma = (6 c0^2 + 2) / (3 c0^3). The decay rate delta must exceed sigma.
struct ThresholdConstants {
  Real c0;
  Real sigma;
  Real residual;  // c0^2 - e^{1/c0^2} after convergence
  const Real& delta_threshold() const { return sigma; }
};

/// Newton iteration on g(c) = 2 ln c - 1/c^2, monotone on [1, 2].
ThresholdConstants solve_c0(const PrecisionConfig& cfg);

/// Orthonormal-basis Fourier coefficients of e^{a cos x}, a real nonzero.
CoefficientSequence expcos_coefficients(const Real& a);

/// 2 pi periodic function to be ingested by quadrature.
struct PeriodicFunctionSpec {
  enum class Kind { ExpCos, Bump, SampledGrid };
  Kind kind = Kind::SampledGrid;
  Real a{1};                 // ExpCos
  Real bump_radius_frac{0};  // Bump: support radius = frac * pi, frac in (0,1)
  /// SampledGrid: N+1 values at x = -pi + 2 pi t / N, t = 0..N, N a power of
  /// two >= 64; first and last must agree (periodicity).
  std::vector<Real> grid;

  static PeriodicFunctionSpec expcos(Real a_);
  static PeriodicFunctionSpec bump(Real radius_frac);
  static PeriodicFunctionSpec sampled(std::vector<Real> grid_);
};

/// DFT ingestion: coefficients for |k| <= kmax from a uniform grid
/// (trapezoidal rule, exact DFT on periodic grids), scaled to the
/// orthonormal-basis convention. `grid_n` picks the internal grid size for
/// the function kinds (0 = automatic). Throws GridTooCoarse when
/// kmax > N/4.
CoefficientSequence quadrature_coefficients(const PeriodicFunctionSpec& spec, long kmax,
                                            const PrecisionConfig& cfg, long grid_n = 0);

struct Theorem3Report {
  Real C_fit;       // raw-integral convention: |int f e^{-ikx}| <= C e^{-delta|k|}
  Real delta_fit;   // decay rate read from the convex minorant of the tail half
  Real sigma;       // threshold
  long kmax = 0;
  bool all_nonzero = false;
  bool satisfied = false;  // sampled-range verdict, not a proof of cyclicity
};

/// Fit (C, delta) on |k| <= kmax and compare delta with sigma. Throws
/// ZeroCoefficient when a sampled coefficient vanishes.
Theorem3Report theorem3_check(const CoefficientSequence& coeffs, long kmax,
                              const PrecisionConfig& cfg);

/// The diagonal tail quantity of the sufficient condition, integer spectrum:
/// (1/Pdot^2(lambda_k)) Sigma_{|s|>n} P^2(lambda_s) |c_s|^2 / (lambda_s-lambda_k)^2.
/// Equals k_kk |c_k|^2.
Real theorem3_tail_quantity(long k, long n, const CoefficientSequence& coeffs,
                            const PrecisionConfig& cfg);

/// Standard mollifier with support radius r = radius_frac * pi:
/// exp(-1 / (1 - (x/r)^2)) inside, 0 outside.
Real bump_value(const Real& radius_frac, const Real& x);

/// Continuous Fourier transform Phi(lambda) = int phi e^{-i lambda x} dx of
/// the (even) bump, by trapezoidal quadrature on an N-point grid.
Real bump_transform(const Real& radius_frac, const Real& lambda, long grid_n);

struct BumpDemoReport {
  Real lambda0;          // located zero of Phi
  Real phi_at_lambda0;   // |Phi(lambda0)|
  struct Row {
    long n;
    Real rho2_gram;
    Real rho2_k;
  };
  std::vector<Row> rho2_rows;  // k = 0, n = 2..nmax
  Real min_rho2_gram;
  long kmax = 0;
  long grid_n = 0;
};

/// Non-cyclicity demonstration: locate a real zero of Phi (scan + bisection) and
/// sweep rho^2(e_0, L_{2n+1}(phi)) over n, which does not decay.
BumpDemoReport bump_noncyclicity_demo(const Real& radius_frac, long kmax, long nmax,
                                      const PrecisionConfig& cfg, long grid_n = 0);

}  // namespace cyv
