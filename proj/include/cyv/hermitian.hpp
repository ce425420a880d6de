#pragma once

#include "cyv/numeric.hpp"

namespace cyv {

/// Complex vector stored as (re, im) parts.
struct CxVector {
  RealVector re, im;

  CxVector() = default;
  explicit CxVector(Index dim) : re(RealVector::Zero(dim)), im(RealVector::Zero(dim)) {}

  Index dim() const { return re.size(); }
  Cx operator()(Index t) const { return {re(t), im(t)}; }
  Real norm2() const { return re.squaredNorm() + im.squaredNorm(); }
  Real norm() const { return sqrt(norm2()); }

  static CxVector unit(Index dim, Index t) {
    CxVector v(dim);
    v.re(t) = 1;
    return v;
  }
};

/// Dense complex Hermitian matrix as (re, im) parts: re symmetric, im
/// antisymmetric. Solves go through the real embedding
/// [[re, -im], [im, re]], which is symmetric positive definite exactly when
/// the complex matrix is Hermitian positive definite.
struct HermMatrix {
  RealMatrix re, im;

  HermMatrix() = default;
  explicit HermMatrix(Index dim)
      : re(RealMatrix::Zero(dim, dim)), im(RealMatrix::Zero(dim, dim)) {}

  Index dim() const { return re.rows(); }
  Cx operator()(Index r, Index c) const { return {re(r, c), im(r, c)}; }

  /// Max deviation from exact Hermitian storage (tests/validation).
  Real hermitian_defect() const;

  CxVector apply(const CxVector& v) const;
  RealMatrix embed() const;
  Real frobenius() const;

  HermMatrix& add_identity(const Real& s = Real(1));
};

struct HermSolve {
  CxVector x;
  Real rel_residual;
};

/// Solve M x = b for Hermitian positive definite M: LDLT on the real
/// embedding, one step of iterative refinement, residual verification.
/// Throws NotPSD on a pivot below -tol * max-pivot and SolveFailed when the
/// verified relative residual exceeds rel_tol.
HermSolve solve_hpd(const HermMatrix& M, const CxVector& b, const Real& rel_tol);

/// Re(v* M v); exactly real for Hermitian M.
Real quad_form(const HermMatrix& M, const CxVector& v);

/// Smallest eigenvalue via the real embedding (test/validation helper).
Real min_eigenvalue(const HermMatrix& M);

}  // namespace cyv
