#include "cyv/hermitian.hpp"

#include "cyv/errors.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

namespace cyv {

Real HermMatrix::hermitian_defect() const {
  Real d{0};
  for (Index r = 0; r < dim(); ++r)
    for (Index c = 0; c < dim(); ++c) {
      Real dr = re(r, c) - re(c, r);
      Real di = im(r, c) + im(c, r);
      if (dr < 0) dr = -dr;
      if (di < 0) di = -di;
      if (dr > d) d = dr;
      if (di > d) d = di;
    }
  return d;
}

CxVector HermMatrix::apply(const CxVector& v) const {
  CxVector out(dim());
  out.re = re * v.re - im * v.im;
  out.im = re * v.im + im * v.re;
  return out;
}

RealMatrix HermMatrix::embed() const {
  const Index m = dim();
  RealMatrix E(2 * m, 2 * m);
  E.topLeftCorner(m, m) = re;
  E.topRightCorner(m, m) = -im;
  E.bottomLeftCorner(m, m) = im;
  E.bottomRightCorner(m, m) = re;
  return E;
}

Real HermMatrix::frobenius() const { return sqrt(re.squaredNorm() + im.squaredNorm()); }

HermMatrix& HermMatrix::add_identity(const Real& s) {
  for (Index t = 0; t < dim(); ++t) re(t, t) += s;
  return *this;
}

HermSolve solve_hpd(const HermMatrix& M, const CxVector& b, const Real& rel_tol) {
  const Index m = M.dim();
  if (b.dim() != m) throw std::invalid_argument("solve_hpd: dimension mismatch");

  RealMatrix E = M.embed();
  Eigen::LDLT<RealMatrix> ldlt(E);
  if (ldlt.info() != Eigen::Success)
    throw NotPSD("solve_hpd: LDLT factorization failed");
  {
    RealVector d = ldlt.vectorD();
    Real dmax{0};
    for (Index t = 0; t < d.size(); ++t)
      if (d(t) > dmax) dmax = d(t);
    for (Index t = 0; t < d.size(); ++t)
      if (d(t) < -rel_tol * dmax)
        throw NotPSD("solve_hpd: negative pivot beyond tolerance");
  }

  RealVector rhs(2 * m);
  rhs.head(m) = b.re;
  rhs.tail(m) = b.im;

  RealVector x = ldlt.solve(rhs);
  // One step of iterative refinement at working precision.
  RealVector r = rhs - E * x;
  x += ldlt.solve(r);

  HermSolve out;
  out.x.re = x.head(m);
  out.x.im = x.tail(m);

  CxVector res = M.apply(out.x);
  res.re -= b.re;
  res.im -= b.im;
  Real bnorm = b.norm();
  out.rel_residual = bnorm > 0 ? Real(res.norm() / bnorm) : res.norm();
  if (!(out.rel_residual <= rel_tol))
    throw SolveFailed("solve_hpd: residual " + to_decimal_string(out.rel_residual, 6) +
                      " above tolerance");
  return out;
}

Real quad_form(const HermMatrix& M, const CxVector& v) {
  CxVector w = M.apply(v);
  // Re(v* w) = v.re . w.re + v.im . w.im
  return v.re.dot(w.re) + v.im.dot(w.im);
}

Real min_eigenvalue(const HermMatrix& M) {
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(M.embed(), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

}  // namespace cyv
