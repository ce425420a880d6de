#include "cyv/gram.hpp"

#include "cyv/errors.hpp"

#include <Eigen/Cholesky>

namespace cyv {

GramSystem build_gram(const Spectrum& spectrum, const CoefficientSequence& coeffs, long n,
                      const PrecisionConfig& cfg) {
  if (n < 0) throw std::invalid_argument("build_gram: n must be >= 0");
  GramSystem gs{n, spectrum, coeffs, {}, {}, Real(0), false, false};
  gs.moments.reserve(static_cast<std::size_t>(4 * n + 1));
  for (long p = 0; p <= 4 * n; ++p) {
    TailSumResult r = gram_entry_series(spectrum, coeffs, p, cfg);
    gs.moments.push_back(r.value.value());
    if (r.truncation_bound > gs.entry_trunc_bound_max)
      gs.entry_trunc_bound_max = r.truncation_bound;
    gs.tail_assumed_zero |= r.tail_assumed_zero;
    gs.support_clipped |= r.support_clipped;
  }
  const Index dim = 2 * n + 1;
  gs.A.resize(dim, dim);
  for (Index a = 0; a < dim; ++a)
    for (Index b = 0; b < dim; ++b) gs.A(a, b) = gs.moments[static_cast<std::size_t>(a + b)];
  return gs;
}

namespace {

// Condition estimate for SingularGram reports: 10 power iterations on A for
// the top of the spectrum and, when the factorization is usable, 10 inverse
// power iterations through it for the bottom; otherwise the smallest pivot
// magnitude stands in.
double estimate_condition(const RealMatrix& A, const Eigen::LDLT<RealMatrix>& ldlt) {
  const Index m = A.rows();
  RealVector v = RealVector::Ones(m);
  v /= v.norm();
  Real lam_max{0};
  for (int it = 0; it < 10; ++it) {
    RealVector w = A * v;
    lam_max = w.norm();
    if (lam_max == 0) break;
    v = w / lam_max;
  }

  Real lam_min{0};
  if (ldlt.info() == Eigen::Success) {
    RealVector u = RealVector::Ones(m);
    u /= u.norm();
    Real inv_norm{0};
    for (int it = 0; it < 10; ++it) {
      RealVector w = ldlt.solve(u);
      inv_norm = w.norm();
      if (inv_norm == 0) break;
      u = w / inv_norm;
    }
    if (inv_norm > 0) lam_min = 1 / inv_norm;
  }
  if (lam_min == 0) {
    Real pivot_min = std::numeric_limits<Real>::infinity();
    RealVector d = ldlt.vectorD();
    for (Index t = 0; t < d.size(); ++t) {
      Real a = d(t) < 0 ? Real(-d(t)) : d(t);
      if (a < pivot_min) pivot_min = a;
    }
    lam_min = pivot_min;
  }
  if (lam_min == 0 || lam_max == 0) return std::numeric_limits<double>::infinity();
  return static_cast<double>(Real(lam_max / lam_min));
}

long count_nonzero_window(const GramSystem& gs, long radius) {
  long cnt = 0;
  for (long s = -radius; s <= radius; ++s) {
    if (!gs.spectrum.in_range(s)) continue;
    if (!gs.coeffs(s).is_zero()) ++cnt;
  }
  return cnt;
}

RealVector power_vector(const Real& lambda_k, Index dim) {
  RealVector v(dim);
  Real p{1};
  for (Index a = 0; a < dim; ++a) {
    v(a) = p;
    p *= lambda_k;
  }
  return v;
}

}  // namespace

GramRho2 rho2_via_gram(const GramSystem& gs, long k, const PrecisionConfig& cfg) {
  const Index dim = 2 * gs.n + 1;
  Eigen::LDLT<RealMatrix> ldlt(gs.A);

  bool pd = ldlt.info() == Eigen::Success;
  if (pd) {
    RealVector d = ldlt.vectorD();
    for (Index t = 0; t < d.size(); ++t)
      if (!(d(t) > 0)) pd = false;
  }
  if (!pd) {
    double cond = estimate_condition(gs.A, ldlt);
    long nz = count_nonzero_window(gs, 4 * gs.n + 64);
    std::string why = nz < dim ? "fewer than 2n+1 nonzero coefficients reachable"
                               : "precision exhausted at this window size";
    throw SingularGram("rho2_via_gram: Gram matrix not positive definite (" + why + ")", cond);
  }

  Cx ck = gs.coeffs(k);
  RealVector v = power_vector(gs.spectrum(k), dim);

  RealVector x = ldlt.solve(v);
  x += ldlt.solve(RealVector(v - gs.A * x));
  Real rnorm = (gs.A * x - v).norm();
  Real rel_res = rnorm / v.norm();
  if (!(rel_res <= Real(cfg.solve_rel_tol)))
    throw SingularGram("rho2_via_gram: solve residual above tolerance (precision exhausted)",
                       estimate_condition(gs.A, ldlt));

  GramRho2 out;
  out.q = ck.abs2() * v.dot(x);
  out.solve_residual = rel_res;
  Real raw = 1 - out.q;
  out.rho2 = raw;
  if (out.rho2 < 0) out.rho2 = 0;
  if (out.rho2 > 1) out.rho2 = 1;
  out.clip_amount = raw - out.rho2;
  if (out.clip_amount < 0) out.clip_amount = -out.clip_amount;
  return out;
}

Real rho2_via_gram_determinant(const GramSystem& gs, long k, const PrecisionConfig& cfg) {
  const Index dim = 2 * gs.n + 1;

  Eigen::LDLT<RealMatrix> ldltA(gs.A);
  bool pd = ldltA.info() == Eigen::Success;
  RealVector dA;
  if (pd) {
    dA = ldltA.vectorD();
    for (Index t = 0; t < dA.size(); ++t)
      if (!(dA(t) > 0)) pd = false;
  }
  if (!pd)
    throw SingularGram("rho2_via_gram_determinant: Gram matrix not positive definite",
                       estimate_condition(gs.A, ldltA));

  // Gram determinant of (e_k, f, Af, ...): the phase of c_k drops out of
  // the ratio, so the border uses |c_k| and the matrix stays real.
  Real ckmag = gs.coeffs(k).abs();
  RealVector v = power_vector(gs.spectrum(k), dim);

  RealMatrix G(dim + 1, dim + 1);
  G(0, 0) = 1;
  for (Index a = 0; a < dim; ++a) {
    G(0, a + 1) = ckmag * v(a);
    G(a + 1, 0) = ckmag * v(a);
  }
  G.bottomRightCorner(dim, dim) = gs.A;

  Eigen::LDLT<RealMatrix> ldltG(G);
  RealVector dG = ldltG.vectorD();

  Real log_detA{0};
  for (Index t = 0; t < dA.size(); ++t) log_detA += log(dA(t));
  Real log_detG{0};
  for (Index t = 0; t < dG.size(); ++t) {
    if (!(dG(t) > 0)) return Real(0);  // e_k in the span at working precision
    log_detG += log(dG(t));
  }
  Real rho2 = exp(Real(log_detG - log_detA));
  if (rho2 > 1) rho2 = 1;
  (void)cfg;
  return rho2;
}

Real verify_B_factorization(const Spectrum& spectrum, const CoefficientSequence& coeffs, long n,
                            long jmax, const PrecisionConfig& cfg) {
  if (n > 3) throw std::invalid_argument("verify_B_factorization: test-scale only (n <= 3)");
  if (jmax < 0) throw std::invalid_argument("verify_B_factorization: jmax must be >= 0");
  const long s = 2 * n + 1;
  const long radius = s * jmax + n;

  // Truncate the coefficients to |index| <= radius.
  std::vector<Cx> vals;
  vals.reserve(static_cast<std::size_t>(2 * radius + 1));
  for (long t = -radius; t <= radius; ++t) vals.push_back(coeffs(t));
  CoefficientSequence truncated = CoefficientSequence::table(-radius, std::move(vals));

  GramSystem ref = build_gram(spectrum, truncated, n, cfg);

  // Sigma_j B_j B_j^*, honest complex multiply-accumulate.
  const Index dim = s;
  RealMatrix sum_re = RealMatrix::Zero(dim, dim);
  RealMatrix sum_im = RealMatrix::Zero(dim, dim);
  for (long j = -jmax; j <= jmax; ++j) {
    // Column t of B_j holds lambda^a * c at spectral index s*j + t.
    std::vector<Cx> col_c(static_cast<std::size_t>(dim));
    std::vector<Real> col_lambda(static_cast<std::size_t>(dim));
    for (long t = -n; t <= n; ++t) {
      long idx = s * j + t;
      col_c[static_cast<std::size_t>(t + n)] = truncated(idx);
      col_lambda[static_cast<std::size_t>(t + n)] = spectrum(idx);
    }
    for (Index a = 0; a < dim; ++a) {
      for (Index b = 0; b < dim; ++b) {
        Cx acc;
        for (Index t = 0; t < dim; ++t) {
          const Real& lam = col_lambda[static_cast<std::size_t>(t)];
          const Cx& c = col_c[static_cast<std::size_t>(t)];
          Cx left = pow(lam, static_cast<int>(a)) * c;
          Cx right = pow(lam, static_cast<int>(b)) * c;
          acc += left * right.conj();
        }
        sum_re(a, b) += acc.re;
        sum_im(a, b) += acc.im;
      }
    }
  }

  Real dev{0};
  for (Index a = 0; a < dim; ++a)
    for (Index b = 0; b < dim; ++b) {
      Real dr = sum_re(a, b) - ref.A(a, b);
      Cx d{dr, sum_im(a, b)};
      Real m = d.abs();
      if (m > dev) dev = m;
    }
  return dev;
}

LogSigned vandermonde_det(std::span<const Real> nodes) {
  LogSigned det = LogSigned::one();
  for (std::size_t i = 0; i < nodes.size(); ++i)
    for (std::size_t j = i + 1; j < nodes.size(); ++j)
      det = det * LogSigned::from_value(nodes[j] - nodes[i]);
  return det;
}

}  // namespace cyv
