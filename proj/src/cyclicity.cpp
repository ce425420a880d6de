#include "cyv/cyclicity.hpp"

#include "cyv/errors.hpp"

#include <algorithm>

namespace cyv {

KMatrix KMatrix::from_entries(long n, HermMatrix m) {
  if (m.dim() != 2 * n + 1) throw std::invalid_argument("KMatrix: dimension must be 2n+1");
  if (m.hermitian_defect() != 0)
    throw std::invalid_argument("KMatrix: entries not Hermitian as stored");
  for (Index t = 0; t < m.dim(); ++t)
    if (m.re(t, t) < 0) throw std::invalid_argument("KMatrix: negative diagonal entry");
  KMatrix k;
  k.n = n;
  k.entries = std::move(m);
  return k;
}

KMatrix KMatrix::diagonal(long n, const RealVector& diag_values) {
  HermMatrix m(2 * n + 1);
  if (diag_values.size() != m.dim())
    throw std::invalid_argument("KMatrix::diagonal: size mismatch");
  for (Index t = 0; t < m.dim(); ++t) m.re(t, t) = diag_values(t);
  return from_entries(n, std::move(m));
}

// ---------------------------------------------------------------------------
// relabel_support

std::optional<long> RelabelResult::position_of(long original_index) const {
  if (identity) return original_index;
  auto it = std::lower_bound(index_map.begin(), index_map.end(), original_index);
  if (it == index_map.end() || *it != original_index) return std::nullopt;
  return static_cast<long>(it - index_map.begin()) - radius;
}

RelabelResult relabel_support(const Spectrum& spectrum, const CoefficientSequence& coeffs,
                              long scan_radius) {
  if (scan_radius < 0) throw std::invalid_argument("relabel_support: negative scan radius");
  long R = scan_radius;
  if (auto jr = spectrum.table_radius(); jr && *jr < R) R = *jr;

  std::vector<long> support;
  bool any_zero = false;
  for (long j = -R; j <= R; ++j) {
    if (coeffs(j).is_zero())
      any_zero = true;
    else
      support.push_back(j);
  }
  if (support.empty()) throw EmptySupport("relabel_support: all coefficients in scan are zero");

  if (!any_zero) {
    RelabelResult res{spectrum, coeffs, true, {}, 0};
    return res;
  }

  // Center on the middle element, then trim to a symmetric index range.
  const long M = static_cast<long>(support.size());
  const long mid = (M - 1) / 2;
  const long radius = std::min(mid, M - 1 - mid);
  const long lo = mid - radius, hi = mid + radius;

  std::vector<Real> lambdas;
  std::vector<Cx> values;
  std::vector<long> map;
  lambdas.reserve(static_cast<std::size_t>(2 * radius + 1));
  for (long p = lo; p <= hi; ++p) {
    long orig = support[static_cast<std::size_t>(p)];
    map.push_back(orig);
    lambdas.push_back(spectrum(orig));
    values.push_back(coeffs(orig));
  }

  RelabelResult res{Spectrum::table(std::move(lambdas)),
                    CoefficientSequence::table(-radius, std::move(values)), false,
                    std::move(map), radius};
  return res;
}

// ---------------------------------------------------------------------------
// build_K

KMatrix build_K(const NodalContext& ctx, const CoefficientSequence& coeffs,
                const PrecisionConfig& cfg) {
  const long n = ctx.n();
  const Index dim = 2 * n + 1;

  struct ColData {
    LogSigned pdot;
    Real cmag;   // |c_i|
    Cx unit;     // c_i / |c_i|
  };
  std::vector<ColData> cols(static_cast<std::size_t>(dim));
  for (long i = -n; i <= n; ++i) {
    Cx c = coeffs(i);
    if (c.is_zero())
      throw ZeroCoefficientInWindow(i, "build_K: coefficient at index " + std::to_string(i) +
                                           " vanishes; relabel the support first");
    auto& col = cols[static_cast<std::size_t>(i + n)];
    col.pdot = ctx.pdot_at_node(i);
    col.cmag = c.abs();
    Real inv = 1 / col.cmag;
    col.unit = {c.re * inv, c.im * inv};
  }

  KMatrix K;
  K.n = n;
  K.entries = HermMatrix(dim);

  TailSweepCache cache(ctx, coeffs);
  for (long i = -n; i <= n; ++i) {
    for (long j = i; j <= n; ++j) {
      TailSumResult S = tail_sum_kij(ctx, coeffs, i, j, cfg, &cache);
      K.tail_assumed_zero |= S.tail_assumed_zero;
      K.support_clipped |= S.support_clipped;

      const auto& ci = cols[static_cast<std::size_t>(i + n)];
      const auto& cj = cols[static_cast<std::size_t>(j + n)];
      // 1 / (Pdot_i Pdot_j |c_i| |c_j|), in log scale
      LogSigned scale = LogSigned::one() /
                        (ci.pdot * cj.pdot * LogSigned::from_value(ci.cmag) *
                         LogSigned::from_value(cj.cmag));
      Real mag = (S.value * scale).value();
      Real bound_abs = S.truncation_bound * exp(scale.logmag);
      if (bound_abs > K.truncation_bound_max) K.truncation_bound_max = bound_abs;

      if (i == j) {
        K.entries.re(i + n, i + n) = mag;  // conj(u_i) u_i = 1 exactly
      } else {
        Cx phase = ci.unit.conj() * cj.unit;
        Cx v = mag * phase;
        K.entries.re(i + n, j + n) = v.re;
        K.entries.im(i + n, j + n) = v.im;
        K.entries.re(j + n, i + n) = v.re;
        K.entries.im(j + n, i + n) = -v.im;
      }
    }
  }
  return K;
}

// ---------------------------------------------------------------------------
// criterion

Real theorem2_bound(const KMatrix& K, long k) {
  if (std::labs(k) >= K.n)
    throw IndexOutOfWindow("theorem2_bound: need |k| < n");
  Real kk = K.diag(k);
  return kk / (1 + kk);
}

Real refined_bound(const KMatrix& K, long k, bool literal_positive_range, bool* degenerate) {
  const long n = K.n;
  if (std::labs(k) >= n) throw IndexOutOfWindow("refined_bound: need |k| < n");
  if (degenerate) *degenerate = false;

  const Real kk = K.diag(k);
  const Real t2 = kk / (1 + kk);

  const long lo = literal_positive_range ? 1 : -n;
  std::vector<long> range;
  for (long i = lo; i <= n; ++i)
    if (i != k) range.push_back(i);

  Real s1{0};
  for (long i : range) s1 += K.entry(i, k).abs2();

  // s2 = sum_{j,i} k_kj k_ji k_ik = u* (K restricted) u with u_i = k_ik
  Cx s2c;
  for (long j : range) {
    Cx inner;
    for (long i : range) inner += K.entry(j, i) * K.entry(i, k);
    s2c += K.entry(k, j) * inner;
  }
  Real s2 = s2c.re;

  Real denom = s1 + s2;
  Real value;
  if (denom <= 0) {
    if (s1 == 0) {
      value = t2;  // no off-diagonal coupling: reduces to the diagonal bound
    } else {
      if (degenerate) *degenerate = true;
      value = t2;
    }
  } else {
    Real one_kk = 1 + kk;
    value = t2 - (s1 * s1 / denom) / (one_kk * one_kk);
  }
  if (value < 0) value = 0;
  if (value > t2) value = t2;
  return value;
}

CriterionReport criterion_value(const KMatrix& K, long k, const PrecisionConfig& cfg) {
  const long n = K.n;
  if (std::labs(k) >= n)
    throw IndexOutOfWindow("criterion_value: the criterion is stated for |k| < n");

  HermMatrix M = K.entries;
  M.add_identity();

  CxVector e = CxVector::unit(M.dim(), k + n);
  HermSolve sol = solve_hpd(M, e, Real(cfg.solve_rel_tol));

  CriterionReport rep;
  rep.k = k;
  rep.n = n;
  rep.q = sol.x.re(k + n);
  rep.rho2 = 1 - rep.q;
  rep.k_kk = K.diag(k);
  rep.bound_t2 = theorem2_bound(K, k);
  rep.bound_refined = refined_bound(K, k, false, &rep.refined_degenerate);
  rep.tail_bound_max = K.truncation_bound_max;
  rep.solve_residual = sol.rel_residual;
  return rep;
}

Real kantorovich_check(const HermMatrix& M, const CxVector& e, const PrecisionConfig& cfg) {
  if (M.dim() != e.dim()) throw std::invalid_argument("kantorovich_check: dimension mismatch");
  Real nrm = e.norm();
  Real dev = nrm - 1;
  if (dev < 0) dev = -dev;
  if (dev > ldexp(Real(1), -static_cast<long>(working_precision_bits() / 2)))
    throw std::invalid_argument("kantorovich_check: e must be a unit vector");
  HermSolve sol = solve_hpd(M, e, Real(cfg.solve_rel_tol));
  Real inv_form = sol.x.re.dot(e.re) + sol.x.im.dot(e.im);  // Re <M^{-1}e, e>
  Real fwd_form = quad_form(M, e);
  return inv_form * fwd_form;
}

}  // namespace cyv
