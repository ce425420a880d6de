#include "cyv/derivative.hpp"

#include "cyv/errors.hpp"

#include <algorithm>

namespace cyv {

ThresholdConstants solve_c0(const PrecisionConfig& cfg) {
  (void)cfg;  // runs at the ambient working precision
  Real c{"1.5"};
  Real target{"1e-35"};
  for (int it = 0; it < 200; ++it) {
    Real g = 2 * log(c) - 1 / (c * c);
    Real mag = g < 0 ? Real(-g) : g;
    if (mag <= target) break;
    Real gp = 2 / c + 2 / (c * c * c);
    c -= g / gp;
    if (c < 1) c = 1;
    if (c > 2) c = 2;
  }
  ThresholdConstants out;
  out.c0 = c;
  out.sigma = (6 * c * c + 2) / (3 * c * c * c);
  out.residual = c * c - exp(Real(1 / (c * c)));
  return out;
}

CoefficientSequence expcos_coefficients(const Real& a) {
  if (a == 0) throw std::invalid_argument("expcos_coefficients: a must be nonzero");
  return CoefficientSequence::expcos(a);
}

PeriodicFunctionSpec PeriodicFunctionSpec::expcos(Real a_) {
  PeriodicFunctionSpec s;
  s.kind = Kind::ExpCos;
  s.a = std::move(a_);
  return s;
}

PeriodicFunctionSpec PeriodicFunctionSpec::bump(Real radius_frac) {
  if (!(radius_frac > 0 && radius_frac < 1))
    throw std::invalid_argument("bump: radius fraction must be in (0,1)");
  PeriodicFunctionSpec s;
  s.kind = Kind::Bump;
  s.bump_radius_frac = std::move(radius_frac);
  return s;
}

PeriodicFunctionSpec PeriodicFunctionSpec::sampled(std::vector<Real> grid_) {
  PeriodicFunctionSpec s;
  s.kind = Kind::SampledGrid;
  s.grid = std::move(grid_);
  return s;
}

Real bump_value(const Real& radius_frac, const Real& x) {
  Real r = radius_frac * const_pi();
  Real u = x / r;
  Real u2 = u * u;
  if (!(u2 < 1)) return Real(0);
  return exp(Real(-1 / (1 - u2)));
}

namespace {

bool is_power_of_two(long n) { return n > 0 && (n & (n - 1)) == 0; }

// Values at x_t = -pi + 2 pi t / N, t = 0..N-1 (periodic, no duplicate
// endpoint).
std::vector<Real> materialize_grid(const PeriodicFunctionSpec& spec, long N) {
  std::vector<Real> f(static_cast<std::size_t>(N));
  Real pi = const_pi();
  Real step = 2 * pi / Real(N);
  for (long t = 0; t < N; ++t) {
    Real x = -pi + step * Real(t);
    switch (spec.kind) {
      case PeriodicFunctionSpec::Kind::ExpCos:
        f[static_cast<std::size_t>(t)] = exp(Real(spec.a * cos(x)));
        break;
      case PeriodicFunctionSpec::Kind::Bump:
        f[static_cast<std::size_t>(t)] = bump_value(spec.bump_radius_frac, x);
        break;
      case PeriodicFunctionSpec::Kind::SampledGrid:
        throw std::logic_error("materialize_grid: sampled grids use their own values");
    }
  }
  return f;
}

std::vector<Real> grid_from_samples(const std::vector<Real>& samples) {
  if (samples.size() < 65)
    throw std::invalid_argument("sampled grid: need N+1 values with N >= 64");
  long N = static_cast<long>(samples.size()) - 1;
  if (!is_power_of_two(N))
    throw std::invalid_argument("sampled grid: N must be a power of two");
  Real scale{1};
  for (const Real& v : samples) {
    Real m = v < 0 ? Real(-v) : v;
    if (m > scale) scale = m;
  }
  Real gap = samples.front() - samples.back();
  if (gap < 0) gap = -gap;
  if (gap > Real("1e-9") * scale)
    throw std::invalid_argument("sampled grid: endpoint values disagree (f(-pi) != f(pi))");
  return std::vector<Real>(samples.begin(), samples.end() - 1);
}

}  // namespace

CoefficientSequence quadrature_coefficients(const PeriodicFunctionSpec& spec, long kmax,
                                            const PrecisionConfig& cfg, long grid_n) {
  (void)cfg;
  if (kmax < 1) throw std::invalid_argument("quadrature_coefficients: kmax must be >= 1");

  std::vector<Real> f;
  long N;
  if (spec.kind == PeriodicFunctionSpec::Kind::SampledGrid) {
    f = grid_from_samples(spec.grid);
    N = static_cast<long>(f.size());
  } else {
    N = grid_n > 0 ? grid_n : std::max<long>(4 * kmax, 1024);
    if (!is_power_of_two(N)) throw std::invalid_argument("quadrature grid size must be 2^m");
    f = materialize_grid(spec, N);
  }
  if (kmax > N / 4)
    throw GridTooCoarse("quadrature_coefficients: |k| <= N/4 required, N = " + std::to_string(N));

  // c_k = (1/sqrt(2 pi)) (2 pi / N) Sigma_t f_t e^{-i k x_t}
  //     = (sqrt(2 pi)/N) (-1)^k Sigma_t f_t omega^{kt},  omega = e^{-2 pi i/N}.
  std::vector<Cx> omega(static_cast<std::size_t>(N));
  {
    Real pi = const_pi();
    for (long m = 0; m < N; ++m) {
      Real ang = 2 * pi * Real(m) / Real(N);
      omega[static_cast<std::size_t>(m)] = {cos(ang), -sin(ang)};
    }
  }
  Real front = sqrt_two_pi() / Real(N);

  auto dft_at = [&](long k) -> Cx {
    long kr = ((k % N) + N) % N;
    Cx acc;
    for (long t = 0; t < N; ++t) {
      long idx = static_cast<long>((static_cast<long long>(kr) * t) % N);
      const Cx& w = omega[static_cast<std::size_t>(idx)];
      const Real& ft = f[static_cast<std::size_t>(t)];
      acc.re += ft * w.re;
      acc.im += ft * w.im;
    }
    Real sign = (k % 2 == 0) ? front : Real(-front);
    return {sign * acc.re, sign * acc.im};
  };

  std::vector<Cx> values;
  values.reserve(static_cast<std::size_t>(2 * kmax + 1));
  for (long k = -kmax; k <= kmax; ++k) values.push_back(dft_at(k));

  // Aliasing estimate: the largest coefficient magnitude over the top
  // quarter of the trustworthy range.
  Real alias{0};
  long hi = N / 4;
  long lo = hi - std::max<long>(1, hi / 4);
  for (long k = lo; k <= hi; ++k) {
    Real m1 = dft_at(k).abs();
    Real m2 = dft_at(-k).abs();
    if (m1 > alias) alias = m1;
    if (m2 > alias) alias = m2;
  }

  return CoefficientSequence::quadrature_table(std::move(values), alias);
}

Theorem3Report theorem3_check(const CoefficientSequence& coeffs, long kmax,
                              const PrecisionConfig& cfg) {
  if (kmax < 4) throw std::invalid_argument("theorem3_check: kmax must be >= 4");

  // Raw-integral convention: |int f e^{-ikx}| = sqrt(2 pi) |c_k|.
  std::vector<Real> y(static_cast<std::size_t>(kmax + 1));
  Real ln_s2pi = log(sqrt_two_pi());
  for (long m = 0; m <= kmax; ++m) {
    Cx cp = coeffs(m);
    Cx cn = coeffs(-m);
    if (cp.is_zero()) throw ZeroCoefficient(m, "theorem3_check: coefficient vanishes at " +
                                                   std::to_string(m));
    if (cn.is_zero()) throw ZeroCoefficient(-m, "theorem3_check: coefficient vanishes at -" +
                                                    std::to_string(m));
    Real mp = cp.abs(), mn = cn.abs();
    y[static_cast<std::size_t>(m)] = ln_s2pi + log(mp > mn ? mp : mn);
  }

  // Lower convex hull of (m, y_m) on the tail half; the final segment slope
  // is the sustainable decay rate on the sampled range.
  long lo = std::max<long>(1, kmax / 2);
  std::vector<std::pair<long, Real>> hull;
  for (long m = lo; m <= kmax; ++m) {
    Real ym = y[static_cast<std::size_t>(m)];
    while (hull.size() >= 2) {
      auto& [x1, y1] = hull[hull.size() - 2];
      auto& [x2, y2] = hull[hull.size() - 1];
      // pop x2 unless it turns left: (y2-y1)/(x2-x1) < (ym-y2)/(m-x2)
      if ((y2 - y1) * Real(m - x2) < (ym - y2) * Real(x2 - x1)) break;
      hull.pop_back();
    }
    hull.emplace_back(m, ym);
  }
  Real delta;
  {
    auto& [x1, y1] = hull[hull.size() - 2];
    auto& [x2, y2] = hull[hull.size() - 1];
    delta = -(y2 - y1) / Real(x2 - x1);
  }

  Real logC = -std::numeric_limits<Real>::infinity();
  for (long m = 0; m <= kmax; ++m) {
    Real cand = y[static_cast<std::size_t>(m)] + delta * Real(m);
    if (cand > logC) logC = cand;
  }

  ThresholdConstants tc = solve_c0(cfg);
  Theorem3Report rep;
  rep.C_fit = exp(logC);
  rep.delta_fit = delta;
  rep.sigma = tc.sigma;
  rep.kmax = kmax;
  rep.all_nonzero = true;
  rep.satisfied = delta > tc.sigma;
  return rep;
}

Real theorem3_tail_quantity(long k, long n, const CoefficientSequence& coeffs,
                            const PrecisionConfig& cfg) {
  if (std::labs(k) >= n) throw IndexOutOfWindow("theorem3_tail_quantity: need |k| < n");
  NodalContext ctx(Spectrum::integer_line(), n);
  TailSumResult S = tail_sum_kij(ctx, coeffs, k, k, cfg);
  LogSigned pdot2 = ctx.pdot_at_node(k).squared();
  return (S.value / pdot2).value();
}

Real bump_transform(const Real& radius_frac, const Real& lambda, long grid_n) {
  // Even bump: Phi(lambda) = (2 pi / N) Sigma_t phi(x_t) cos(lambda x_t);
  // the sine parts cancel in +-x pairs and phi vanishes at the endpoints.
  Real pi = const_pi();
  Real step = 2 * pi / Real(grid_n);
  Real acc{0};
  for (long t = 0; t < grid_n; ++t) {
    Real x = -pi + step * Real(t);
    Real v = bump_value(radius_frac, x);
    if (v == 0) continue;
    acc += v * cos(Real(lambda * x));
  }
  return step * acc;
}

BumpDemoReport bump_noncyclicity_demo(const Real& radius_frac, long kmax, long nmax,
                                      const PrecisionConfig& cfg, long grid_n) {
  if (nmax < 2) throw std::invalid_argument("bump_noncyclicity_demo: nmax must be >= 2");
  long N = grid_n > 0 ? grid_n : std::max<long>(4 * kmax, 2048);
  if (!is_power_of_two(N)) throw std::invalid_argument("bump demo grid size must be 2^m");

  BumpDemoReport rep;
  rep.kmax = kmax;
  rep.grid_n = N;

  // Zero of Phi: scan for a sign change, then bisect.
  {
    Real step{"0.25"};
    Real prev = bump_transform(radius_frac, Real(0), N);
    Real lo{0}, hi{0};
    bool found = false;
    for (long t = 1; t <= 200; ++t) {
      Real lam = step * Real(t);
      Real val = bump_transform(radius_frac, lam, N);
      if ((prev > 0 && val < 0) || (prev < 0 && val > 0)) {
        lo = step * Real(t - 1);
        hi = lam;
        found = true;
        break;
      }
      prev = val;
    }
    if (!found)
      throw NoZeroFound("bump_noncyclicity_demo: no sign change of Phi in (0, 50]; widen scan");
    Real flo = bump_transform(radius_frac, lo, N);
    Real target{"1e-20"};
    Real mid, fmid;
    for (int it = 0; it < 400; ++it) {
      mid = (lo + hi) / 2;
      fmid = bump_transform(radius_frac, mid, N);
      Real mag = fmid < 0 ? Real(-fmid) : fmid;
      if (mag <= target) break;
      if ((flo > 0) == (fmid > 0)) {
        lo = mid;
        flo = fmid;
      } else {
        hi = mid;
      }
    }
    rep.lambda0 = mid;
    rep.phi_at_lambda0 = fmid < 0 ? Real(-fmid) : fmid;
  }

  PeriodicFunctionSpec spec = PeriodicFunctionSpec::bump(radius_frac);
  CoefficientSequence coeffs = quadrature_coefficients(spec, kmax, cfg, N);
  Spectrum line = Spectrum::integer_line();

  rep.min_rho2_gram = std::numeric_limits<Real>::infinity();
  for (long n = 2; n <= nmax; ++n) {
    BumpDemoReport::Row row;
    row.n = n;
    GramSystem gs = build_gram(line, coeffs, n, cfg);
    row.rho2_gram = rho2_via_gram(gs, 0, cfg).rho2;
    NodalContext ctx(line, n);
    KMatrix K = build_K(ctx, coeffs, cfg);
    row.rho2_k = criterion_value(K, 0, cfg).rho2;
    if (row.rho2_gram < rep.min_rho2_gram) rep.min_rho2_gram = row.rho2_gram;
    rep.rho2_rows.push_back(std::move(row));
  }
  return rep;
}

}  // namespace cyv
