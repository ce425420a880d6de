#include "cyv/tail.hpp"

#include "cyv/errors.hpp"

#include <algorithm>
#include <deque>

namespace cyv {

namespace {

constexpr long kMaxTailTerms = 2'000'000;

Real abs_real(const Real& x) { return x < 0 ? Real(-x) : x; }

// Closed-form bound on Sigma_{|s| >= m0} of terms bounded by
//   exp(log_const) * (A m + Bp)^degree * env(m)^2.
// Relies on the step ratio being non-increasing in m. Returns an empty
// optional while the ratio at m0 is still >= 1 (bound not yet available).
struct RemainderModel {
  Real A, Bp;       // |lambda_s| + shift  <=  A m + Bp
  long degree;
  Real log_const;   // e.g. -2 ln(gap) for the fixed denominator bound
  const Envelope* env;

  std::optional<Real> bound_from(long m0) const {
    if (env->form() == Envelope::Form::Zero) return Real(0);
    if (m0 < env->valid_from()) return std::nullopt;
    Real poly_m = A * Real(m0) + Bp;
    Real poly_next = A * Real(m0 + 1) + Bp;
    Real ratio = env->step_ratio(m0);
    Real psi = ratio * ratio;
    if (degree > 0) psi *= pow(Real(poly_next / poly_m), static_cast<int>(degree));
    if (!(psi < 1)) return std::nullopt;
    LogSigned lb = env->log_bound(m0);
    Real log_u = log_const + 2 * lb.logmag;
    if (degree > 0) log_u += Real(degree) * log(poly_m);
    return 2 * exp(log_u) / (1 - psi);
  }
};

}  // namespace

// ---------------------------------------------------------------------------
// TailSweepCache

struct TailSweepCache::Store {
  std::deque<Entry> entries;  // entries[d] is distance n+1+d
};

TailSweepCache::TailSweepCache(const NodalContext& ctx, const CoefficientSequence& coeffs)
    : ctx_(ctx), coeffs_(coeffs), store_(std::make_unique<Store>()) {}

TailSweepCache::~TailSweepCache() = default;

const TailSweepCache::Entry& TailSweepCache::at(long m) {
  const long n = ctx_.n();
  if (m <= n) throw std::logic_error("TailSweepCache::at: m must exceed n");
  long d = m - n - 1;
  while (static_cast<long>(store_->entries.size()) <= d) {
    long mm = n + 1 + static_cast<long>(store_->entries.size());
    Entry e;
    for (int side = 0; side < 2; ++side) {
      long s = side == 0 ? mm : -mm;
      Side& out = side == 0 ? e.pos : e.neg;
      if (!ctx_.spectrum().in_range(s)) continue;
      Cx c = coeffs_(s);
      if (c.is_zero()) continue;
      Real lambda = ctx_.spectrum()(s);
      LogSigned p = ctx_.eval_P(lambda);
      out.present = true;
      out.log_w = 2 * p.logmag + 2 * log(c.abs());
      out.log_gap.reserve(static_cast<std::size_t>(ctx_.size()));
      for (const Real& node : ctx_.nodes()) out.log_gap.push_back(log(abs_real(lambda - node)));
    }
    store_->entries.push_back(std::move(e));
  }
  return store_->entries[static_cast<std::size_t>(d)];
}

// ---------------------------------------------------------------------------
// tail_sum_kij

TailSumResult tail_sum_kij(const NodalContext& ctx, const CoefficientSequence& coeffs, long i,
                           long j, const PrecisionConfig& cfg, TailSweepCache* cache) {
  const long n = ctx.n();
  if (i < -n || i > n || j < -n || j > n)
    throw IndexOutOfWindow("tail_sum_kij: indices must satisfy |i|,|j| <= n");
  if (!coeffs.envelope().certifies_decay())
    throw DivergentTail("tail_sum_kij: envelope does not certify decay");
  if (!coeffs.support_radius() && !ctx.spectrum().table_radius() &&
      coeffs.envelope().valid_from() > kMaxTailTerms + n)
    throw ToleranceUnreachable("tail_sum_kij: envelope only valid past the term cap");

  std::optional<TailSweepCache> local;
  if (!cache) {
    local.emplace(ctx, coeffs);
    cache = &*local;
  }

  TailSumResult res;
  res.tail_assumed_zero = coeffs.tail_assumed_zero();

  const auto spec_radius = ctx.spectrum().table_radius();
  const auto supp_radius = coeffs.support_radius();
  // Hard end of the summation range, when one exists.
  std::optional<long> end;
  if (spec_radius) end = *spec_radius;
  if (supp_radius && (!end || *supp_radius < *end)) end = *supp_radius;
  if (spec_radius && (!supp_radius || *supp_radius > *spec_radius)) res.support_clipped = true;

  const bool infinite = !end.has_value();
  RemainderModel model;
  if (infinite) {
    Real lam_max = abs_real(ctx.nodes().front());
    Real lam_last = abs_real(ctx.nodes().back());
    if (lam_last > lam_max) lam_max = lam_last;
    model.A = ctx.spectrum().bound_slope();
    model.Bp = ctx.spectrum().bound_offset() + lam_max;
    model.degree = 4 * n + 2;
    model.env = &coeffs.envelope();
  }

  // Canonical index order keeps tail_sum_kij(i, j) bitwise symmetric.
  const std::size_t ti = static_cast<std::size_t>(std::min(i, j) + n);
  const std::size_t tj = static_cast<std::size_t>(std::max(i, j) + n);
  const Real rel_tol(cfg.tail_rel_tol);
  LogSigned acc = LogSigned::zero();
  Real best_bound = std::numeric_limits<Real>::infinity();

  for (long m = n + 1;; ++m) {
    if (end && m > *end) {
      res.truncation_bound = 0;
      break;
    }
    if (m - n > kMaxTailTerms)
      throw ToleranceUnreachable("tail_sum_kij: term cap exceeded before certification");

    const auto& entry = cache->at(m);
    for (const TailSweepCache::Side* side : {&entry.pos, &entry.neg}) {
      if (!side->present) continue;
      LogSigned term{+1, side->log_w - side->log_gap[ti] - side->log_gap[tj]};
      acc = logsigned_add(acc, term);
      ++res.terms_used;
    }

    if (!infinite) continue;

    model.log_const = -2 * log(ctx.spectrum().min_gap_to_window(m + 1, n));
    auto bound = model.bound_from(m + 1);
    if (!bound) continue;
    if (*bound < best_bound) best_bound = *bound;
    Real tol = acc.is_zero() ? rel_tol : rel_tol * exp(acc.logmag);
    if (best_bound <= tol) {
      res.truncation_bound = best_bound;
      break;
    }
  }

  res.value = acc;
  return res;
}

// ---------------------------------------------------------------------------
// gram_entry_series

TailSumResult gram_entry_series(const Spectrum& spectrum, const CoefficientSequence& coeffs,
                                long p, const PrecisionConfig& cfg) {
  if (p < 0) throw std::invalid_argument("gram_entry_series: p must be >= 0");
  if (!coeffs.envelope().certifies_decay())
    throw DivergentTail("gram_entry_series: envelope does not certify decay");

  TailSumResult res;
  res.tail_assumed_zero = coeffs.tail_assumed_zero();

  const auto spec_radius = spectrum.table_radius();
  const auto supp_radius = coeffs.support_radius();
  std::optional<long> end;
  if (spec_radius) end = *spec_radius;
  if (supp_radius && (!end || *supp_radius < *end)) end = *supp_radius;
  if (spec_radius && (!supp_radius || *supp_radius > *spec_radius)) res.support_clipped = true;

  const bool infinite = !end.has_value();
  RemainderModel model;
  if (infinite) {
    model.A = spectrum.bound_slope();
    model.Bp = spectrum.bound_offset();
    model.degree = p;
    model.env = &coeffs.envelope();
    model.log_const = 0;
  }

  auto term_at = [&](long s) -> LogSigned {
    Cx c = coeffs(s);
    if (c.is_zero()) return LogSigned::zero();
    Real log_c2 = 2 * log(c.abs());
    if (p == 0) return {+1, log_c2};
    Real lambda = spectrum(s);
    if (lambda == 0) return LogSigned::zero();
    int sign = (lambda > 0 || p % 2 == 0) ? +1 : -1;
    return {sign, Real(p) * log(abs_real(lambda)) + log_c2};
  };

  const Real rel_tol(cfg.tail_rel_tol);
  LogSigned acc = LogSigned::zero();
  Real best_bound = std::numeric_limits<Real>::infinity();

  {
    LogSigned t0 = term_at(0);
    if (!t0.is_zero()) {
      acc = t0;
      ++res.terms_used;
    }
  }

  for (long m = 1;; ++m) {
    if (end && m > *end) {
      res.truncation_bound = 0;
      break;
    }
    if (m > kMaxTailTerms)
      throw ToleranceUnreachable("gram_entry_series: term cap exceeded before certification");

    for (long s : {m, -m}) {
      if (!spectrum.in_range(s)) continue;
      LogSigned t = term_at(s);
      if (t.is_zero()) continue;
      acc = logsigned_add(acc, t);
      ++res.terms_used;
    }

    if (!infinite) continue;

    auto bound = model.bound_from(m + 1);
    if (!bound) continue;
    if (*bound < best_bound) best_bound = *bound;
    Real tol = acc.is_zero() ? rel_tol : rel_tol * exp(acc.logmag);
    if (best_bound <= tol) {
      res.truncation_bound = best_bound;
      break;
    }
  }

  res.value = acc;
  return res;
}

}  // namespace cyv
