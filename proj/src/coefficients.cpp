#include "cyv/coefficients.hpp"

#include "cyv/errors.hpp"

#include <cmath>

namespace cyv {

// ---------------------------------------------------------------------------
// Envelope

Envelope Envelope::zero_beyond(long support_radius) {
  Envelope e;
  e.form_ = Form::Zero;
  e.valid_from_ = support_radius + 1;
  return e;
}

Envelope Envelope::geometric(Real C, Real ratio, long valid_from) {
  if (!(C > 0)) throw std::invalid_argument("Envelope::geometric: C must be > 0");
  if (!(ratio > 0)) throw std::invalid_argument("Envelope::geometric: ratio must be > 0");
  Envelope e;
  e.form_ = Form::Geometric;
  e.C_ = std::move(C);
  e.ratio_ = std::move(ratio);
  e.valid_from_ = valid_from;
  return e;
}

Envelope Envelope::factorial(Real C, Real q, long valid_from) {
  if (!(C > 0) || !(q > 0)) throw std::invalid_argument("Envelope::factorial: C, q must be > 0");
  Envelope e;
  e.form_ = Form::Factorial;
  e.C_ = std::move(C);
  e.ratio_ = std::move(q);
  e.valid_from_ = valid_from;
  return e;
}

LogSigned Envelope::log_bound(long m) const {
  switch (form_) {
    case Form::Zero:
      return LogSigned::zero();
    case Form::Geometric:
      return {+1, log(C_) + Real(m) * log(ratio_)};
    case Form::Factorial:
      return {+1, log(C_) + Real(m) * log(ratio_) - log_factorial(m)};
  }
  throw std::logic_error("unreachable");
}

Real Envelope::step_ratio(long m) const {
  switch (form_) {
    case Form::Zero:
      return Real(0);
    case Form::Geometric:
      return ratio_;
    case Form::Factorial:
      return ratio_ / Real(m + 1);
  }
  throw std::logic_error("unreachable");
}

bool Envelope::certifies_decay() const {
  switch (form_) {
    case Form::Zero:
    case Form::Factorial:
      return true;
    case Form::Geometric:
      return ratio_ < 1;
  }
  throw std::logic_error("unreachable");
}

Envelope Envelope::scaled(const Real& factor_mag) const {
  if (form_ == Form::Zero) return *this;
  Envelope e = *this;
  e.C_ = C_ * factor_mag;
  return e;
}

// ---------------------------------------------------------------------------
// CoefficientSequence

namespace {

// Deterministic per-index phase: splitmix64 of (seed, zigzag(j)).
std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Real random_phase_angle(std::uint64_t seed, long j) {
  std::uint64_t zz = (j >= 0) ? (static_cast<std::uint64_t>(j) << 1)
                              : ((static_cast<std::uint64_t>(-(j + 1)) << 1) | 1u);
  std::uint64_t u = splitmix64(seed ^ (zz * 0x2545f4914f6cdd1dULL + 0x9e3779b97f4a7c15ULL));
  // u / 2^64 in [0,1), then scale to [0, 2 pi)
  Real frac = Real(u) / (Real(std::uint64_t(1) << 32) * Real(std::uint64_t(1) << 32));
  return 2 * const_pi() * frac;
}

}  // namespace

struct CoefficientSequence::Impl {
  Kind kind;
  Envelope env = Envelope::zero_beyond(-1);
  std::optional<long> support_radius;
  bool tail_assumed_zero = false;
  Real aliasing_bound{0};

  // table / quadrature storage
  long j_start = 0;
  std::vector<Cx> values;

  // geometric
  Real ratio{0};
  PhaseRule rule = PhaseRule::None;
  std::uint64_t seed = 0;

  // expcos
  Real a{0};

  // custom / scaled
  std::function<Cx(long)> eval;

  Cx value_at(long j) const {
    switch (kind) {
      case Kind::ExplicitTable:
      case Kind::Quadrature: {
        long idx = j - j_start;
        if (idx < 0 || idx >= static_cast<long>(values.size())) return Cx();
        return values[static_cast<std::size_t>(idx)];
      }
      case Kind::Geometric: {
        long m = j < 0 ? -j : j;
        Real mag = pow(ratio, static_cast<int>(m));
        switch (rule) {
          case PhaseRule::None:
            return Cx(mag);
          case PhaseRule::Alternating:
            return (j % 2 == 0) ? Cx(mag) : Cx(-mag);
          case PhaseRule::Random: {
            Real theta = random_phase_angle(seed, j);
            return {mag * cos(theta), mag * sin(theta)};
          }
        }
        throw std::logic_error("unreachable");
      }
      case Kind::ExpCos: {
        long m = j < 0 ? -j : j;
        // sqrt(2 pi) (a/2)^m Sigma_p (a^2/4)^p / (p! (p+m)!), summed until
        // the next term is below working precision relative to the partial.
        Real half = a / 2;
        Real x = half * half;
        Real term = 1 / exp(log_factorial(m));  // p = 0 term of the series
        Real sum = term;
        Real eps = working_epsilon();
        for (long p = 1; p < 100000; ++p) {
          term *= x / (Real(p) * Real(p + m));
          sum += term;
          if (term <= eps * sum) break;
        }
        Real front = (m == 0) ? Real(1) : pow(half, static_cast<int>(m));
        return Cx(sqrt_two_pi() * front * sum);
      }
      case Kind::Custom:
        return eval(j);
    }
    throw std::logic_error("unreachable");
  }
};

CoefficientSequence CoefficientSequence::table(long j_start, std::vector<Cx> values) {
  if (values.empty()) throw std::invalid_argument("CoefficientSequence::table: empty");
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::ExplicitTable;
  impl->j_start = j_start;
  impl->values = std::move(values);
  long j_end = j_start + static_cast<long>(impl->values.size()) - 1;
  long radius = std::max(std::labs(j_start), std::labs(j_end));
  impl->support_radius = radius;
  impl->env = Envelope::zero_beyond(radius);
  impl->tail_assumed_zero = true;
  return CoefficientSequence(std::move(impl));
}

CoefficientSequence CoefficientSequence::geometric(Real ratio, PhaseRule rule,
                                                   std::uint64_t seed) {
  if (!(ratio > 0 && ratio < 1))
    throw std::invalid_argument("CoefficientSequence::geometric: ratio must be in (0,1)");
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::Geometric;
  impl->ratio = ratio;
  impl->rule = rule;
  impl->seed = seed;
  impl->env = Envelope::geometric(Real(1), ratio, 0);
  return CoefficientSequence(std::move(impl));
}

CoefficientSequence CoefficientSequence::expcos(Real a) {
  if (a == 0) throw std::invalid_argument("CoefficientSequence::expcos: a must be nonzero");
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::ExpCos;
  impl->a = std::move(a);
  // |c_k| <= sqrt(2 pi) e^{a^2/4} |a/2|^k / k!
  Real absa = impl->a < 0 ? Real(-impl->a) : impl->a;
  Real q = absa / 2;
  impl->env = Envelope::factorial(sqrt_two_pi() * exp(q * q), q, 0);
  return CoefficientSequence(std::move(impl));
}

CoefficientSequence CoefficientSequence::quadrature_table(std::vector<Cx> values,
                                                          Real aliasing_bound) {
  if (values.empty() || values.size() % 2 == 0)
    throw std::invalid_argument("quadrature_table: need odd number of values (k = -K..K)");
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::Quadrature;
  long radius = static_cast<long>(values.size() / 2);
  impl->j_start = -radius;
  impl->values = std::move(values);
  impl->support_radius = radius;
  impl->env = Envelope::zero_beyond(radius);
  impl->tail_assumed_zero = true;
  impl->aliasing_bound = std::move(aliasing_bound);
  return CoefficientSequence(std::move(impl));
}

CoefficientSequence CoefficientSequence::custom(std::function<Cx(long)> eval, Envelope env,
                                                std::optional<long> support_radius) {
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::Custom;
  impl->eval = std::move(eval);
  impl->env = std::move(env);
  impl->support_radius = support_radius;
  return CoefficientSequence(std::move(impl));
}

CoefficientSequence CoefficientSequence::scaled(const CoefficientSequence& base,
                                                const Cx& factor) {
  if (factor.is_zero()) throw std::invalid_argument("scaled: factor must be nonzero");
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::Custom;
  impl->eval = [base, factor](long j) { return factor * base(j); };
  impl->env = base.envelope().scaled(factor.abs());
  impl->support_radius = base.support_radius();
  impl->tail_assumed_zero = base.tail_assumed_zero();
  return CoefficientSequence(std::move(impl));
}

CoefficientSequence::Kind CoefficientSequence::kind() const { return impl_->kind; }

Cx CoefficientSequence::operator()(long j) const { return impl_->value_at(j); }

const Envelope& CoefficientSequence::envelope() const { return impl_->env; }

std::optional<long> CoefficientSequence::support_radius() const { return impl_->support_radius; }

bool CoefficientSequence::tail_assumed_zero() const { return impl_->tail_assumed_zero; }

const Real& CoefficientSequence::aliasing_bound() const { return impl_->aliasing_bound; }

}  // namespace cyv
