#pragma once

#include "cyv/logsigned.hpp"
#include "cyv/numeric.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

namespace cyv {

enum class PhaseRule { None, Alternating, Random };

/// Certified decay majorant: |c_j| <= bound(|j|) for |j| >= valid_from().
/// Restricted to forms whose tails sum in closed form: the step ratio
/// bound(m+1)/bound(m) is non-increasing in m, which is what the
/// truncation certificates in tail sums rely on.
class Envelope {
 public:
  enum class Form {
    Zero,       // identically zero past valid_from-1 (finite support)
    Geometric,  // C * r^m
    Factorial   // C * q^m / m!
  };

  static Envelope zero_beyond(long support_radius);
  static Envelope geometric(Real C, Real ratio, long valid_from = 0);
  static Envelope factorial(Real C, Real q, long valid_from = 0);

  Form form() const { return form_; }
  long valid_from() const { return valid_from_; }

  /// ln bound(m); LogSigned::zero() for the Zero form.
  LogSigned log_bound(long m) const;
  Real bound(long m) const { return log_bound(m).value(); }

  /// bound(m+1)/bound(m), non-increasing in m. Zero form: 0.
  Real step_ratio(long m) const;

  /// Whether step_ratio eventually drops below 1 (geometric needs r < 1).
  bool certifies_decay() const;

  /// Same envelope scaled by |factor|.
  Envelope scaled(const Real& factor_mag) const;

 private:
  Form form_ = Form::Zero;
  Real C_{0};
  Real ratio_{0};
  long valid_from_ = 0;
};

/// Fourier coefficients c_j = (f, e_j) with a mandatory decay certificate.
/// Immutable, cheap to copy, safe to share across threads.
class CoefficientSequence {
 public:
  enum class Kind { ExplicitTable, Geometric, ExpCos, Quadrature, Custom };

  /// Finite table: values for j = j_start .. j_start+len-1, zero elsewhere.
  static CoefficientSequence table(long j_start, std::vector<Cx> values);

  /// c_j = ratio^|j| * phase(j), ratio in (0,1).
  /// Random phases are a pure function of (seed, j).
  static CoefficientSequence geometric(Real ratio, PhaseRule rule = PhaseRule::None,
                                       std::uint64_t seed = 0);

  /// Orthonormal-basis Fourier coefficients of e^{a cos x}, a real nonzero:
  /// c_k = sqrt(2 pi) (a/2)^|k| Sigma_m (a^2/4)^m / (m! (m+|k|)!).
  static CoefficientSequence expcos(Real a);

  /// Values for k = -kmax..kmax computed by DFT; zero tail is an assumption
  /// of the ingestion, flagged via tail_assumed_zero().
  static CoefficientSequence quadrature_table(std::vector<Cx> values, Real aliasing_bound);

  /// Arbitrary evaluator with a caller-supplied envelope.
  static CoefficientSequence custom(std::function<Cx(long)> eval, Envelope env,
                                    std::optional<long> support_radius = std::nullopt);

  /// Same sequence multiplied by a nonzero complex constant.
  static CoefficientSequence scaled(const CoefficientSequence& base, const Cx& factor);

  Kind kind() const;
  Cx operator()(long j) const;
  const Envelope& envelope() const;

  /// Values are identically zero beyond this index magnitude (if finite).
  std::optional<long> support_radius() const;

  /// True when the zero tail is a truncation artifact (table/quadrature
  /// ingestion) rather than a property of the underlying vector.
  bool tail_assumed_zero() const;

  /// Quadrature ingestion aliasing estimate, 0 otherwise.
  const Real& aliasing_bound() const;

 private:
  struct Impl;
  explicit CoefficientSequence(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

}  // namespace cyv
