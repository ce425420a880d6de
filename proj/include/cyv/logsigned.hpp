#pragma once

#include "cyv/numeric.hpp"

#include <span>
#include <vector>

namespace cyv {

/// A real number carried as (sign, ln|value|). Survives products like
/// P_{2n+1}(lambda_s) whose magnitudes overflow any fixed-width format,
/// and keeps full working precision in the exponent.
struct LogSigned {
  int sign = 0;   // -1, 0, +1
  Real logmag;    // ln|value|; -inf iff sign == 0

  LogSigned() : logmag(-std::numeric_limits<Real>::infinity()) {}
  LogSigned(int s, Real lm);

  static LogSigned zero() { return {}; }
  static LogSigned one() { return {+1, Real(0)}; }
  static LogSigned from_value(const Real& x);

  bool is_zero() const { return sign == 0; }

  /// Back to linear scale. MPFR's exponent range makes this safe for any
  /// logmag this library produces.
  Real value() const;

  LogSigned operator-() const { return {-sign, logmag}; }

  /// Squared value: sign is 0 or +1, logmag doubles.
  LogSigned squared() const { return {sign == 0 ? 0 : +1, logmag + logmag}; }
};

/// Exact product: signs multiply, logmags add (-inf absorbing).
LogSigned operator*(const LogSigned& a, const LogSigned& b);

/// Quotient; throws std::domain_error when b is zero.
LogSigned operator/(const LogSigned& a, const LogSigned& b);

/// Two-term signed log-sum-exp. Exact cancellation yields zero().
LogSigned logsigned_add(const LogSigned& a, const LogSigned& b);

/// Signed log-sum-exp of a sequence. Internally canonicalizes the order
/// (positive and negative parts each summed ascending by magnitude, one
/// final subtraction), so the result is bitwise permutation-invariant and
/// exact cancellation is detected whenever the two parts agree at working
/// precision.
LogSigned logsigned_sum(std::span<const LogSigned> terms);
LogSigned logsigned_sum(const std::vector<LogSigned>& terms);

}  // namespace cyv
