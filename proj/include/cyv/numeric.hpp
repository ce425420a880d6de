#pragma once

#include <boost/multiprecision/mpfr.hpp>

#include <Eigen/Core>

#include <limits>
#include <string>

namespace cyv {

/// Working scalar: MPFR float with runtime-selected precision.
/// Expression templates are off so the type plugs into Eigen directly.
using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                           boost::multiprecision::et_off>;

using RealMatrix = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;
using RealVector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;
using Index = Eigen::Index;

/// Numerical knobs shared by every routine that sums series or solves systems.
struct PrecisionConfig {
  unsigned mantissa_bits = 256;
  double tail_rel_tol = 1e-30;
  double solve_rel_tol = 1e-25;

  /// Throws std::invalid_argument on out-of-range values.
  void validate() const;
};

/// Guard bits carried above the configured mantissa. Log-domain exponents
/// lose |logmag| ulps on the way back to linear scale; the guard keeps the
/// configured accuracy intact.
inline constexpr unsigned kGuardBits = 64;

/// RAII guard that sets the process-wide MPFR precision to
/// mantissa_bits + kGuardBits and restores the previous setting on
/// destruction. Every value in a scope lives at this one uniform precision.
///
/// The default is process-global: do not change precision while parallel
/// workers are computing.
class PrecisionScope {
 public:
  explicit PrecisionScope(unsigned mantissa_bits);
  explicit PrecisionScope(const PrecisionConfig& cfg) : PrecisionScope(cfg.mantissa_bits) {}
  ~PrecisionScope();

  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  unsigned saved_digits10_;
  unsigned saved_configured_bits_;
};

/// Bits of mantissa a Real constructed right now will carry (configured
/// mantissa plus guard bits).
unsigned working_precision_bits();

/// The mantissa_bits the active PrecisionScope was configured with.
unsigned configured_precision_bits();

/// 2^(1 - working_precision_bits()), the unit roundoff at working precision.
Real working_epsilon();

Real const_pi();
Real sqrt_two_pi();

/// ln(m!) at working precision. Exact 64-bit table below 21, lgamma above.
Real log_factorial(long m);

/// Canonical decimal rendering: scientific, `sig_digits` significant digits.
/// The single formatting path used for every number that reaches a report.
std::string to_decimal_string(const Real& x, int sig_digits = 25);

/// Minimal complex value over Real. Only the operations the criterion
/// machinery needs; matrices of these are stored as (re, im) pairs of
/// RealMatrix rather than as Eigen matrices of Cx.
struct Cx {
  Real re{0};
  Real im{0};

  Cx() = default;
  Cx(Real r) : re(std::move(r)) {}  // NOLINT(google-explicit-constructor)
  Cx(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}

  bool is_zero() const { return re == 0 && im == 0; }
  Cx conj() const { return {re, -im}; }
  Real abs2() const { return re * re + im * im; }
  Real abs() const;

  Cx& operator+=(const Cx& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  Cx& operator-=(const Cx& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
};

inline Cx operator+(const Cx& a, const Cx& b) { return {a.re + b.re, a.im + b.im}; }
inline Cx operator-(const Cx& a, const Cx& b) { return {a.re - b.re, a.im - b.im}; }
inline Cx operator-(const Cx& a) { return {-a.re, -a.im}; }
inline Cx operator*(const Cx& a, const Cx& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline Cx operator*(const Real& s, const Cx& a) { return {s * a.re, s * a.im}; }
inline Cx operator*(const Cx& a, const Real& s) { return {a.re * s, a.im * s}; }
Cx operator/(const Cx& a, const Cx& b);
inline bool operator==(const Cx& a, const Cx& b) { return a.re == b.re && a.im == b.im; }

}  // namespace cyv

namespace Eigen {

/// NumTraits for the MPFR scalar. Boost ships one, but it predates the
/// members Eigen 3.4 wants (infinity, quiet_NaN), so we own the full
/// specialization here and do not include boost/multiprecision/eigen.hpp.
template <>
struct NumTraits<cyv::Real> : GenericNumTraits<cyv::Real> {
  using Real = cyv::Real;
  using NonInteger = cyv::Real;
  using Literal = cyv::Real;
  using Nested = cyv::Real;

  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 10,
    AddCost = 30,
    MulCost = 40
  };

  static cyv::Real epsilon() { return std::numeric_limits<cyv::Real>::epsilon(); }
  static cyv::Real dummy_precision() { return epsilon() * 1000; }
  static cyv::Real highest() { return (std::numeric_limits<cyv::Real>::max)(); }
  static cyv::Real lowest() { return -(std::numeric_limits<cyv::Real>::max)(); }
  static cyv::Real infinity() { return std::numeric_limits<cyv::Real>::infinity(); }
  static cyv::Real quiet_NaN() { return std::numeric_limits<cyv::Real>::quiet_NaN(); }
  static int digits10() { return static_cast<int>(cyv::Real::default_precision()); }
};

}  // namespace Eigen
