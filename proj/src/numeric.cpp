#include "cyv/numeric.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>

namespace cyv {

void PrecisionConfig::validate() const {
  if (mantissa_bits < 64) throw std::invalid_argument("mantissa_bits must be >= 64");
  if (!(tail_rel_tol > 0 && tail_rel_tol < 1))
    throw std::invalid_argument("tail_rel_tol must be in (0, 1)");
  if (!(solve_rel_tol > 0 && solve_rel_tol < 1))
    throw std::invalid_argument("solve_rel_tol must be in (0, 1)");
}

namespace {

// Smallest digits10 whose MPFR bit count is >= the requested bits.
unsigned digits10_for_bits(unsigned bits) {
  auto bits_of = [](unsigned d10) {
    return boost::multiprecision::detail::digits10_2_2(d10);
  };
  auto d10 = static_cast<unsigned>(std::ceil(static_cast<double>(bits) * 0.30102999566398120));
  while (bits_of(d10) < bits) ++d10;
  return d10;
}

std::atomic<unsigned> g_configured_bits{0};

}  // namespace

PrecisionScope::PrecisionScope(unsigned mantissa_bits) {
  if (mantissa_bits < 64) throw std::invalid_argument("mantissa_bits must be >= 64");
  saved_digits10_ = Real::default_precision();
  saved_configured_bits_ = g_configured_bits.load();
  // All values live at one uniform precision: the configured mantissa plus
  // guard bits. Mixing precisions would make this Boost version juggle a
  // process-global default inside every operation, which is not safe to
  // interleave across worker threads.
  Real::default_precision(digits10_for_bits(mantissa_bits + kGuardBits));
  g_configured_bits.store(mantissa_bits);
}

PrecisionScope::~PrecisionScope() {
  Real::default_precision(saved_digits10_);
  g_configured_bits.store(saved_configured_bits_);
}

unsigned configured_precision_bits() {
  unsigned b = g_configured_bits.load();
  if (b != 0) return b;
  unsigned actual = working_precision_bits();
  return actual > kGuardBits ? actual - kGuardBits : actual;
}

unsigned working_precision_bits() {
  Real probe{0};
  return static_cast<unsigned>(mpfr_get_prec(probe.backend().data()));
}

Real working_epsilon() {
  Real eps{1};
  return ldexp(eps, 1 - static_cast<long>(working_precision_bits()));
}

Real const_pi() {
  Real pi;
  mpfr_const_pi(pi.backend().data(), MPFR_RNDN);
  return pi;
}

Real sqrt_two_pi() { return sqrt(2 * const_pi()); }

Real log_factorial(long m) {
  if (m < 0) throw std::invalid_argument("log_factorial: negative argument");
  if (m <= 20) {
    // 20! = 2432902008176640000 still fits in 64 bits.
    std::uint64_t f = 1;
    for (long i = 2; i <= m; ++i) f *= static_cast<std::uint64_t>(i);
    return log(Real(f));
  }
  return boost::multiprecision::lgamma(Real(m + 1));
}

std::string to_decimal_string(const Real& x, int sig_digits) {
  return x.str(sig_digits, std::ios_base::scientific);
}

Real Cx::abs() const {
  if (im == 0) return re < 0 ? Real(-re) : re;
  if (re == 0) return im < 0 ? Real(-im) : im;
  return sqrt(abs2());
}

Cx operator/(const Cx& a, const Cx& b) {
  Real d = b.abs2();
  if (d == 0) throw std::domain_error("complex division by zero");
  Cx num = a * b.conj();
  return {num.re / d, num.im / d};
}

}  // namespace cyv
