#include "cyv/logsigned.hpp"

#include <algorithm>
#include <stdexcept>

namespace cyv {

LogSigned::LogSigned(int s, Real lm) : sign(s), logmag(std::move(lm)) {
  using boost::multiprecision::isinf;
  if (sign == 0) {
    logmag = -std::numeric_limits<Real>::infinity();
  } else if (isinf(logmag) && logmag < 0) {
    sign = 0;
  }
}

LogSigned LogSigned::from_value(const Real& x) {
  if (x == 0) return zero();
  if (x > 0) return {+1, log(x)};
  return {-1, log(Real(-x))};
}

Real LogSigned::value() const {
  if (sign == 0) return Real(0);
  Real v = exp(logmag);
  return sign > 0 ? v : Real(-v);
}

LogSigned operator*(const LogSigned& a, const LogSigned& b) {
  if (a.sign == 0 || b.sign == 0) return LogSigned::zero();
  return {a.sign * b.sign, a.logmag + b.logmag};
}

LogSigned operator/(const LogSigned& a, const LogSigned& b) {
  if (b.sign == 0) throw std::domain_error("LogSigned division by zero");
  if (a.sign == 0) return LogSigned::zero();
  return {a.sign * b.sign, a.logmag - b.logmag};
}

LogSigned logsigned_add(const LogSigned& a, const LogSigned& b) {
  if (a.sign == 0) return b;
  if (b.sign == 0) return a;
  const LogSigned& big = (a.logmag >= b.logmag) ? a : b;
  const LogSigned& small = (a.logmag >= b.logmag) ? b : a;
  // |result| = |big| * |1 + s*exp(logmag_small - logmag_big)|, s = +-1.
  Real t = exp(Real(small.logmag - big.logmag));
  Real v = (big.sign == small.sign) ? 1 + t : 1 - t;
  if (v == 0) return LogSigned::zero();
  int sign = big.sign;
  if (v < 0) {
    sign = -sign;
    v = -v;
  }
  return {sign, big.logmag + log(v)};
}

namespace {

// Sum one sign class, smallest magnitude first, in the scale of `shift`
// (the largest magnitude over both classes). Returns Sigma exp(lm - shift).
Real sum_class(std::vector<const LogSigned*>& terms, const Real& shift) {
  std::sort(terms.begin(), terms.end(),
            [](const LogSigned* x, const LogSigned* y) { return x->logmag < y->logmag; });
  Real acc{0};
  for (const LogSigned* t : terms) acc += exp(Real(t->logmag - shift));
  return acc;
}

}  // namespace

LogSigned logsigned_sum(std::span<const LogSigned> terms) {
  std::vector<const LogSigned*> pos, neg;
  bool any = false;
  Real shift;
  for (const LogSigned& t : terms) {
    if (t.sign == 0) continue;
    if (!any || t.logmag > shift) shift = t.logmag;
    any = true;
    (t.sign > 0 ? pos : neg).push_back(&t);
  }
  if (!any) return LogSigned::zero();
  Real p = sum_class(pos, shift);
  Real q = sum_class(neg, shift);
  Real v = p - q;
  if (v == 0) return LogSigned::zero();
  int sign = +1;
  if (v < 0) {
    sign = -1;
    v = -v;
  }
  return {sign, shift + log(v)};
}

LogSigned logsigned_sum(const std::vector<LogSigned>& terms) {
  return logsigned_sum(std::span<const LogSigned>(terms.data(), terms.size()));
}

}  // namespace cyv
