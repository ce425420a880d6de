#include "cyv/nodal.hpp"

#include "cyv/errors.hpp"

namespace cyv {

NodalContext::NodalContext(Spectrum spectrum, Window window)
    : spectrum_(std::move(spectrum)), window_(window) {
  nodes_.reserve(static_cast<std::size_t>(window_.size()));
  for (long i = -window_.n; i <= window_.n; ++i) nodes_.push_back(spectrum_(i));
  for (std::size_t t = 0; t + 1 < nodes_.size(); ++t)
    if (!(nodes_[t] < nodes_[t + 1]))
      throw std::invalid_argument("NodalContext: nodes are not strictly increasing");
}

const Real& NodalContext::node(long i) const {
  if (!window_.contains(i))
    throw IndexOutOfWindow("node index " + std::to_string(i) + " outside window n=" +
                           std::to_string(window_.n));
  return nodes_[static_cast<std::size_t>(i + window_.n)];
}

LogSigned NodalContext::eval_P(const Real& lambda) const {
  int sign = +1;
  Real logmag{0};
  for (const Real& node : nodes_) {
    Real d = lambda - node;
    if (d == 0) return LogSigned::zero();
    if (d < 0) {
      sign = -sign;
      d = -d;
    }
    logmag += log(d);
  }
  return {sign, logmag};
}

LogSigned NodalContext::pdot_at_node(long i) const {
  if (!window_.contains(i))
    throw IndexOutOfWindow("pdot_at_node: index " + std::to_string(i) + " outside window n=" +
                           std::to_string(window_.n));
  const long n = window_.n;
  const auto kind = spectrum_.kind();
  if (kind == Spectrum::Kind::IntegerLine || kind == Spectrum::Kind::AffineInteger) {
    // Prod_{j != i} a(i - j) = a^{2n} (-1)^{n-i} (n+i)! (n-i)!
    int sign = ((n - i) % 2 == 0) ? +1 : -1;
    Real logmag = log_factorial(n + i) + log_factorial(n - i);
    if (kind == Spectrum::Kind::AffineInteger) logmag += Real(2 * n) * log(spectrum_.bound_slope());
    return {sign, logmag};
  }
  const Real& x = node(i);
  int sign = +1;
  Real logmag{0};
  for (long j = -n; j <= n; ++j) {
    if (j == i) continue;
    Real d = x - nodes_[static_cast<std::size_t>(j + n)];
    if (d < 0) {
      sign = -sign;
      d = -d;
    }
    logmag += log(d);
  }
  return {sign, logmag};
}

Real NodalContext::collision_threshold(const Real& node_value) const {
  Real scale = node_value < 0 ? Real(-node_value) : node_value;
  if (scale < 1) scale = 1;
  Real thr{1};
  thr = ldexp(thr, -static_cast<long>(configured_precision_bits() / 2));
  return thr * scale;
}

LogSigned NodalContext::lagrange_weight(long i, const Real& mu) const {
  if (!window_.contains(i))
    throw IndexOutOfWindow("lagrange_weight: index " + std::to_string(i) + " outside window");
  for (const Real& node : nodes_) {
    Real d = mu - node;
    if (d < 0) d = -d;
    if (d <= collision_threshold(node))
      throw NodeCollision("lagrange_weight: mu collides with a node at working precision");
  }
  LogSigned p = eval_P(mu);
  LogSigned gap = LogSigned::from_value(mu - node(i));
  return p / (pdot_at_node(i) * gap);
}

}  // namespace cyv
