#include "cyv/spectrum.hpp"

#include "cyv/errors.hpp"

#include <cmath>

namespace cyv {

struct Spectrum::Impl {
  Kind kind;
  Real a{1};       // affine slope
  Real b{0};       // affine offset
  Real abs_b{0};   // |b|, or max|value| for tables
  std::vector<Real> values;
  long radius = 0;
};

Spectrum Spectrum::integer_line() {
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::IntegerLine;
  return Spectrum(std::move(impl));
}

Spectrum Spectrum::affine(Real a, Real b) {
  if (!(a > 0)) throw std::invalid_argument("Spectrum::affine: slope must be > 0");
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::AffineInteger;
  impl->a = std::move(a);
  impl->b = std::move(b);
  impl->abs_b = impl->b < 0 ? Real(-impl->b) : impl->b;
  return Spectrum(std::move(impl));
}

Spectrum Spectrum::table(std::vector<Real> values) {
  if (values.empty() || values.size() % 2 == 0)
    throw std::invalid_argument("Spectrum::table: need odd number of values (indices -J..J)");
  for (std::size_t i = 0; i + 1 < values.size(); ++i)
    if (!(values[i] < values[i + 1]))
      throw std::invalid_argument("Spectrum::table: values must be strictly increasing");
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::ExplicitTable;
  impl->radius = static_cast<long>(values.size() / 2);
  impl->values = std::move(values);
  for (const Real& v : impl->values) {
    Real m = v < 0 ? Real(-v) : v;
    if (m > impl->abs_b) impl->abs_b = m;
  }
  return Spectrum(std::move(impl));
}

Spectrum::Kind Spectrum::kind() const { return impl_->kind; }

Real Spectrum::operator()(long j) const {
  switch (impl_->kind) {
    case Kind::IntegerLine:
      return Real(j);
    case Kind::AffineInteger:
      return impl_->a * Real(j) + impl_->b;
    case Kind::ExplicitTable:
      if (j < -impl_->radius || j > impl_->radius)
        throw IndexOutOfTable("spectrum index " + std::to_string(j) + " outside table [-" +
                              std::to_string(impl_->radius) + ", " +
                              std::to_string(impl_->radius) + "]");
      return impl_->values[static_cast<std::size_t>(j + impl_->radius)];
  }
  throw std::logic_error("unreachable");
}

bool Spectrum::in_range(long j) const {
  return impl_->kind != Kind::ExplicitTable || (j >= -impl_->radius && j <= impl_->radius);
}

std::optional<long> Spectrum::table_radius() const {
  if (impl_->kind == Kind::ExplicitTable) return impl_->radius;
  return std::nullopt;
}

Real Spectrum::bound_slope() const {
  switch (impl_->kind) {
    case Kind::IntegerLine:
      return Real(1);
    case Kind::AffineInteger:
      return impl_->a;
    case Kind::ExplicitTable:
      return Real(0);
  }
  throw std::logic_error("unreachable");
}

Real Spectrum::bound_offset() const { return impl_->abs_b; }

Real Spectrum::min_gap_to_window(long m, long n) const {
  if (m <= n) throw std::invalid_argument("min_gap_to_window: need m > n");
  switch (impl_->kind) {
    case Kind::IntegerLine:
      return Real(m - n);
    case Kind::AffineInteger:
      return impl_->a * Real(m - n);
    case Kind::ExplicitTable:
      throw std::logic_error("min_gap_to_window: tables have no infinite tail");
  }
  throw std::logic_error("unreachable");
}

Spectrum::GrowthHint Spectrum::growth_hint() const {
  switch (impl_->kind) {
    case Kind::IntegerLine:
      return {Real(1), 1};
    case Kind::AffineInteger: {
      // |a*j + b| >= (a/2)|j| once (a/2)|j| >= |b|
      Real absb = impl_->b < 0 ? Real(-impl_->b) : impl_->b;
      Real j0r = 2 * absb / impl_->a;
      long j0 = 1 + static_cast<long>(static_cast<double>(j0r));
      return {impl_->a / 2, j0};
    }
    case Kind::ExplicitTable: {
      Real alpha = std::numeric_limits<Real>::infinity();
      for (long j = -impl_->radius; j <= impl_->radius; ++j) {
        if (j == 0) continue;
        Real v = impl_->values[static_cast<std::size_t>(j + impl_->radius)];
        Real mag = v < 0 ? Real(-v) : v;
        Real ratio = mag / Real(j < 0 ? -j : j);
        if (ratio < alpha) alpha = ratio;
      }
      if (impl_->radius == 0) alpha = 0;
      return {alpha, 1};
    }
  }
  throw std::logic_error("unreachable");
}

}  // namespace cyv
