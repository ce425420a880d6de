#include "cyv/errors.hpp"
#include "cyv/nodal.hpp"

#include <doctest.h>

#include <random>

using namespace cyv;

namespace {

Real abs_real(const Real& x) { return x < 0 ? Real(-x) : x; }

Real rel_err(const Real& got, const Real& want) {
  Real d = abs_real(got - want);
  Real s = abs_real(want);
  return s == 0 ? d : Real(d / s);
}

}  // namespace

TEST_CASE("eval_P on the integer line") {
  NodalContext c1(Spectrum::integer_line(), 1);
  // P_3(lambda) = lambda (lambda^2 - 1)
  LogSigned p3 = c1.eval_P(Real(3));
  CHECK(p3.sign == +1);
  CHECK(rel_err(p3.value(), Real(24)) < working_epsilon() * 16);
  CHECK(c1.eval_P(Real(1)).is_zero());

  NodalContext c2(Spectrum::integer_line(), 2);
  // 10 * (100-1) * (100-4) = 95040, redone in exact integers here
  long long expect = 10LL * 99LL * 96LL;
  CHECK(expect == 95040LL);
  CHECK(rel_err(c2.eval_P(Real(10)).value(), Real(expect)) < working_epsilon() * 16);
}

TEST_CASE("pdot factorial fast path values") {
  NodalContext c2(Spectrum::integer_line(), 2);
  LogSigned d0 = c2.pdot_at_node(0);  // (-1)^2 2! 2! = +4
  CHECK(d0.sign == +1);
  CHECK(rel_err(d0.value(), Real(4)) < working_epsilon() * 16);
  LogSigned d2 = c2.pdot_at_node(2);  // (-1)^0 4! 0! = +24
  CHECK(d2.sign == +1);
  CHECK(rel_err(d2.value(), Real(24)) < working_epsilon() * 16);
  CHECK_THROWS_AS(c2.pdot_at_node(3), IndexOutOfWindow);
}

TEST_CASE("pdot generic product on a table") {
  NodalContext ct(Spectrum::table({Real("-1.5"), Real(0), Real(2)}), 1);
  LogSigned d = ct.pdot_at_node(0);  // (0 + 1.5)(0 - 2) = -3
  CHECK(d.sign == -1);
  CHECK(rel_err(d.value(), Real(-3)) < working_epsilon() * 16);
}

TEST_CASE("factorial and generic paths agree on integer nodes") {
  for (long n : {1L, 5L, 20L, 35L, 50L}) {
    NodalContext fast(Spectrum::integer_line(), n);
    std::vector<Real> nodes;
    for (long j = -n; j <= n; ++j) nodes.push_back(Real(j));
    NodalContext generic(Spectrum::table(nodes), n);
    for (long i = -n; i <= n; ++i) {
      LogSigned a = fast.pdot_at_node(i);
      LogSigned b = generic.pdot_at_node(i);
      CHECK(a.sign == b.sign);
      CHECK(abs_real(a.logmag - b.logmag) <= Real("1e-30") * (1 + abs_real(a.logmag)));
    }
  }
}

TEST_CASE("affine fast path agrees with the generic product") {
  Real a{"0.5"}, b{"0.25"};
  for (long n : {1L, 3L, 6L}) {
    NodalContext fast(Spectrum::affine(a, b), n);
    std::vector<Real> nodes;
    for (long j = -n; j <= n; ++j) nodes.push_back(a * Real(j) + b);
    NodalContext generic(Spectrum::table(nodes), n);
    for (long i = -n; i <= n; ++i) {
      LogSigned x = fast.pdot_at_node(i);
      LogSigned y = generic.pdot_at_node(i);
      CHECK(x.sign == y.sign);
      CHECK(abs_real(x.logmag - y.logmag) <= Real("1e-30") * (1 + abs_real(x.logmag)));
    }
  }
}

TEST_CASE("pdot sign alternates as (-1)^(n-i)") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> inc(0.1, 2.0);
  for (long n : {1L, 2L, 4L}) {
    std::vector<Real> nodes;
    Real x{-5};
    for (long t = 0; t < 2 * n + 1; ++t) {
      nodes.push_back(x);
      x += Real(inc(rng));
    }
    NodalContext ctx(Spectrum::table(nodes), n);
    for (long i = -n; i <= n; ++i) {
      int expect = ((n - i) % 2 == 0) ? +1 : -1;
      CHECK(ctx.pdot_at_node(i).sign == expect);
    }
  }
}

TEST_CASE("lagrange weight values and node collision") {
  NodalContext c1(Spectrum::integer_line(), 1);
  // P(2) = 6, Pdot(0) = -1: 6 / (-1 * 2) = -3
  LogSigned w0 = c1.lagrange_weight(0, Real(2));
  CHECK(w0.sign == -1);
  CHECK(rel_err(w0.value(), Real(-3)) < working_epsilon() * 32);
  // Pdot(1) = 2: 6 / (2 * 1) = 3
  LogSigned w1 = c1.lagrange_weight(1, Real(2));
  CHECK(rel_err(w1.value(), Real(3)) < working_epsilon() * 32);

  CHECK_THROWS_AS(c1.lagrange_weight(0, Real(1)), NodeCollision);
  Real nearly = Real(1) + ldexp(Real(1), -200);  // inside the collision band
  CHECK_THROWS_AS(c1.lagrange_weight(0, nearly), NodeCollision);
}

TEST_CASE("partition of unity") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> mu_raw(-8.0, 8.0);
  std::uniform_real_distribution<double> inc(0.1, 1.2);
  for (int trial = 0; trial < 12; ++trial) {
    long n = 1 + static_cast<long>(rng() % 4);
    Spectrum spec = [&]() {
      if (trial % 2 == 0) return Spectrum::integer_line();
      std::vector<Real> nodes;
      Real x{-4};
      for (long t = 0; t < 2 * n + 1; ++t) {
        nodes.push_back(x);
        x += Real(inc(rng));
      }
      return Spectrum::table(nodes);
    }();
    NodalContext ctx(spec, n);
    Real mu{mu_raw(rng)};
    mu += Real("0.37");  // nudge off integers
    bool collides = false;
    for (const Real& node : ctx.nodes())
      if (abs_real(mu - node) <= ctx.collision_threshold(node)) collides = true;
    if (collides) continue;
    std::vector<LogSigned> weights;
    for (long i = -n; i <= n; ++i) weights.push_back(ctx.lagrange_weight(i, mu));
    Real sum = logsigned_sum(weights).value();
    CHECK(rel_err(sum, Real(1)) < Real("1e-25"));
  }
}
