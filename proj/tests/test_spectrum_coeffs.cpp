#include "cyv/coefficients.hpp"
#include "cyv/errors.hpp"
#include "cyv/spectrum.hpp"

#include <doctest.h>

#include <random>

using namespace cyv;

TEST_CASE("spectrum_eval on the three kinds") {
  Spectrum line = Spectrum::integer_line();
  CHECK(line(5) == Real(5));
  CHECK(line(-1000000) == Real(-1000000));

  Spectrum aff = Spectrum::affine(Real(2), Real(1));
  CHECK(aff(-3) == Real(-5));

  Spectrum tab = Spectrum::table({Real(-2), Real(-1), Real(0), Real(1), Real(2)});
  CHECK(tab(2) == Real(2));
  CHECK_THROWS_AS(tab(3), IndexOutOfTable);
  CHECK_THROWS_AS(tab(-3), IndexOutOfTable);
}

TEST_CASE("integer line is the identity map across the tested index range") {
  Spectrum line = Spectrum::integer_line();
  for (long j = -1000000; j <= 1000000; j += 997) CHECK(line(j) == Real(j));
  CHECK(line(1000000) == Real(1000000));
  CHECK(line(-999999) == Real(-999999));
}

TEST_CASE("strict monotonicity over queried windows") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> inc(0.05, 1.0);
  std::vector<Real> vals;
  Real x{-7};
  for (int t = 0; t < 21; ++t) {
    vals.push_back(x);
    x += Real(inc(rng));
  }
  Spectrum tab = Spectrum::table(vals);
  for (long j = -10; j < 10; ++j) CHECK(tab(j) < tab(j + 1));

  Spectrum aff = Spectrum::affine(Real("0.25"), Real(-3));
  for (long j = -50; j < 50; ++j) CHECK(aff(j) < aff(j + 1));
}

TEST_CASE("table construction rejects bad input") {
  CHECK_THROWS_AS(Spectrum::table({Real(0), Real(1)}), std::invalid_argument);  // even length
  CHECK_THROWS_AS(Spectrum::table({Real(0), Real(0), Real(1)}), std::invalid_argument);
  CHECK_THROWS_AS(Spectrum::affine(Real(0), Real(1)), std::invalid_argument);
  CHECK_THROWS_AS(Spectrum::affine(Real(-1), Real(0)), std::invalid_argument);
}

TEST_CASE("growth hints bound the spectrum from below") {
  Spectrum aff = Spectrum::affine(Real(2), Real(-9));
  auto hint = aff.growth_hint();
  for (long j = hint.j0; j <= hint.j0 + 50; ++j) {
    for (long s : {j, -j}) {
      Real lam = aff(s);
      if (lam < 0) lam = -lam;
      CHECK(lam >= hint.alpha * Real(j));
    }
  }
}

TEST_CASE("window invariants") {
  Window w(3);
  CHECK(w.size() == 7);
  CHECK(w.contains(-3));
  CHECK(w.contains(3));
  CHECK(!w.contains(4));
  CHECK_THROWS_AS(Window(-1), std::invalid_argument);
}

TEST_CASE("geometric sequence: values, determinism, envelope validity") {
  CoefficientSequence c = CoefficientSequence::geometric(Real("0.5"));
  CHECK(c(0).re == Real(1));
  CHECK(c(3).re == Real(1) / 8);
  CHECK(c(-3).re == Real(1) / 8);

  CoefficientSequence rnd =
      CoefficientSequence::geometric(Real("0.7"), PhaseRule::Random, 42);
  for (long j : {-17L, -2L, 0L, 5L, 33L}) {
    Cx a = rnd(j), b = rnd(j);
    CHECK(a.re == b.re);  // repeated queries identical
    CHECK(a.im == b.im);
    Real mag = a.abs();
    Real env = rnd.envelope().bound(j < 0 ? -j : j);
    CHECK(mag <= env * (1 + working_epsilon() * 16));
  }

  CoefficientSequence alt =
      CoefficientSequence::geometric(Real("0.5"), PhaseRule::Alternating);
  CHECK(alt(1).re < 0);
  CHECK(alt(2).re > 0);
  CHECK(alt(-1).re < 0);

  CHECK_THROWS_AS(CoefficientSequence::geometric(Real(1)), std::invalid_argument);
  CHECK_THROWS_AS(CoefficientSequence::geometric(Real("1.2")), std::invalid_argument);
}

TEST_CASE("table sequence has finite support and zero envelope beyond") {
  CoefficientSequence t = CoefficientSequence::table(-1, {Cx(Real(2)), Cx(Real(0)), Cx(Real(1))});
  CHECK(t(-1).re == Real(2));
  CHECK(t(0).is_zero());
  CHECK(t(1).re == Real(1));
  CHECK(t(5).is_zero());
  CHECK(t.support_radius().value() == 1);
  CHECK(t.tail_assumed_zero());
  CHECK(t.envelope().form() == Envelope::Form::Zero);
}

TEST_CASE("expcos sequence envelope holds on samples") {
  CoefficientSequence e = CoefficientSequence::expcos(Real(1));
  for (long k = 0; k <= 30; ++k) {
    Real mag = e(k).abs();
    Real env = e.envelope().bound(k);
    CHECK(mag <= env * (1 + working_epsilon() * 16));
    CHECK(mag > 0);
  }
}

TEST_CASE("scaled sequence multiplies values and envelope") {
  CoefficientSequence base = CoefficientSequence::geometric(Real("0.5"));
  Cx alpha{Real(3), Real(-4)};  // |alpha| = 5
  CoefficientSequence s = CoefficientSequence::scaled(base, alpha);
  Cx v = s(2);
  CHECK(v.re == Real(3) / 4);
  CHECK(v.im == Real(-1));
  Real b2 = s.envelope().bound(2);
  Real want = Real(5) / 4;
  Real d = b2 - want;
  if (d < 0) d = -d;
  CHECK(d <= working_epsilon() * 8);
}

TEST_CASE("envelope step ratios are non-increasing") {
  Envelope g = Envelope::geometric(Real(2), Real("0.6"));
  CHECK(g.step_ratio(3) == g.step_ratio(17));
  Envelope f = Envelope::factorial(Real(1), Real(4));
  for (long m = 0; m < 30; ++m) CHECK(f.step_ratio(m + 1) < f.step_ratio(m));
  CHECK(f.certifies_decay());
  CHECK(!Envelope::geometric(Real(1), Real("1.5")).certifies_decay());
}
