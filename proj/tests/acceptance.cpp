// Acceptance suite: one test case per criterion, one PASS/FAIL line each.
// Budgeted to desk scale; every tolerance is pinned in code.

#include "cyv/derivative.hpp"
#include "cyv/errors.hpp"
#include "cyv/sweep.hpp"

#include <doctest.h>

#include <Eigen/Eigenvalues>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>

using namespace cyv;

namespace {

struct Stopwatch {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
};

void verdict(int criterion, const char* name, bool ok) {
  std::cout << "[acceptance] criterion " << criterion << " (" << name << "): "
            << (ok ? "PASS" : "FAIL") << std::endl;
  CHECK_MESSAGE(ok, "criterion ", criterion, " ", name);
}

Real abs_real(const Real& x) { return x < 0 ? Real(-x) : x; }

Spectrum random_table_spectrum(std::mt19937_64& rng, long radius) {
  std::uniform_real_distribution<double> inc(0.1, 1.1);
  std::vector<Real> vals;
  Real x = -Real(radius) * Real("0.6");
  for (long t = 0; t < 2 * radius + 1; ++t) {
    vals.push_back(x);
    x += Real(inc(rng));
  }
  return Spectrum::table(std::move(vals));
}

CxVector random_unit(std::mt19937_64& rng, Index dim) {
  std::uniform_real_distribution<double> val(-1.0, 1.0);
  CxVector e(dim);
  for (Index t = 0; t < dim; ++t) {
    e.re(t) = Real(val(rng));
    e.im(t) = Real(val(rng));
  }
  Real nrm = e.norm();
  e.re /= nrm;
  e.im /= nrm;
  return e;
}

HermMatrix random_hpd(std::mt19937_64& rng, Index dim) {
  std::uniform_real_distribution<double> val(-1.0, 1.0);
  RealMatrix br(dim, dim), bi(dim, dim);
  for (Index r = 0; r < dim; ++r)
    for (Index c = 0; c < dim; ++c) {
      br(r, c) = Real(val(rng));
      bi(r, c) = Real(val(rng));
    }
  HermMatrix M(dim);
  M.re = br * br.transpose() + bi * bi.transpose();
  M.im = bi * br.transpose() - br * bi.transpose();
  M.add_identity(Real(1) / 8);
  return M;
}

#ifndef CYV_CLI_PATH
#error "CYV_CLI_PATH must point at the cyv binary"
#endif

std::string run_cli(const std::string& args, int* exit_code) {
  std::string cmd = std::string(CYV_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  while (std::size_t got = fread(buf, 1, sizeof(buf), pipe)) out.append(buf, got);
  int rc = pclose(pipe);
  if (exit_code) *exit_code = WEXITSTATUS(rc);
  return out;
}

}  // namespace

TEST_CASE("criterion 1: threshold constants") {
  Stopwatch watch;
  int rc = 0;
  std::string out = run_cli("constants", &rc);
  double elapsed = watch.seconds();

  double c0 = 0, sigma = 0, residual = 1;
  std::sscanf(out.c_str(), "c0       = %lf", &c0);
  std::size_t p = out.find("sigma");
  if (p != std::string::npos) std::sscanf(out.c_str() + p, "sigma    = %lf", &sigma);
  p = out.find("residual");
  if (p != std::string::npos) std::sscanf(out.c_str() + p, "residual = %lf", &residual);

  PrecisionConfig cfg;
  ThresholdConstants tc = solve_c0(cfg);

  bool ok = rc == 0;
  ok = ok && std::abs(c0 - 1.328) <= 5e-4;
  ok = ok && std::abs(sigma - 1.79) <= 5e-3;
  ok = ok && std::abs(residual) <= 1e-30;
  ok = ok && abs_real(tc.c0 - Real("1.328")) <= Real("5e-4");
  ok = ok && abs_real(tc.sigma - Real("1.79")) <= Real("5e-3");
  ok = ok && abs_real(tc.residual) <= Real("1e-30");
  ok = ok && elapsed < 1.0;
  verdict(1, "constants", ok);
}

namespace {

struct EquivalenceInstance {
  Spectrum spectrum;
  CoefficientSequence coeffs;
  long n;
};

std::vector<EquivalenceInstance> equivalence_instances() {
  std::mt19937_64 rng(20260811);
  std::uniform_real_distribution<double> ratio_dist(0.2, 0.8);
  std::vector<EquivalenceInstance> out;
  for (int t = 0; t < 108; ++t) {
    long n = 2 + (t % 4);
    Real ratio{ratio_dist(rng)};
    CoefficientSequence coeffs =
        CoefficientSequence::geometric(ratio, PhaseRule::Random, rng());
    if (t % 2 == 0) {
      out.push_back({Spectrum::integer_line(), coeffs, n});
    } else {
      out.push_back({random_table_spectrum(rng, n + 25), coeffs, n});
    }
  }
  return out;
}

}  // namespace

TEST_CASE("criteria 2 and 3: route equivalence and bound chain") {
  Stopwatch watch;
  PrecisionConfig cfg;  // 256-bit default
  auto instances = equivalence_instances();

  bool equiv_ok = true;
  bool chain_ok = true;
  long cells = 0;
  for (const auto& inst : instances) {
    NodalContext ctx(inst.spectrum, inst.n);
    KMatrix K = build_K(ctx, inst.coeffs, cfg);
    GramSystem gs = build_gram(inst.spectrum, inst.coeffs, inst.n, cfg);
    for (long k = -(inst.n - 1); k <= inst.n - 1; ++k) {
      CriterionReport rep = criterion_value(K, k, cfg);
      GramRho2 g = rho2_via_gram(gs, k, cfg);
      ++cells;
      Real rho2 = g.rho2 > rep.rho2 ? g.rho2 : rep.rho2;
      Real allowed = Real("1e-12") * (rho2 > Real("1e-6") ? rho2 : Real("1e-6"));
      if (!(abs_real(rep.rho2 - g.rho2) <= allowed)) equiv_ok = false;
      if (!(rep.rho2 <= rep.bound_refined + Real("1e-15"))) chain_ok = false;
      if (!(rep.bound_refined <= rep.bound_t2 + Real("1e-15"))) chain_ok = false;
    }
  }
  double elapsed = watch.seconds();
  equiv_ok = equiv_ok && instances.size() >= 100 && cells >= 100;
  equiv_ok = equiv_ok && elapsed < 120.0;
  verdict(2, "route equivalence", equiv_ok);

  // diagonal-K synthetic instances attain the diagonal bound exactly
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> diag(0.0, 5.0);
  for (int t = 0; t < 20 && chain_ok; ++t) {
    long n = 2 + (t % 3);
    RealVector d(2 * n + 1);
    for (Index i = 0; i < d.size(); ++i) d(i) = Real(diag(rng));
    KMatrix K = KMatrix::diagonal(n, d);
    for (long k = -(n - 1); k <= n - 1; ++k) {
      CriterionReport rep = criterion_value(K, k, cfg);
      if (!(abs_real(rep.rho2 - rep.bound_t2) <= Real("1e-30"))) chain_ok = false;
    }
  }
  verdict(3, "bound chain", chain_ok);
}

TEST_CASE("criterion 4: Kantorovich inequality") {
  PrecisionConfig cfg;
  std::mt19937_64 rng(424242);
  bool ok = true;

  for (int t = 0; t < 1000; ++t) {
    Index dim = 2 + static_cast<Index>(rng() % 19);  // <= 20
    HermMatrix M = random_hpd(rng, dim);
    CxVector e = random_unit(rng, dim);
    Real prod = kantorovich_check(M, e, cfg);
    if (!(prod >= 1 - Real("1e-20"))) ok = false;
  }

  // equality at eigenvectors
  for (int t = 0; t < 20; ++t) {
    Index dim = 2 + static_cast<Index>(rng() % 7);
    HermMatrix M = random_hpd(rng, dim);
    Eigen::SelfAdjointEigenSolver<RealMatrix> es(M.embed());
    RealVector v = es.eigenvectors().col(0);
    CxVector e(dim);
    e.re = v.head(dim);
    e.im = v.tail(dim);
    Real nrm = e.norm();
    e.re /= nrm;
    e.im /= nrm;
    Real prod = kantorovich_check(M, e, cfg);
    if (!(abs_real(prod - 1) <= Real("1e-20"))) ok = false;
  }
  verdict(4, "kantorovich inequality", ok);
}

TEST_CASE("criterion 5: derivative-system desk-scale reproduction") {
  Stopwatch watch;
  PrecisionConfig cfg;
  CoefficientSequence e = expcos_coefficients(Real(1));
  bool ok = true;

  for (long k = -2; k <= 2; ++k) {
    Real t4;
    Real prev = std::numeric_limits<Real>::infinity();
    Real last;
    for (long n = 4; n <= 12; ++n) {
      Real t = theorem3_tail_quantity(k, n, e, cfg);
      if (n == 4) t4 = t;
      if (!(t < prev)) ok = false;
      prev = t;
      last = t;
    }
    if (!(last <= Real("1e-3") * t4)) ok = false;
  }

  Theorem3Report rep = theorem3_check(e, 20, cfg);
  ok = ok && rep.satisfied && rep.delta_fit > rep.sigma;
  ok = ok && watch.seconds() < 60.0;
  verdict(5, "derivative-system reproduction", ok);
}

TEST_CASE("criterion 6: finite-support exactness") {
  PrecisionConfig cfg;
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> mag(0.1, 2.0);
  std::uniform_real_distribution<double> ph(0.0, 6.28);
  bool ok = true;
  for (long n = 1; n <= 4; ++n) {
    std::vector<Cx> vals;
    for (long j = -n; j <= n; ++j) {
      Real m{mag(rng)}, a{ph(rng)};
      vals.push_back({m * cos(a), m * sin(a)});
    }
    CoefficientSequence coeffs = CoefficientSequence::table(-n, std::move(vals));
    Spectrum line = Spectrum::integer_line();

    GramSystem gs = build_gram(line, coeffs, n, cfg);
    for (long k = -n; k <= n; ++k) {
      GramRho2 g = rho2_via_gram(gs, k, cfg);
      if (!(g.rho2 <= Real("1e-25"))) ok = false;
    }
    NodalContext ctx(line, n);
    KMatrix K = build_K(ctx, coeffs, cfg);
    for (long k = -(n - 1); k <= n - 1; ++k) {  // the criterion form is stated for |k| < n
      CriterionReport rep = criterion_value(K, k, cfg);
      if (!(rep.rho2 <= Real("1e-25"))) ok = false;
    }
  }
  verdict(6, "finite-support exactness", ok);
}

TEST_CASE("criterion 7: B-factorization verification") {
  PrecisionConfig cfg;
  Spectrum line = Spectrum::integer_line();
  bool ok = true;
  CoefficientSequence dyadic = CoefficientSequence::geometric(Real("0.5"));
  for (long n = 1; n <= 3; ++n)
    for (long jmax = 0; jmax <= 2; ++jmax) {
      Real dev = verify_B_factorization(line, dyadic, n, jmax, cfg);
      if (!(dev <= Real("1e-25"))) ok = false;
    }
  // a rational table with interior structure
  CoefficientSequence tab = CoefficientSequence::table(
      -4, {Cx(Real(1) / 16), Cx(Real(1) / 8), Cx(Real(1) / 4), Cx(Real(1) / 2), Cx(Real(1)),
           Cx(Real(1) / 2), Cx(Real(1) / 4), Cx(Real(1) / 8), Cx(Real(1) / 16)});
  Real dev = verify_B_factorization(line, tab, 1, 1, cfg);
  ok = ok && dev <= Real("1e-25");
  verdict(7, "B-factorization", ok);
}

TEST_CASE("criterion 8: bump-function non-cyclicity demonstration") {
  PrecisionConfig cfg;  // 256-bit run checked against the 512-bit fixture
  // Fixture: min over n in {2..8} of rho^2(e_0) from the Gram route at 512
  // bits, radius 0.9, kmax 256, grid 1024:
  //   1.9808282007038203411355285e-01
  // The floor is set just below that oracle value.
  const Real kFloor{"0.198"};
  BumpDemoReport rep = bump_noncyclicity_demo(Real("0.9"), 256, 8, cfg, 1024);
  bool ok = rep.phi_at_lambda0 <= Real("1e-20");
  ok = ok && rep.rho2_rows.size() == 7;
  ok = ok && rep.min_rho2_gram > kFloor;
  verdict(8, "bump non-cyclicity", ok);
}

TEST_CASE("criterion 9: proof-inequality spot checks") {
  PrecisionConfig cfg;
  bool ok = true;
  for (long n : {5L, 10L, 20L, 30L}) {
    NodalContext ctx(Spectrum::integer_line(), n);
    for (long s = n + 1; s <= 5 * n; ++s) {
      LogSigned p = ctx.eval_P(Real(s));
      Real rhs_log =
          Real(2 * n + 1) * log(Real(s)) - Real(n) * Real(n) * Real(n) / (3 * Real(s) * Real(s));
      if (!(p.sign == +1 && p.logmag < rhs_log)) ok = false;
    }
  }

  ThresholdConstants tc = solve_c0(cfg);
  for (long n : {10L, 20L, 50L}) {
    auto dlog = [&](const Real& s) {
      return 4 * Real(n) / s + 4 * Real(n) * Real(n) * Real(n) / (3 * s * s * s) - 2 * tc.sigma;
    };
    Real lo{"0.5"}, hi = Real(1000 * n);
    for (int it = 0; it < 300; ++it) {
      Real mid = (lo + hi) / 2;
      (dlog(mid) > 0 ? lo : hi) = mid;
    }
    Real smax = (lo + hi) / 2;
    if (!(abs_real(smax - tc.c0 * n) <= Real("0.01") * tc.c0 * n)) ok = false;
  }
  verdict(9, "proof inequalities", ok);
}

TEST_CASE("criterion 10: deterministic reports") {
  std::string dir = "/tmp/cyv_acceptance";
  REQUIRE(std::system(("mkdir -p " + dir).c_str()) == 0);
  {
    std::ofstream spec(dir + "/spec.json");
    spec << R"({"spectrum": {"kind": "integer-line"},
                "coefficients": {"kind": "exp-cos", "a": 1.0}})";
  }
  bool ok = true;
  for (const char* fmt : {"json", "csv"}) {
    std::string base = " sweep --spec " + dir + "/spec.json --k -1,0,1 --n 4..6 --routes both";
    int rc1 = 0, rc2 = 0;
    run_cli(base + " --format " + fmt + " --out " + dir + "/r1." + fmt, &rc1);
    run_cli(base + " --format " + fmt + " --out " + dir + "/r2." + fmt, &rc2);
    ok = ok && rc1 == 0 && rc2 == 0;
    int cmp = std::system(("cmp -s " + dir + "/r1." + fmt + " " + dir + "/r2." + fmt).c_str());
    ok = ok && WEXITSTATUS(cmp) == 0;
  }
  verdict(10, "determinism", ok);
}
