// cyv — batch runner for the cyclicity criterion machinery:
//   sweep      rho^2 / bound sweeps over (k, n) grids, JSON or CSV reports
//   constants  the threshold constants c0 and sigma
//   theorem3   decay-hypothesis check on a coefficient sequence
//   bump-demo  the bump-function non-cyclicity demonstration

#include "cyv/derivative.hpp"
#include "cyv/errors.hpp"
#include "cyv/sweep.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

using namespace cyv;

// "0,1,2" and "4..12" (inclusive), possibly mixed: "0,2..5,9".
std::vector<long> parse_index_list(const std::string& text) {
  std::vector<long> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t comma = text.find(',', pos);
    std::string item = text.substr(pos, comma == std::string::npos ? comma : comma - pos);
    std::size_t dots = item.find("..");
    if (dots == std::string::npos) {
      out.push_back(std::stol(item));
    } else {
      long lo = std::stol(item.substr(0, dots));
      long hi = std::stol(item.substr(dots + 2));
      if (hi < lo) throw std::invalid_argument("descending range: " + item);
      for (long v = lo; v <= hi; ++v) out.push_back(v);
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (out.empty()) throw std::invalid_argument("empty index list");
  return out;
}

int write_or_print(const std::string& path, const std::string& payload) {
  if (path.empty()) {
    std::cout << payload;
    return 0;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "cannot open output file: " << path << "\n";
    return 2;
  }
  out << payload;
  return 0;
}

int cmd_sweep(const std::string& spec_path, const std::string& k_text, const std::string& n_text,
              const std::string& routes, const std::string& format, const std::string& out_path,
              unsigned precision_bits, int workers, bool strict, bool timings) {
  RunConfig cfg;
  cfg.spec_path = spec_path;
  cfg.out_path = out_path;
  cfg.workers = workers;
  cfg.strict = strict;
  cfg.timings = timings;
  if (precision_bits) cfg.precision_bits = precision_bits;
  try {
    cfg.k_list = parse_index_list(k_text);
    cfg.n_list = parse_index_list(n_text);
  } catch (const std::exception& e) {
    std::cerr << "bad index list: " << e.what() << "\n";
    return 2;
  }
  if (routes == "kmatrix")
    cfg.routes = RunConfig::Routes::KMatrix;
  else if (routes == "gram")
    cfg.routes = RunConfig::Routes::Gram;
  else if (routes == "both")
    cfg.routes = RunConfig::Routes::Both;
  else {
    std::cerr << "routes must be kmatrix | gram | both\n";
    return 2;
  }
  cfg.format = (format == "csv") ? RunConfig::Format::Csv : RunConfig::Format::Json;

  Problem problem;
  try {
    problem = load_problem(spec_path, cfg.precision_bits);
    cfg.validate();
  } catch (const std::exception& e) {
    std::cerr << "spec error: " << e.what() << "\n";
    return 2;
  }

  SweepResult result;
  try {
    result = run_sweep(problem, cfg);
  } catch (const Error& e) {
    std::cerr << "numerical failure: " << e.code() << ": " << e.what() << "\n";
    return 3;
  }

  std::string payload = cfg.format == RunConfig::Format::Csv ? sweep_report_csv(result, cfg)
                                                             : sweep_report_json(result, cfg);
  int rc = write_or_print(cfg.out_path, payload);
  if (rc != 0) return rc;
  if (strict && result.any_error) return 3;
  return 0;
}

int cmd_constants(unsigned precision_bits) {
  PrecisionConfig cfg;
  if (precision_bits) cfg.mantissa_bits = precision_bits;
  PrecisionScope scope(cfg);
  ThresholdConstants tc = solve_c0(cfg);
  std::cout << "c0       = " << to_decimal_string(tc.c0, 30) << "\n";
  std::cout << "sigma    = " << to_decimal_string(tc.sigma, 30) << "\n";
  std::cout << "residual = " << to_decimal_string(tc.residual, 6) << "\n";
  return 0;
}

int cmd_theorem3(const std::string& spec_path, long kmax, unsigned precision_bits) {
  Problem problem;
  try {
    problem = load_problem(spec_path,
                           precision_bits ? std::optional<unsigned>(precision_bits)
                                          : std::nullopt);
  } catch (const std::exception& e) {
    std::cerr << "spec error: " << e.what() << "\n";
    return 2;
  }
  PrecisionScope scope(problem.precision);
  try {
    Theorem3Report rep = theorem3_check(problem.coeffs, kmax, problem.precision);
    std::cout << "C     = " << to_decimal_string(rep.C_fit, 12) << "\n";
    std::cout << "delta = " << to_decimal_string(rep.delta_fit, 12) << "\n";
    std::cout << "sigma = " << to_decimal_string(rep.sigma, 12) << "\n";
    std::cout << "nonzero coefficients: yes (|k| <= " << rep.kmax << ")\n";
    if (rep.satisfied)
      std::cout << "verdict: hypothesis satisfied on sampled range (delta > sigma)\n";
    else
      std::cout << "verdict: hypothesis not satisfied (delta <= sigma)\n";
    return 0;
  } catch (const ZeroCoefficient& e) {
    std::cout << "verdict: hypothesis not satisfied (zero coefficient at k = " << e.index
              << ")\n";
    return 0;
  } catch (const Error& e) {
    std::cerr << "numerical failure: " << e.code() << ": " << e.what() << "\n";
    return 3;
  }
}

int cmd_bump_demo(double radius, long nmax, long kmax, long grid_n, unsigned precision_bits,
                  const std::string& out_path) {
  PrecisionConfig cfg;
  if (precision_bits) cfg.mantissa_bits = precision_bits;
  PrecisionScope scope(cfg);
  try {
    BumpDemoReport rep = bump_noncyclicity_demo(Real(radius), kmax, nmax, cfg, grid_n);
    std::ostringstream out;
    out << "bump radius fraction = " << radius << ", grid N = " << rep.grid_n
        << ", kmax = " << rep.kmax << "\n";
    out << "transform zero: lambda0 = " << to_decimal_string(rep.lambda0, 30) << "\n";
    out << "|Phi(lambda0)| = " << to_decimal_string(rep.phi_at_lambda0, 6) << "\n";
    out << "n,rho2_gram,rho2_kmatrix\n";
    for (const auto& row : rep.rho2_rows)
      out << row.n << ',' << to_decimal_string(row.rho2_gram) << ','
          << to_decimal_string(row.rho2_k) << "\n";
    out << "min rho2 (gram) over n: " << to_decimal_string(rep.min_rho2_gram) << "\n";
    return write_or_print(out_path, out.str());
  } catch (const Error& e) {
    std::cerr << "numerical failure: " << e.code() << ": " << e.what() << "\n";
    return 3;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cyclicity criterion toolkit"};
  app.require_subcommand(1);

  // sweep
  auto* sweep = app.add_subcommand("sweep", "rho^2 sweep over a (k, n) grid");
  std::string spec_path, k_text, n_text;
  std::string routes = "both", format = "json", out_path;
  unsigned precision_bits = 0;
  int workers = 1;
  bool strict = false, timings = false;
  sweep->add_option("--spec", spec_path, "problem spec JSON file")->required();
  sweep->add_option("--k", k_text, "target indices, e.g. 0,1 or -2..2")->required();
  sweep->add_option("--n", n_text, "window parameters, e.g. 4..12")->required();
  sweep->add_option("--routes", routes, "kmatrix | gram | both (default both)");
  sweep->add_option("--format", format, "json | csv (default json)");
  sweep->add_option("--out", out_path, "output file (default stdout)");
  sweep->add_option("--precision", precision_bits, "mantissa bits override");
  sweep->add_option("--workers", workers, "parallel workers over n (default 1)");
  sweep->add_flag("--strict", strict, "exit 3 when any cell fails");
  sweep->add_flag("--timings", timings, "record wall times (breaks byte reproducibility)");

  // constants
  auto* constants = app.add_subcommand("constants", "print c0 and sigma");
  unsigned const_bits = 0;
  constants->add_option("--precision", const_bits, "mantissa bits (default 256)");

  // theorem3
  auto* theorem3 = app.add_subcommand("theorem3", "decay-hypothesis check");
  std::string t3_spec;
  long t3_kmax = 20;
  unsigned t3_bits = 0;
  theorem3->add_option("--spec", t3_spec, "problem spec JSON file")->required();
  theorem3->add_option("--kmax", t3_kmax, "sampled coefficient range (default 20)");
  theorem3->add_option("--precision", t3_bits, "mantissa bits override");

  // bump-demo
  auto* bump = app.add_subcommand("bump-demo", "bump-function non-cyclicity demonstration");
  double radius = 0.9;
  long nmax = 8, b_kmax = 256, b_grid = 0;
  unsigned b_bits = 0;
  std::string b_out;
  bump->add_option("--radius", radius, "support radius fraction of pi (default 0.9)");
  bump->add_option("--nmax", nmax, "largest window parameter (default 8)");
  bump->add_option("--kmax", b_kmax, "coefficient range (default 256)");
  bump->add_option("--grid", b_grid, "grid size, power of two (default 4*kmax)");
  bump->add_option("--precision", b_bits, "mantissa bits (default 256)");
  bump->add_option("--out", b_out, "output file (default stdout)");

  CLI11_PARSE(app, argc, argv);

  if (sweep->parsed())
    return cmd_sweep(spec_path, k_text, n_text, routes, format, out_path, precision_bits,
                     workers, strict, timings);
  if (constants->parsed()) return cmd_constants(const_bits);
  if (theorem3->parsed()) return cmd_theorem3(t3_spec, t3_kmax, t3_bits);
  if (bump->parsed()) return cmd_bump_demo(radius, nmax, b_kmax, b_grid, b_bits, b_out);
  return 1;
}
