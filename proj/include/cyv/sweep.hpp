#pragma once

#include "cyv/problem.hpp"

#include <optional>
#include <string>
#include <vector>

namespace cyv {

/// Batch run configuration (one sweep invocation).
struct RunConfig {
  std::string spec_path;
  std::vector<long> k_list;
  std::vector<long> n_list;
  enum class Routes { KMatrix, Gram, Both } routes = Routes::Both;
  enum class Format { Json, Csv } format = Format::Json;
  std::string out_path;
  std::optional<unsigned> precision_bits;  // override of the spec's setting
  int workers = 1;
  bool strict = false;
  bool timings = false;  // off by default: reports stay byte-reproducible

  /// Throws std::invalid_argument on violated invariants
  /// (|k| < min(n_list), nonempty lists, workers >= 1).
  void validate() const;
};

/// One (k, n, route) cell. Optional fields are route-dependent; `error`
/// carries the module error code when the cell failed.
struct SweepRecord {
  long k = 0;
  long n = 0;
  std::string route;  // "kmatrix" | "gram"
  std::optional<Real> rho2, q, bound_t2, bound_refined, k_kk;
  std::optional<Real> tail_cert, solve_residual, route_delta;
  bool condition1_failed = false;
  bool relabeled = false;
  std::string error;
  double wall_time_s = 0;
};

struct SweepResult {
  std::vector<SweepRecord> records;  // ordered by (k, n, route)
  bool any_error = false;
};

SweepResult run_sweep(const Problem& problem, const RunConfig& cfg);

/// Serializers share one number-formatting path (decimal strings, 25
/// significant digits), so JSON and CSV carry identical numeric strings.
std::string sweep_report_json(const SweepResult& result, const RunConfig& cfg);
std::string sweep_report_csv(const SweepResult& result, const RunConfig& cfg);

}  // namespace cyv
