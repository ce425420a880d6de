#include "cyv/sweep.hpp"

#include "cyv/cyclicity.hpp"
#include "cyv/errors.hpp"
#include "cyv/gram.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <sstream>
#include <thread>

namespace cyv {

void RunConfig::validate() const {
  if (k_list.empty()) throw std::invalid_argument("sweep: k list must be nonempty");
  if (n_list.empty()) throw std::invalid_argument("sweep: n list must be nonempty");
  long n_min = *std::min_element(n_list.begin(), n_list.end());
  for (long n : n_list)
    if (n < 1) throw std::invalid_argument("sweep: window parameters must be >= 1");
  for (long k : k_list)
    if (std::labs(k) >= n_min)
      throw std::invalid_argument("sweep: every k must satisfy |k| < min(n)");
  if (workers < 1) throw std::invalid_argument("sweep: workers must be >= 1");
}

namespace {

long relabel_scan_radius(const Problem& problem, long n) {
  long r = std::max<long>(256, 16 * n);
  if (auto jr = problem.spectrum.table_radius(); jr && *jr < r) r = *jr;
  if (auto sr = problem.coeffs.support_radius(); sr && *sr < r) r = *sr;
  return r;
}

struct CellTimer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double elapsed() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
};

std::vector<SweepRecord> process_window(const Problem& problem, const RunConfig& cfg, long n) {
  const bool want_k = cfg.routes != RunConfig::Routes::Gram;
  const bool want_g = cfg.routes != RunConfig::Routes::KMatrix;
  const PrecisionConfig& pcfg = problem.precision;

  std::optional<GramSystem> gs;
  std::string gram_err;
  if (want_g) {
    try {
      gs = build_gram(problem.spectrum, problem.coeffs, n, pcfg);
    } catch (const Error& e) {
      gram_err = e.code();
    }
  }

  std::optional<KMatrix> K;
  std::optional<RelabelResult> rel;
  bool relabeled = false;
  std::string k_err;
  if (want_k) {
    try {
      bool zero_in_window = false;
      for (long i = -n; i <= n && !zero_in_window; ++i)
        zero_in_window = problem.spectrum.in_range(i) && problem.coeffs(i).is_zero();
      if (zero_in_window) {
        rel = relabel_support(problem.spectrum, problem.coeffs, relabel_scan_radius(problem, n));
        relabeled = !rel->identity;
      }
      const Spectrum& sp = rel ? rel->spectrum : problem.spectrum;
      const CoefficientSequence& co = rel ? rel->coeffs : problem.coeffs;
      NodalContext ctx(sp, n);
      K = build_K(ctx, co, pcfg);
    } catch (const Error& e) {
      k_err = e.code();
    } catch (const std::invalid_argument&) {
      k_err = "IndexOutOfTable";  // window exceeds a finite table
    }
  }

  std::vector<SweepRecord> out;
  for (long k : cfg.k_list) {
    bool c1_fail = problem.coeffs(k).is_zero();
    std::optional<Real> rho2_k, rho2_g;

    if (want_k) {
      CellTimer timer;
      SweepRecord r;
      r.k = k;
      r.n = n;
      r.route = "kmatrix";
      r.condition1_failed = c1_fail;
      r.relabeled = relabeled;
      if (!k_err.empty()) {
        r.error = k_err;
      } else if (c1_fail) {
        r.error = "ZeroCoefficient";  // e_k has no image in the relabeled basis
      } else {
        long pos = k;
        bool ok = true;
        if (relabeled) {
          auto p = rel->position_of(k);
          if (!p) {
            r.error = "ZeroCoefficient";
            ok = false;
          } else {
            pos = *p;
          }
        }
        if (ok && std::labs(pos) >= n) {
          r.error = "IndexOutOfWindow";
          ok = false;
        }
        if (ok) {
          try {
            CriterionReport rep = criterion_value(*K, pos, pcfg);
            r.rho2 = rep.rho2;
            r.q = rep.q;
            r.bound_t2 = rep.bound_t2;
            r.bound_refined = rep.bound_refined;
            r.k_kk = rep.k_kk;
            r.tail_cert = rep.tail_bound_max;
            r.solve_residual = rep.solve_residual;
            rho2_k = rep.rho2;
          } catch (const Error& e) {
            r.error = e.code();
          }
        }
      }
      if (cfg.timings) r.wall_time_s = timer.elapsed();
      out.push_back(std::move(r));
    }

    if (want_g) {
      CellTimer timer;
      SweepRecord r;
      r.k = k;
      r.n = n;
      r.route = "gram";
      r.condition1_failed = c1_fail;
      if (!gram_err.empty()) {
        r.error = gram_err;
      } else {
        try {
          GramRho2 rep = rho2_via_gram(*gs, k, pcfg);
          r.rho2 = rep.rho2;
          r.q = rep.q;
          r.tail_cert = gs->entry_trunc_bound_max;
          r.solve_residual = rep.solve_residual;
          rho2_g = rep.rho2;
        } catch (const Error& e) {
          r.error = e.code();
        }
      }
      if (cfg.timings) r.wall_time_s = timer.elapsed();
      out.push_back(std::move(r));
    }

    if (rho2_k && rho2_g) {
      Real d = *rho2_k - *rho2_g;
      if (d < 0) d = -d;
      for (auto it = out.rbegin(); it != out.rend() && (it->k == k && it->n == n); ++it)
        it->route_delta = d;
    }
  }
  return out;
}

}  // namespace

SweepResult run_sweep(const Problem& problem, const RunConfig& cfg) {
  cfg.validate();
  PrecisionConfig pcfg = problem.precision;
  if (cfg.precision_bits) pcfg.mantissa_bits = *cfg.precision_bits;
  pcfg.validate();
  Problem prob = problem;
  prob.precision = pcfg;

  PrecisionScope scope(pcfg);

  std::vector<std::vector<SweepRecord>> per_n(cfg.n_list.size());

  const int workers = std::min<int>(cfg.workers, static_cast<int>(cfg.n_list.size()));
  if (workers <= 1) {
    for (std::size_t t = 0; t < cfg.n_list.size(); ++t)
      per_n[t] = process_window(prob, cfg, cfg.n_list[t]);
  } else {
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
      for (;;) {
        std::size_t t = next.fetch_add(1);
        if (t >= cfg.n_list.size()) return;
        per_n[t] = process_window(prob, cfg, cfg.n_list[t]);
      }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  SweepResult result;
  for (auto& recs : per_n)
    for (auto& r : recs) result.records.push_back(std::move(r));
  std::sort(result.records.begin(), result.records.end(),
            [](const SweepRecord& a, const SweepRecord& b) {
              if (a.k != b.k) return a.k < b.k;
              if (a.n != b.n) return a.n < b.n;
              return a.route < b.route;
            });
  for (const auto& r : result.records)
    if (!r.error.empty()) result.any_error = true;
  return result;
}

namespace {

using nlohmann::ordered_json;

ordered_json opt_str(const std::optional<Real>& v) {
  if (!v) return nullptr;
  return to_decimal_string(*v);
}

std::string wall_time_str(double s) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", s);
  return buf;
}

const char* routes_name(RunConfig::Routes r) {
  switch (r) {
    case RunConfig::Routes::KMatrix:
      return "kmatrix";
    case RunConfig::Routes::Gram:
      return "gram";
    case RunConfig::Routes::Both:
      return "both";
  }
  return "?";
}

}  // namespace

std::string sweep_report_json(const SweepResult& result, const RunConfig& cfg) {
  ordered_json doc;
  ordered_json config;
  config["spec"] = cfg.spec_path;
  config["k"] = cfg.k_list;
  config["n"] = cfg.n_list;
  config["routes"] = routes_name(cfg.routes);
  config["precision_bits"] = cfg.precision_bits ? ordered_json(*cfg.precision_bits)
                                                : ordered_json(nullptr);
  config["workers"] = cfg.workers;
  config["strict"] = cfg.strict;
  doc["config"] = std::move(config);

  ordered_json records = ordered_json::array();
  for (const SweepRecord& r : result.records) {
    ordered_json rec;
    rec["k"] = r.k;
    rec["n"] = r.n;
    rec["route"] = r.route;
    rec["rho2"] = opt_str(r.rho2);
    rec["q"] = opt_str(r.q);
    rec["bound_t2"] = opt_str(r.bound_t2);
    rec["bound_refined"] = opt_str(r.bound_refined);
    rec["k_kk"] = opt_str(r.k_kk);
    rec["tail_cert"] = opt_str(r.tail_cert);
    rec["solve_residual"] = opt_str(r.solve_residual);
    rec["route_delta"] = opt_str(r.route_delta);
    rec["condition1_failed"] = r.condition1_failed;
    rec["relabeled"] = r.relabeled;
    rec["error"] = r.error;
    rec["wall_time"] = wall_time_str(r.wall_time_s);
    records.push_back(std::move(rec));
  }
  doc["records"] = std::move(records);
  doc["versions"] = ordered_json{{"spec_rev", "1"}};
  return doc.dump(1) + "\n";
}

std::string sweep_report_csv(const SweepResult& result, const RunConfig& cfg) {
  (void)cfg;
  std::ostringstream out;
  out << "k,n,route,rho2,q,bound_t2,bound_refined,k_kk,tail_cert,solve_residual,route_delta,"
         "condition1_failed,relabeled,error,wall_time\n";
  auto cell = [](const std::optional<Real>& v) { return v ? to_decimal_string(*v) : ""; };
  for (const SweepRecord& r : result.records) {
    out << r.k << ',' << r.n << ',' << r.route << ',' << cell(r.rho2) << ',' << cell(r.q) << ','
        << cell(r.bound_t2) << ',' << cell(r.bound_refined) << ',' << cell(r.k_kk) << ','
        << cell(r.tail_cert) << ',' << cell(r.solve_residual) << ',' << cell(r.route_delta)
        << ',' << (r.condition1_failed ? "true" : "false") << ','
        << (r.relabeled ? "true" : "false") << ',' << r.error << ',' << wall_time_str(r.wall_time_s) << '\n';
  }
  return out.str();
}

}  // namespace cyv
