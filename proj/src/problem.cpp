#include "cyv/problem.hpp"

#include "cyv/derivative.hpp"
#include "cyv/errors.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace cyv {

namespace {

using nlohmann::json;

void reject_unknown(const json& obj, std::initializer_list<const char*> allowed,
                    const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const char* k : allowed)
      if (it.key() == k) ok = true;
    if (!ok) throw SpecParse("unknown field \"" + it.key() + "\" in " + where);
  }
}

const json& require(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw SpecParse("missing field \"" + std::string(key) + "\" in " + where);
  return *it;
}

Real real_from(const json& v, const std::string& where) {
  if (v.is_number_integer()) return Real(v.get<long long>());
  if (v.is_number_float()) return Real(v.get<double>());
  if (v.is_string()) {
    try {
      return Real(v.get<std::string>());
    } catch (const std::exception&) {
      throw SpecParse("unparsable number string in " + where);
    }
  }
  throw SpecParse("expected a number in " + where);
}

Spectrum parse_spectrum(const json& s) {
  if (!s.is_object()) throw SpecParse("\"spectrum\" must be an object");
  std::string kind = require(s, "kind", "spectrum").get<std::string>();
  if (kind == "integer-line") {
    reject_unknown(s, {"kind"}, "spectrum");
    return Spectrum::integer_line();
  }
  if (kind == "affine") {
    reject_unknown(s, {"kind", "a", "b"}, "spectrum");
    return Spectrum::affine(real_from(require(s, "a", "spectrum"), "spectrum.a"),
                            real_from(require(s, "b", "spectrum"), "spectrum.b"));
  }
  if (kind == "table") {
    reject_unknown(s, {"kind", "values"}, "spectrum");
    const json& arr = require(s, "values", "spectrum");
    if (!arr.is_array()) throw SpecParse("spectrum.values must be an array");
    std::vector<Real> values;
    values.reserve(arr.size());
    for (const auto& v : arr) values.push_back(real_from(v, "spectrum.values"));
    try {
      return Spectrum::table(std::move(values));
    } catch (const std::invalid_argument& e) {
      throw SpecParse(std::string("spectrum.values: ") + e.what());
    }
  }
  throw SpecParse("spectrum.kind must be one of integer-line | affine | table");
}

CoefficientSequence parse_coefficients(const json& c, const PrecisionConfig& cfg) {
  if (!c.is_object()) throw SpecParse("\"coefficients\" must be an object");
  std::string kind = require(c, "kind", "coefficients").get<std::string>();
  if (kind == "geometric") {
    reject_unknown(c, {"kind", "ratio", "phase_rule", "phase_seed"}, "coefficients");
    Real ratio = real_from(require(c, "ratio", "coefficients"), "coefficients.ratio");
    PhaseRule rule = PhaseRule::None;
    if (auto it = c.find("phase_rule"); it != c.end()) {
      std::string r = it->get<std::string>();
      if (r == "none")
        rule = PhaseRule::None;
      else if (r == "alternating")
        rule = PhaseRule::Alternating;
      else if (r == "random")
        rule = PhaseRule::Random;
      else
        throw SpecParse("coefficients.phase_rule must be none | alternating | random");
    }
    std::uint64_t seed = 0;
    if (auto it = c.find("phase_seed"); it != c.end()) seed = it->get<std::uint64_t>();
    try {
      return CoefficientSequence::geometric(std::move(ratio), rule, seed);
    } catch (const std::invalid_argument& e) {
      throw SpecParse(std::string("coefficients: ") + e.what());
    }
  }
  if (kind == "exp-cos") {
    reject_unknown(c, {"kind", "a"}, "coefficients");
    Real a = real_from(require(c, "a", "coefficients"), "coefficients.a");
    if (a == 0) throw SpecParse("coefficients.a must be nonzero");
    return expcos_coefficients(a);
  }
  if (kind == "table") {
    reject_unknown(c, {"kind", "j_start", "re", "im"}, "coefficients");
    long j_start = require(c, "j_start", "coefficients").get<long>();
    const json& re = require(c, "re", "coefficients");
    if (!re.is_array() || re.empty()) throw SpecParse("coefficients.re must be a nonempty array");
    const json* im = nullptr;
    if (auto it = c.find("im"); it != c.end()) {
      im = &*it;
      if (!im->is_array() || im->size() != re.size())
        throw SpecParse("coefficients.im must match re in length");
    }
    std::vector<Cx> values;
    values.reserve(re.size());
    for (std::size_t t = 0; t < re.size(); ++t) {
      Cx v{real_from(re[t], "coefficients.re"),
           im ? real_from((*im)[t], "coefficients.im") : Real(0)};
      values.push_back(std::move(v));
    }
    return CoefficientSequence::table(j_start, std::move(values));
  }
  if (kind == "quadrature") {
    reject_unknown(c, {"kind", "grid", "kmax"}, "coefficients");
    const json& arr = require(c, "grid", "coefficients");
    if (!arr.is_array()) throw SpecParse("coefficients.grid must be an array");
    std::vector<Real> grid;
    grid.reserve(arr.size());
    for (const auto& v : arr) grid.push_back(real_from(v, "coefficients.grid"));
    long kmax = require(c, "kmax", "coefficients").get<long>();
    try {
      return quadrature_coefficients(PeriodicFunctionSpec::sampled(std::move(grid)), kmax, cfg);
    } catch (const std::invalid_argument& e) {
      throw SpecParse(std::string("coefficients: ") + e.what());
    } catch (const GridTooCoarse& e) {
      throw SpecParse(std::string("coefficients: ") + e.what());
    }
  }
  throw SpecParse("coefficients.kind must be one of geometric | exp-cos | table | quadrature");
}

PrecisionConfig parse_precision(const json& p) {
  if (!p.is_object()) throw SpecParse("\"precision\" must be an object");
  reject_unknown(p, {"mantissa_bits", "tail_rel_tol", "solve_rel_tol"}, "precision");
  PrecisionConfig cfg;
  if (auto it = p.find("mantissa_bits"); it != p.end()) cfg.mantissa_bits = it->get<unsigned>();
  if (auto it = p.find("tail_rel_tol"); it != p.end()) cfg.tail_rel_tol = it->get<double>();
  if (auto it = p.find("solve_rel_tol"); it != p.end()) cfg.solve_rel_tol = it->get<double>();
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw SpecParse(std::string("precision: ") + e.what());
  }
  return cfg;
}

}  // namespace

Problem parse_problem_json(const std::string& text, std::optional<unsigned> bits_override) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SpecParse(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw SpecParse("top level must be an object");
  reject_unknown(doc, {"spectrum", "coefficients", "precision"}, "top level");

  Problem prob;
  if (auto it = doc.find("precision"); it != doc.end()) prob.precision = parse_precision(*it);
  if (bits_override) {
    prob.precision.mantissa_bits = *bits_override;
    prob.precision.validate();
  }

  // Values are materialized at the precision the run will use.
  PrecisionScope scope(prob.precision);
  prob.spectrum = parse_spectrum(require(doc, "spectrum", "top level"));
  prob.coeffs = parse_coefficients(require(doc, "coefficients", "top level"), prob.precision);
  return prob;
}

Problem load_problem(const std::string& path, std::optional<unsigned> bits_override) {
  std::ifstream in(path);
  if (!in) throw SpecParse("cannot open spec file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_problem_json(ss.str(), bits_override);
}

}  // namespace cyv
