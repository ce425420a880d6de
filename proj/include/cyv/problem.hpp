#pragma once

#include "cyv/coefficients.hpp"
#include "cyv/spectrum.hpp"

#include <optional>
#include <string>

namespace cyv {

/// A problem instance as described by a spec file: spectrum, coefficient
/// sequence, precision knobs.
struct Problem {
  Spectrum spectrum = Spectrum::integer_line();
  CoefficientSequence coeffs = CoefficientSequence::geometric(Real("0.5"));
  PrecisionConfig precision;
};

/// Parse a problem JSON document. Field names are fixed; unknown fields are
/// rejected. Throws SpecParse on any violation.
///
/// {
///   "spectrum":     {"kind": "integer-line"}
///                 | {"kind": "affine", "a": 2.0, "b": 1.0}
///                 | {"kind": "table", "values": [-1.5, 0.0, 2.0]},
///   "coefficients": {"kind": "geometric", "ratio": 0.5,
///                    "phase_rule": "none"|"alternating"|"random",
///                    "phase_seed": 1}
///                 | {"kind": "exp-cos", "a": 1.0}
///                 | {"kind": "table", "j_start": -2, "re": [...], "im": [...]}
///                 | {"kind": "quadrature", "grid": [...], "kmax": 64},
///   "precision":    {"mantissa_bits": 256, "tail_rel_tol": 1e-30,
///                    "solve_rel_tol": 1e-25}
/// }
/// `bits_override` replaces the spec's mantissa_bits before any value is
/// materialized, so stored coefficients carry the same precision the run
/// will use.
Problem parse_problem_json(const std::string& text,
                           std::optional<unsigned> bits_override = std::nullopt);

/// Reads the file and parses it.
Problem load_problem(const std::string& path,
                     std::optional<unsigned> bits_override = std::nullopt);

}  // namespace cyv
