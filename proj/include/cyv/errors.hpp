#pragma once

#include <stdexcept>
#include <string>

namespace cyv {

/// Base class for all domain errors. `code()` is a stable machine-readable
/// name that batch runs embed in per-cell records.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(what), code_(std::move(code)) {}
  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

struct IndexOutOfTable : Error {
  explicit IndexOutOfTable(const std::string& what) : Error("IndexOutOfTable", what) {}
};

struct IndexOutOfWindow : Error {
  explicit IndexOutOfWindow(const std::string& what) : Error("IndexOutOfWindow", what) {}
};

struct NodeCollision : Error {
  explicit NodeCollision(const std::string& what) : Error("NodeCollision", what) {}
};

struct DivergentTail : Error {
  explicit DivergentTail(const std::string& what) : Error("DivergentTail", what) {}
};

struct ToleranceUnreachable : Error {
  explicit ToleranceUnreachable(const std::string& what) : Error("ToleranceUnreachable", what) {}
};

struct ZeroCoefficientInWindow : Error {
  ZeroCoefficientInWindow(long index, const std::string& what)
      : Error("ZeroCoefficientInWindow", what), index(index) {}
  long index;
};

struct SolveFailed : Error {
  explicit SolveFailed(const std::string& what) : Error("SolveFailed", what) {}
};

struct NotPSD : Error {
  explicit NotPSD(const std::string& what) : Error("NotPSD", what) {}
};

/// Carries a condition-number estimate of the offending Gram matrix.
struct SingularGram : Error {
  SingularGram(const std::string& what, double cond_estimate)
      : Error("SingularGram", what), cond_estimate(cond_estimate) {}
  double cond_estimate;
};

struct EmptySupport : Error {
  explicit EmptySupport(const std::string& what) : Error("EmptySupport", what) {}
};

struct GridTooCoarse : Error {
  explicit GridTooCoarse(const std::string& what) : Error("GridTooCoarse", what) {}
};

struct NoZeroFound : Error {
  explicit NoZeroFound(const std::string& what) : Error("NoZeroFound", what) {}
};

struct ZeroCoefficient : Error {
  ZeroCoefficient(long index, const std::string& what)
      : Error("ZeroCoefficient", what), index(index) {}
  long index;
};

struct SpecParse : Error {
  explicit SpecParse(const std::string& what) : Error("SpecParse", what) {}
};

}  // namespace cyv
