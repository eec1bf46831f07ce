#pragma once

#include <stdexcept>
#include <string>

namespace kspm {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct FireOnStableColumn : Error {
  explicit FireOnStableColumn(const std::string& what) : Error(what) {}
};

struct NotAFixedPoint : Error {
  explicit NotAFixedPoint(const std::string& what) : Error(what) {}
};

struct PreconditionUnverifiable : Error {
  explicit PreconditionUnverifiable(const std::string& what) : Error(what) {}
};

struct EmptyPeakList : Error {
  explicit EmptyPeakList(const std::string& what) : Error(what) {}
};

struct UnknownState : Error {
  explicit UnknownState(const std::string& what) : Error(what) {}
};

struct IntervalTooFarLeft : Error {
  explicit IntervalTooFarLeft(const std::string& what) : Error(what) {}
};

struct BudgetExceeded : Error {
  explicit BudgetExceeded(const std::string& what) : Error(what) {}
};

struct NonIntegralStep : Error {
  explicit NonIntegralStep(const std::string& what) : Error(what) {}
};

struct InvalidSpec : Error {
  explicit InvalidSpec(const std::string& what) : Error(what) {}
};

}  // namespace kspm
