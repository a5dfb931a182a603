#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace uniflow {

enum class ErrorKind {
  InvalidDimension,
  InvalidArgument,
  NotInSpan,
  NotSemisimple,
  NotNilpotent,
  ZeroElement,
  EigenAlignmentFailed,
  NonzeroSl2Part,
  OutOfChartDomain,
  PreconditionViolated,
  NoCrossing,
  DegenerateInterval,
  DomainExceeded,
  OutOfRange,
  NotHyperbolic,
  SampleBudgetExceeded,
  PerturbationTooLarge,
  NotInChart,
  BudgetExceeded,
  WrapDetected,
  ConfigParse,
  UnknownSuite,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries a machine-readable kind so the
/// CLI can map it onto an exit code.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace uniflow
