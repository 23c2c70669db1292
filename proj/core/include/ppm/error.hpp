#pragma once

#include <stdexcept>
#include <string>

namespace ppm {

enum class ErrorKind {
  NegativeEntry,
  RowSumMismatch,
  ShapeMismatch,
  UnknownState,
  InvalidStateTree,
  IncompleteTree,
  InconsistentTree,
  SamePair,
  InvalidUsage,
  InvalidInterval,
  IncompatibleProportions,
  EmptyIntersection,
  ZeroDenominator,
  UnsupportedState,
  InstanceTooLarge,
  PreconditionViolated,
  EmptySolutionSet,
  Parse,
  InvalidConfig,
  InvalidTree,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace ppm
