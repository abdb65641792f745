#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace treediam {

enum class ErrorKind {
  InvalidAddress,
  Parse,
  OutOfRange,
  BudgetExceeded,
  UnboundedNotMaterializable,
  VertexNotInSubdiamond,
  VertexNotInGraph,
  NonInjectiveMap,
  TrivialSource,
  TargetTooLarge,
  NoIncumbent,
  EmptyRegion,
  NoGeneration,
  Precondition,
};

std::string_view to_string(ErrorKind kind) noexcept;

// All library failures are reported through this type; `kind()` lets callers
// (the CLI in particular) map failures onto exit codes without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  // Budget-style failures: the input is fine but too large for the configured limits.
  bool is_budget() const noexcept {
    return kind_ == ErrorKind::BudgetExceeded || kind_ == ErrorKind::TargetTooLarge ||
           kind_ == ErrorKind::NoIncumbent;
  }

 private:
  ErrorKind kind_;
};

}  // namespace treediam
