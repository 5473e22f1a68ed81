#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace selfsim {

enum class ErrorKind {
  MalformedSpec,
  ClosureBudgetExceeded,
  DepthExceeded,
  SingularSystem,
  InexactInput,
  InexactMeasure,
  CanonicalizationFailed,
  DegreeNonZero,
  MalformedExpression,
};

std::string_view error_name(ErrorKind kind);

/// Engine failure. The kind names the failing case; what() carries detail.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string &detail)
      : std::runtime_error(std::string(error_name(kind)) + ": " + detail),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace selfsim
