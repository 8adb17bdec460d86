#pragma once

#include <stdexcept>
#include <string>

namespace ws {

enum class ErrorCode {
  Pole,
  Overflow,
  Domain,
  Convergence,
  Validity,
  UnsupportedDegenerate,
  InsufficientOrder,
  Quadrature,
  Extrapolation,
  InvalidArgument,
  Parse,
};

const char* to_string(ErrorCode code);

// All library failures are reported through this exception.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what, int terms_used = 0)
      : std::runtime_error(what), code_(code), terms_used_(terms_used) {}

  ErrorCode code() const noexcept { return code_; }
  int terms_used() const noexcept { return terms_used_; }

 private:
  ErrorCode code_;
  int terms_used_;
};

}  // namespace ws
