#pragma once

#include <stdexcept>
#include <string>

namespace elliptic_oam {

enum class ErrorCode {
  invalid_argument,   // precondition violated by the caller
  invalid_mode,       // (p, m, parity) or LG index outside the admissible set
  non_symmetrizable,  // tridiagonal with sub[i]*sup[i] < 0
  numerical_failure,  // solver did not converge / degenerate spectrum
  unnormalized_state,
  grid_mismatch,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace elliptic_oam
