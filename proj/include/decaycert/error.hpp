#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace decaycert {

// Runtime failure with a module-qualified code, e.g. "kernels.NonFinite".
// The code is stable and machine-checkable; what() carries the details.
class error : public std::runtime_error {
 public:
  error(std::string code, const std::string& detail)
      : std::runtime_error(code + ": " + detail), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

}  // namespace decaycert
