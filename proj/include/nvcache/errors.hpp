#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace nvcache {

// Error families; the CLI maps them onto exit codes (parse=2, model
// range=3, infeasible=4).
enum class ErrorKind { Parse, ModelRange, Infeasible };

// Carries a stable machine-readable code (e.g. "MissingKey", "OutOfRange")
// next to the human-readable detail.
class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, std::string code, const std::string& detail)
      : std::runtime_error(code + ": " + detail),
        kind_(kind),
        code_(std::move(code)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& code() const noexcept { return code_; }

private:
  ErrorKind kind_;
  std::string code_;
};

}  // namespace nvcache
