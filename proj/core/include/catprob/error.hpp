#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace catprob {

/// Library-wide exception. `code()` is a stable machine-readable identifier
/// such as "PartitionError" or "RowNotNormalized"; `message()` explains the
/// particular failure. The CLI prints errors as "error[<code>]: <message>".
class Error : public std::runtime_error {
 public:
  Error(std::string code, std::string message)
      : std::runtime_error(code + ": " + message),
        code_(std::move(code)),
        message_(std::move(message)) {}

  const std::string& code() const noexcept { return code_; }
  const std::string& message() const noexcept { return message_; }

 private:
  std::string code_;
  std::string message_;
};

}  // namespace catprob
