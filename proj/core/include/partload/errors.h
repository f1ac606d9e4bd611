#pragma once

#include <stdexcept>
#include <string>

namespace partload {

// Coarse failure categories. The CLI maps these onto process exit codes.
enum class ErrorKind {
  kInvalidInput,      // malformed document, referential or domain violation
  kBudgetViolation,   // a load set exceeds its storage budget
  kInstanceTooLarge,  // exact enumeration refused
  kModeUnsupported,   // pipelined evaluation over prefix tokenization
  kIo,                // file system failure
  kCalibration,       // sample too small or timer too coarse
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace partload
