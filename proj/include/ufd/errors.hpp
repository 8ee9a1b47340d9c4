#pragma once
/// Error taxonomy shared by the whole library.
///
/// Every failure surfaces as an ufd::Error carrying a kind; the command-line
/// driver maps kinds to process exit codes (invalid configuration -> 2,
/// solver failure -> 3).

#include <stdexcept>
#include <string>

namespace ufd {

enum class ErrorKind {
  /// Invalid parameters, shapes, unsupported exponents, malformed input files.
  Config,
  /// Newton non-convergence, step-rejection overrun, degenerate transport steps.
  SolverFailure,
  /// Filesystem problems while writing results.
  Io,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail_config(const std::string& msg) {
  throw Error(ErrorKind::Config, msg);
}

[[noreturn]] inline void fail_solver(const std::string& msg) {
  throw Error(ErrorKind::SolverFailure, msg);
}

[[noreturn]] inline void fail_io(const std::string& msg) {
  throw Error(ErrorKind::Io, msg);
}

/// Throw a configuration error unless `cond` holds.
inline void require_config(bool cond, const std::string& msg) {
  if (!cond) fail_config(msg);
}

}  // namespace ufd
