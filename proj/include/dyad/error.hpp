#pragma once

#include <stdexcept>
#include <string>

namespace dyad {

// Error categories double as CLI exit codes.
enum class ErrorKind {
  InvalidArgument = 1,
  Infeasible = 2,
  Parse = 3,
  SizeCap = 4,
  NonConvergence = 5,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }
  int exit_code() const noexcept { return static_cast<int>(kind_); }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

inline void require(bool cond, const std::string& what) {
  if (!cond) fail(ErrorKind::InvalidArgument, what);
}

}  // namespace dyad
