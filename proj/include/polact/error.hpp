#pragma once

#include <stdexcept>
#include <string>

namespace polact {

enum class ErrorCode {
  InvalidArgument = 1,
  Parse,
  ModeMismatch,
  Domain,
  Invariant,
  Undecided,
  Index,
};

// Single exception type for the library; the code is what the C API reports.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, ErrorCode code, const std::string& what) {
  if (!cond) fail(code, what);
}

}  // namespace polact
