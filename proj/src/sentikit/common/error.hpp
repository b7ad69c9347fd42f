#pragma once

#include <stdexcept>
#include <string>

namespace sentikit {

/// Failure categories shared by every module. The C API maps each one onto
/// a status code, and the CLI maps them onto exit codes.
enum class ErrorKind {
  kInvalidArgument,  // precondition violated by the caller
  kParse,            // malformed input file or request body
  kNotFound,         // unknown id
  kConflict,         // state does not admit the mutation
  kIo,               // filesystem failure
  kNumeric,          // non-finite value during training
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void throw_error(ErrorKind kind, const std::string& what);

inline void require(bool condition, const std::string& what) {
  if (!condition) throw_error(ErrorKind::kInvalidArgument, what);
}

const char* to_string(ErrorKind kind);

}  // namespace sentikit
