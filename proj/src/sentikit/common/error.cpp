#include "sentikit/common/error.hpp"

namespace sentikit {

void throw_error(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidArgument: return "invalid argument";
    case ErrorKind::kParse: return "parse error";
    case ErrorKind::kNotFound: return "not found";
    case ErrorKind::kConflict: return "conflict";
    case ErrorKind::kIo: return "i/o error";
    case ErrorKind::kNumeric: return "numeric error";
  }
  return "unknown";
}

}  // namespace sentikit
