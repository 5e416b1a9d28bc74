#include "bpslab/errors.hpp"

namespace bpslab {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::input: return "input";
    case ErrorKind::range: return "range";
    case ErrorKind::domain: return "domain";
    case ErrorKind::resource: return "resource";
    case ErrorKind::numeric: return "numeric";
    case ErrorKind::io: return "io";
  }
  return "unknown";
}

}  // namespace bpslab
