#include "cvdisc/errors.hpp"

namespace cvdisc {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidEnergy: return "invalid-energy";
    case ErrorKind::InvalidPartition: return "invalid-partition";
    case ErrorKind::Dimension: return "dimension";
    case ErrorKind::Numeric: return "numeric";
    case ErrorKind::Capacity: return "capacity";
    case ErrorKind::Unsupported: return "unsupported";
    case ErrorKind::Comparability: return "comparability";
    case ErrorKind::InvalidArgument: return "invalid-argument";
  }
  return "unknown";
}

}  // namespace cvdisc
