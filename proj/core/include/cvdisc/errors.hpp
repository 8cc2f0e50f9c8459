#pragma once

#include <stdexcept>
#include <string>

namespace cvdisc {

enum class ErrorKind {
  InvalidEnergy,
  InvalidPartition,
  Dimension,
  Numeric,
  Capacity,
  Unsupported,
  Comparability,
  InvalidArgument,
};

const char* to_string(ErrorKind kind);

// Base class for every error thrown by the library. The kind lets front ends
// map failures to exit codes without a chain of catch clauses.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

#define CVDISC_DEFINE_ERROR(Name, Kind)                                      \
  class Name : public Error {                                                \
   public:                                                                   \
    explicit Name(const std::string& what) : Error(ErrorKind::Kind, what) {} \
  };

CVDISC_DEFINE_ERROR(InvalidEnergyError, InvalidEnergy)
CVDISC_DEFINE_ERROR(InvalidPartitionError, InvalidPartition)
CVDISC_DEFINE_ERROR(DimensionError, Dimension)
CVDISC_DEFINE_ERROR(NumericError, Numeric)
CVDISC_DEFINE_ERROR(CapacityError, Capacity)
CVDISC_DEFINE_ERROR(UnsupportedError, Unsupported)
CVDISC_DEFINE_ERROR(ComparabilityError, Comparability)
CVDISC_DEFINE_ERROR(InvalidArgumentError, InvalidArgument)

#undef CVDISC_DEFINE_ERROR

}  // namespace cvdisc
