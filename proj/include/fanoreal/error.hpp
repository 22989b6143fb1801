#pragma once

#include <stdexcept>
#include <string>

namespace fanoreal {

// Failure categories map one-to-one onto CLI exit codes.
enum class ErrorKind {
  InvalidInput,   // malformed or out-of-contract input
  Inconclusive,   // the computation could not decide (NotGeneric, BudgetExceeded)
  Internal        // an invariant the theory guarantees was violated
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string name, const std::string& what)
      : std::runtime_error(what), kind_(kind), name_(std::move(name)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& name() const noexcept { return name_; }

 private:
  ErrorKind kind_;
  std::string name_;
};

#define FANOREAL_DEFINE_ERROR(Type, Kind)                                  \
  class Type : public Error {                                              \
   public:                                                                 \
    explicit Type(const std::string& what)                                 \
        : Error(ErrorKind::Kind, #Type, what) {}                           \
  };

FANOREAL_DEFINE_ERROR(InvalidInput, InvalidInput)
FANOREAL_DEFINE_ERROR(NotGeneric, Inconclusive)
FANOREAL_DEFINE_ERROR(BudgetExceeded, Inconclusive)
FANOREAL_DEFINE_ERROR(InvariantViolation, Internal)
FANOREAL_DEFINE_ERROR(Unsupported, InvalidInput)
FANOREAL_DEFINE_ERROR(MissingLambda, InvalidInput)
FANOREAL_DEFINE_ERROR(NegativeRadicand, InvalidInput)
FANOREAL_DEFINE_ERROR(UnknownFamily, InvalidInput)
FANOREAL_DEFINE_ERROR(InconsistentEvidence, InvalidInput)

#undef FANOREAL_DEFINE_ERROR

}  // namespace fanoreal
