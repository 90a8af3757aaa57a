#pragma once

#include <stdexcept>
#include <string>

namespace sqcodes {

// Base for all library errors.  name() is the stable identifier rendered by
// the CLI; what() carries the human-readable detail.
class Error : public std::runtime_error {
 public:
  Error(std::string name, const std::string& msg)
      : std::runtime_error(name + ": " + msg), name_(std::move(name)) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

#define SQCODES_DEFINE_ERROR(Name)                                \
  class Name : public Error {                                     \
   public:                                                        \
    explicit Name(const std::string& msg) : Error(#Name, msg) {}  \
  }

SQCODES_DEFINE_ERROR(NotPrimePower);
SQCODES_DEFINE_ERROR(OutOfRange);
SQCODES_DEFINE_ERROR(DivisionByZero);
SQCODES_DEFINE_ERROR(DimensionMismatch);
SQCODES_DEFINE_ERROR(FieldMismatch);
SQCODES_DEFINE_ERROR(LengthMismatch);
SQCODES_DEFINE_ERROR(EmptyCode);
SQCODES_DEFINE_ERROR(BudgetExceeded);
SQCODES_DEFINE_ERROR(DuplicatePoint);
SQCODES_DEFINE_ERROR(TooLong);
SQCODES_DEFINE_ERROR(InvalidPosition);
SQCODES_DEFINE_ERROR(ParseError);
SQCODES_DEFINE_ERROR(RankDeficient);
SQCODES_DEFINE_ERROR(FieldError);
SQCODES_DEFINE_ERROR(DomainError);
SQCODES_DEFINE_ERROR(NotFullRank);

#undef SQCODES_DEFINE_ERROR

}  // namespace sqcodes
