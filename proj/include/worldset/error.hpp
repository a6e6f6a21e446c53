#pragma once

#include <stdexcept>
#include <string>

namespace ws {

// Root of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define WS_DECLARE_ERROR(Name)            \
  class Name : public Error {             \
   public:                                \
    using Error::Error;                   \
  };

WS_DECLARE_ERROR(SchemaError)
WS_DECLARE_ERROR(AttrError)
WS_DECLARE_ERROR(ValuationError)
WS_DECLARE_ERROR(CompletenessError)
WS_DECLARE_ERROR(RangeError)
WS_DECLARE_ERROR(BudgetError)
WS_DECLARE_ERROR(CapacityError)
WS_DECLARE_ERROR(LevelError)
WS_DECLARE_ERROR(FragmentError)
WS_DECLARE_ERROR(InstanceError)
WS_DECLARE_ERROR(CapError)

#undef WS_DECLARE_ERROR

class ParseError : public Error {
 public:
  ParseError(int line, int col, const std::string& msg)
      : Error(std::to_string(line) + ":" + std::to_string(col) + ": " + msg),
        line_(line),
        col_(col) {}
  int line() const { return line_; }
  int col() const { return col_; }

 private:
  int line_;
  int col_;
};

}  // namespace ws
