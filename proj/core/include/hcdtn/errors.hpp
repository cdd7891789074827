#pragma once

#include <stdexcept>
#include <string>

namespace hcdtn {

/// Base class for every error raised by the library.  `kind()` is a stable
/// machine-readable tag (used verbatim in the CLI error JSON).
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}

  const std::string& kind() const noexcept { return kind_; }

  /// Input/usage errors map to CLI exit code 2, numerical failures to 3.
  virtual bool is_numerical() const noexcept { return false; }

 private:
  std::string kind_;
};

class NumericalError : public Error {
 public:
  using Error::Error;
  bool is_numerical() const noexcept override { return true; }
};

#define HCDTN_DEFINE_ERROR(Name, Base)                                   \
  class Name : public Base {                                             \
   public:                                                               \
    explicit Name(const std::string& what) : Base(#Name, what) {}        \
  };

HCDTN_DEFINE_ERROR(ParseError, Error)
HCDTN_DEFINE_ERROR(EmptyPackingError, Error)
HCDTN_DEFINE_ERROR(DegenerateAngleError, Error)
HCDTN_DEFINE_ERROR(DomainError, Error)
HCDTN_DEFINE_ERROR(ModeError, Error)
HCDTN_DEFINE_ERROR(InfeasibleError, Error)
HCDTN_DEFINE_ERROR(UsageError, Error)
HCDTN_DEFINE_ERROR(OracleGuardError, Error)
HCDTN_DEFINE_ERROR(SingularSystemError, NumericalError)
HCDTN_DEFINE_ERROR(FloatingComponentError, NumericalError)
HCDTN_DEFINE_ERROR(IllConditionedError, NumericalError)

#undef HCDTN_DEFINE_ERROR

class OverlapError : public Error {
 public:
  OverlapError(int i, int j)
      : Error("OverlapError", "inclusions " + std::to_string(i) + " and " +
                                  std::to_string(j) + " touch or overlap"),
        i_(i),
        j_(j) {}
  int first() const noexcept { return i_; }
  int second() const noexcept { return j_; }

 private:
  int i_, j_;
};

class OutsideDomainError : public Error {
 public:
  explicit OutsideDomainError(int i)
      : Error("OutsideDomainError",
              "inclusion " + std::to_string(i) + " touches or crosses the domain boundary"),
        i_(i) {}
  int index() const noexcept { return i_; }

 private:
  int i_;
};

}  // namespace hcdtn
