#pragma once

#include <stdexcept>
#include <string>

namespace fopa {

/// Base of every error raised by the library. `category()` drives the CLI
/// exit code: invalid input maps to 1, numerical failure to 2.
class Error : public std::runtime_error {
 public:
  enum class Category { Validation, Numerical };

  Error(Category category, const std::string& what)
      : std::runtime_error(what), category_(category), message_(what) {}

  Category category() const noexcept { return category_; }
  const char* what() const noexcept override { return message_.c_str(); }
  /// Appends " [at <where>]"; used by sweeps to name the failing point.
  void add_context(const std::string& where) { message_ += " [at " + where + "]"; }

 private:
  Category category_;
  std::string message_;
};

#define FOPA_DEFINE_ERROR(Name, Cat)                                  \
  class Name : public Error {                                         \
   public:                                                            \
    explicit Name(const std::string& what)                            \
        : Error(Category::Cat, std::string(#Name ": ") + what) {}     \
  };

FOPA_DEFINE_ERROR(OutOfRange, Validation)
FOPA_DEFINE_ERROR(InvalidProfile, Validation)
FOPA_DEFINE_ERROR(NonPositiveDetuning, Validation)
FOPA_DEFINE_ERROR(ZeroInput, Validation)
FOPA_DEFINE_ERROR(LossyFiberUnsupported, Validation)
FOPA_DEFINE_ERROR(ValidationError, Validation)
FOPA_DEFINE_ERROR(ParseError, Validation)
FOPA_DEFINE_ERROR(IoError, Validation)

FOPA_DEFINE_ERROR(NoConvergence, Numerical)
FOPA_DEFINE_ERROR(QuadratureFailure, Numerical)
FOPA_DEFINE_ERROR(DegenerateExtremum, Numerical)
FOPA_DEFINE_ERROR(ConsistencyError, Numerical)

#undef FOPA_DEFINE_ERROR

}  // namespace fopa
