#pragma once

#include <stdexcept>
#include <string>

namespace spwp {

// Every library failure derives from Error so callers can catch one type.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}
  const std::string& kind() const { return kind_; }

 private:
  std::string kind_;
};

#define SPWP_DEFINE_ERROR(Name)                                   \
  class Name : public Error {                                     \
   public:                                                        \
    explicit Name(const std::string& what) : Error(#Name, what) {} \
  };

SPWP_DEFINE_ERROR(DivisionByZero)
SPWP_DEFINE_ERROR(FieldMismatch)
SPWP_DEFINE_ERROR(NotGalois)
SPWP_DEFINE_ERROR(DegenerateTrace)
SPWP_DEFINE_ERROR(NoEmbedding)
SPWP_DEFINE_ERROR(VertexMismatch)
SPWP_DEFINE_ERROR(NotStabilized)
SPWP_DEFINE_ERROR(NotSelfInjective)
SPWP_DEFINE_ERROR(NotAMorphism)
SPWP_DEFINE_ERROR(LoopAtVertex)
SPWP_DEFINE_ERROR(TwoCycleAtVertex)
SPWP_DEFINE_ERROR(NotRotated)
SPWP_DEFINE_ERROR(NotSparse)
SPWP_DEFINE_ERROR(ConditionsABViolated)
SPWP_DEFINE_ERROR(UnsupportedAlgebra)
SPWP_DEFINE_ERROR(UnknownType)
SPWP_DEFINE_ERROR(ValidationError)

#undef SPWP_DEFINE_ERROR

// Parse failures carry a location: a JSON path, and a line when known.
class ParseError : public Error {
 public:
  ParseError(const std::string& where, const std::string& what)
      : Error("ParseError", where + ": " + what), where_(where), message_(what) {}
  const std::string& where() const { return where_; }
  const std::string& message() const { return message_; }

 private:
  std::string where_, message_;
};

}  // namespace spwp
