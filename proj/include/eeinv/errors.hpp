#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace eeinv {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Operand lengths or matrix shapes disagree.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A value lies outside the operation's domain (negative cone entry, zero scalar).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A finite-enumeration guard was exceeded.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// Riesz or sum decomposition precondition failed.
class DecompositionError : public Error {
 public:
  using Error::Error;
};

class HereditaryError : public Error {
 public:
  using Error::Error;
};

/// No (least) element exists in a restriction fiber.
class ExtensionError : public Error {
 public:
  using Error::Error;
};

/// Partial traces disagree on an overlap.
class GluingConflict : public Error {
 public:
  GluingConflict(std::size_t first, std::size_t second, std::ptrdiff_t ray, const std::string& what)
      : Error(what), first_(first), second_(second), ray_(ray) {}
  std::size_t first() const { return first_; }
  std::size_t second() const { return second_; }
  /// Ray of the overlap cone on which the two restrictions differ.
  std::ptrdiff_t ray() const { return ray_; }

 private:
  std::size_t first_;
  std::size_t second_;
  std::ptrdiff_t ray_;
};

/// Consistent partial traces admit no common extension.
class GluingError : public Error {
 public:
  using Error::Error;
};

/// Two elements do not belong to the same object.
class ContextError : public Error {
 public:
  using Error::Error;
};

/// An object or morphism failed the validation a functor requires.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

class TransportError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line = 0, std::size_t column = 0)
      : Error(what), line_(line), column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Well-formed JSON whose content violates the document schema.
class DocumentError : public Error {
 public:
  DocumentError(const std::string& field, const std::string& what)
      : Error(field.empty() ? what : field + ": " + what), field_(field) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

class GenerationError : public Error {
 public:
  using Error::Error;
};

}  // namespace eeinv
