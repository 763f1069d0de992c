#ifndef GPW_ERRORS_HPP
#define GPW_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace gpw {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Syntax errors in group files and power-word expressions.
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& msg, std::size_t line = 0)
      : Error(line ? "line " + std::to_string(line) + ": " + msg : msg), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A letter or word refers to a vertex or element the graph product does not have.
class SpecMismatch : public Error {
 public:
  using Error::Error;
};

/// An operation was called outside its documented domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The algorithm does not apply to this group (involutions, non-RAAG).
class UnsupportedGroup : public Error {
 public:
  using Error::Error;
};

/// A finite group table is not a group, or a lookup fell outside it.
class MalformedDescriptor : public Error {
 public:
  using Error::Error;
};

/// A proven bound was exceeded; always a bug in this library.
class InternalInvariant : public Error {
 public:
  using Error::Error;
};

/// A brute-force oracle refused an input larger than its limit.
class LimitExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace gpw

#endif
