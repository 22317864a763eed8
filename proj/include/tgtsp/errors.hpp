#ifndef TGTSP_ERRORS_HPP
#define TGTSP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace tgtsp {

/// Error categories surfaced through the C API as status codes.
enum class ErrorCode {
  parse,        // malformed input text
  validation,   // well-formed input violating a model invariant
  unsupported,  // valid input outside the implemented feature set
  io,           // file system failure
  internal      // bug or numerical breakdown
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

struct ParseError : Error {
  explicit ParseError(const std::string& what) : Error(ErrorCode::parse, what) {}
};

struct ValidationError : Error {
  explicit ValidationError(const std::string& what)
      : Error(ErrorCode::validation, what) {}
};

struct UnsupportedError : Error {
  explicit UnsupportedError(const std::string& what)
      : Error(ErrorCode::unsupported, what) {}
};

struct IoError : Error {
  explicit IoError(const std::string& what) : Error(ErrorCode::io, what) {}
};

}  // namespace tgtsp

#endif  // TGTSP_ERRORS_HPP
