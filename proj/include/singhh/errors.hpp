#pragma once

#include <stdexcept>
#include <string>

namespace singhh {

enum class ErrorKind {
  Input,   // malformed input: parse errors, bad arguments, file format violations
  Math,    // well-formed input with no defined answer: non-isolated locus, infinite dimension, ...
  Budget,  // a size guard tripped before allocating something enormous
  Io,      // filesystem trouble
};

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, std::string message)
      : std::runtime_error(std::move(message)), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail_input(const std::string& msg) { throw Error(ErrorKind::Input, msg); }
[[noreturn]] inline void fail_math(const std::string& msg) { throw Error(ErrorKind::Math, msg); }
[[noreturn]] inline void fail_budget(const std::string& msg) { throw Error(ErrorKind::Budget, msg); }
[[noreturn]] inline void fail_io(const std::string& msg) { throw Error(ErrorKind::Io, msg); }

}  // namespace singhh
