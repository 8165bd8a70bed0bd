#pragma once

#include <stdexcept>
#include <string>

namespace kantorovich {

enum class ErrorKind {
  config,   // malformed or inconsistent input
  numeric,  // a numerical procedure could not deliver its contract
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void config_error(const std::string& what) {
  throw Error(ErrorKind::config, what);
}

[[noreturn]] inline void numeric_error(const std::string& what) {
  throw Error(ErrorKind::numeric, what);
}

}  // namespace kantorovich
