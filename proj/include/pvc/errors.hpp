#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pvc {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ContextError : Error {
  using Error::Error;
};

struct DivisionByZero : Error {
  using Error::Error;
};

struct DegreeLimitError : Error {
  using Error::Error;
};

struct DomainError : Error {
  using Error::Error;
};

struct ParseError : Error {
  ParseError(const std::string& what, std::size_t pos)
      : Error(what + " at position " + std::to_string(pos)), position(pos) {}
  std::size_t position;
};

struct SchemaError : Error {
  SchemaError(const std::string& case_id, const std::string& what)
      : Error(case_id.empty() ? what : "case '" + case_id + "': " + what), case_id(case_id) {}
  std::string case_id;
};

struct ObstructionError : Error {
  ObstructionError(const std::string& what, int order)
      : Error(what + " (order " + std::to_string(order) + ")"), order(order) {}
  int order;
};

}  // namespace pvc
