#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rglab {

enum class ErrorKind {
  Overflow,
  SpaceExhausted,
  NotPositive,
  NotDivisible,
  InsufficientPositiveRelators,
  WrongRelatorLength,
  EmptyGraph,
  InvalidArgument,
  Parse,
};

std::string_view to_string(ErrorKind kind);

// Single exception type for the library; callers branch on kind().
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace rglab
