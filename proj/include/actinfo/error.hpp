#pragma once

#include <stdexcept>
#include <string>

namespace actinfo {

enum class ErrorKind {
  InvalidArgument,
  InvalidDistribution,
  SpaceMismatch,
  EmptyTarget,
  NullTargetZero,
  SupportViolation,
  OutOfRange,
  NoConvergence,
  ReciprocityViolation,
  ZeroNullMass,
  NotStronglyConnected,
  SingularSystem,
  EmptyComplement,
  ConstantSpecificity,
  NonIdentifiable,
  SingularSandwich,
  NullModelTargetZero,
  InvalidNull,
  DegenerateVariance,
  ParseError,
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace actinfo
