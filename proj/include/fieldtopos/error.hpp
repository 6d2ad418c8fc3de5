#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fieldtopos {

enum class ErrorKind {
  InvalidModulus,
  ZeroPolynomial,
  InvalidPolynomial,
  NotSplittable,
  NotRegular,
  MixedCharacteristic,
  EmptyFiber,
  DichotomyViolation,
  MissingIdentity,
  NonAssociative,
  DanglingMorphism,
  InvalidGenerator,
  InternalError,
  NotARefinement,
  AmbiguousMaximum,
  NotAtomicizable,
  InvalidPresheaf,
  TooLarge,
  UnknownObject,
  ParseError,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidModulus: return "InvalidModulus";
    case ErrorKind::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorKind::InvalidPolynomial: return "InvalidPolynomial";
    case ErrorKind::NotSplittable: return "NotSplittable";
    case ErrorKind::NotRegular: return "NotRegular";
    case ErrorKind::MixedCharacteristic: return "MixedCharacteristic";
    case ErrorKind::EmptyFiber: return "EmptyFiber";
    case ErrorKind::DichotomyViolation: return "DichotomyViolation";
    case ErrorKind::MissingIdentity: return "MissingIdentity";
    case ErrorKind::NonAssociative: return "NonAssociative";
    case ErrorKind::DanglingMorphism: return "DanglingMorphism";
    case ErrorKind::InvalidGenerator: return "InvalidGenerator";
    case ErrorKind::InternalError: return "InternalError";
    case ErrorKind::NotARefinement: return "NotARefinement";
    case ErrorKind::AmbiguousMaximum: return "AmbiguousMaximum";
    case ErrorKind::NotAtomicizable: return "NotAtomicizable";
    case ErrorKind::InvalidPresheaf: return "InvalidPresheaf";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::UnknownObject: return "UnknownObject";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

/// Every failure raised by the library. The kind is stable and meant to be
/// matched on; the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace fieldtopos
