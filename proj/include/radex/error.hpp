#pragma once

#include <stdexcept>
#include <string>

namespace radex {

/// Error taxonomy shared across the library. The kind drives the CLI exit
/// code: input/validation problems exit with 2, numeric or degenerate-data
/// problems with 3.
enum class ErrorKind {
  // input / validation
  BadFormat,
  Io,
  DimensionMismatch,
  ShapeMismatch,
  LengthMismatch,
  SampleMismatch,
  MissingFeature,
  UnresolvableName,
  BadArgument,
  // numeric / degenerate data
  EmptyMask,
  TooSmall,
  SingleClass,
  TooFewSamples,
  ClassTooSmall,
  AllColumnsRemoved,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  /// True for malformed input; false for well-formed but degenerate data.
  bool is_validation() const noexcept {
    switch (kind_) {
      case ErrorKind::BadFormat:
      case ErrorKind::Io:
      case ErrorKind::DimensionMismatch:
      case ErrorKind::ShapeMismatch:
      case ErrorKind::LengthMismatch:
      case ErrorKind::SampleMismatch:
      case ErrorKind::MissingFeature:
      case ErrorKind::UnresolvableName:
      case ErrorKind::BadArgument:
        return true;
      default:
        return false;
    }
  }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& msg) {
  throw Error(kind, msg);
}

}  // namespace radex
