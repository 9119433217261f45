#ifndef SLICELAB_ERROR_HPP
#define SLICELAB_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace slicelab {

enum class ErrorCode {
  InvalidArgument,
  OutOfRange,
  OutOfDomain,
  SingularMatrix,
  DegenerateHull,
  DepthTooLarge,
  InsufficientData,
  MassVanishes,
  ConeNotInvariant,
  ResolutionTooFine,
  EmptyCloud,
};

std::string_view to_string(ErrorCode code);

// Every failure raised by the library. The CLI maps these to exit code 2.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::DegenerateHull: return "DegenerateHull";
    case ErrorCode::DepthTooLarge: return "DepthTooLarge";
    case ErrorCode::InsufficientData: return "InsufficientData";
    case ErrorCode::MassVanishes: return "MassVanishes";
    case ErrorCode::ConeNotInvariant: return "ConeNotInvariant";
    case ErrorCode::ResolutionTooFine: return "ResolutionTooFine";
    case ErrorCode::EmptyCloud: return "EmptyCloud";
  }
  return "Unknown";
}

}  // namespace slicelab

#endif  // SLICELAB_ERROR_HPP
