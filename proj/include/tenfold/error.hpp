#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tenfold {

enum class ErrorKind {
  InputShape,
  GroupTooLarge,
  DegenerateDecomposition,
  UnsupportedMode,
  NotInvolutive,
  InconsistentSymmetry,
  NotPureTensor,
  NotDefiniteType,
  UnsupportedConfiguration,
  UnsupportedFamily,
  NotInM,
  NotQuadratic,
};

inline constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InputShape: return "InputShape";
    case ErrorKind::GroupTooLarge: return "GroupTooLarge";
    case ErrorKind::DegenerateDecomposition: return "DegenerateDecomposition";
    case ErrorKind::UnsupportedMode: return "UnsupportedMode";
    case ErrorKind::NotInvolutive: return "NotInvolutive";
    case ErrorKind::InconsistentSymmetry: return "InconsistentSymmetry";
    case ErrorKind::NotPureTensor: return "NotPureTensor";
    case ErrorKind::NotDefiniteType: return "NotDefiniteType";
    case ErrorKind::UnsupportedConfiguration: return "UnsupportedConfiguration";
    case ErrorKind::UnsupportedFamily: return "UnsupportedFamily";
    case ErrorKind::NotInM: return "NotInM";
    case ErrorKind::NotQuadratic: return "NotQuadratic";
  }
  return "Unknown";
}

/// Single exception type for the library; `kind()` selects the failure class.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace tenfold
