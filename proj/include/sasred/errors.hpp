#pragma once

#include <stdexcept>
#include <string>

namespace sasred {

enum class ErrorKind {
  EmptyFrame,
  NotDifferentiable,
  SingularMetric,
  DegenerateContact,
  ZeroMu,
  EmptyLevelSet,
  NoConvergence,
  WrongRay,
  DegenerateAction,
  FrameInconsistent,
  AmbiguousSplit,
  StratificationLeak,
  ParseError,
  ValidationError,
};

inline const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::EmptyFrame: return "EmptyFrame";
    case ErrorKind::NotDifferentiable: return "NotDifferentiable";
    case ErrorKind::SingularMetric: return "SingularMetric";
    case ErrorKind::DegenerateContact: return "DegenerateContact";
    case ErrorKind::ZeroMu: return "ZeroMu";
    case ErrorKind::EmptyLevelSet: return "EmptyLevelSet";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::WrongRay: return "WrongRay";
    case ErrorKind::DegenerateAction: return "DegenerateAction";
    case ErrorKind::FrameInconsistent: return "FrameInconsistent";
    case ErrorKind::AmbiguousSplit: return "AmbiguousSplit";
    case ErrorKind::StratificationLeak: return "StratificationLeak";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ValidationError: return "ValidationError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace sasred
