#pragma once

#include <stdexcept>
#include <string>

namespace scatterlab {

enum class ErrorKind {
  Parse,
  Usage,
  NonScattered,
  NoSuchEndpoint,
  NoEndpoints,
  EndpointsMissing,
  EndpointsNotInSet,
  ZeroShift,
  BadIndex,
  NotApplicable,
  NotInClosure,
  MismatchedTestGroups,
  InvalidGroup,
  BudgetExceeded,
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse: return "ParseError";
    case ErrorKind::Usage: return "UsageError";
    case ErrorKind::NonScattered: return "NonScattered";
    case ErrorKind::NoSuchEndpoint: return "NoSuchEndpoint";
    case ErrorKind::NoEndpoints: return "NoEndpoints";
    case ErrorKind::EndpointsMissing: return "EndpointsMissing";
    case ErrorKind::EndpointsNotInSet: return "EndpointsNotInSet";
    case ErrorKind::ZeroShift: return "ZeroShift";
    case ErrorKind::BadIndex: return "BadIndex";
    case ErrorKind::NotApplicable: return "NotApplicable";
    case ErrorKind::NotInClosure: return "NotInClosure";
    case ErrorKind::MismatchedTestGroups: return "MismatchedTestGroups";
    case ErrorKind::InvalidGroup: return "InvalidGroup";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
  }
  return "Error";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace scatterlab
