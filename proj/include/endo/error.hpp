#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace endo {

enum class ErrorKind {
  InvalidCartanType,
  AutomorphismMismatch,
  NotDiagramAutomorphism,
  NonCommuting,
  RankGuardExceeded,
  DegenerateComponent,
  NonTermination,
  GroupTooLarge,
  NotInWaff,
  NotHomomorphism,
  NotFixed,
  ModelMismatch,
  CheckFailed,
  InternalInconsistency,
  UnknownClassId,
  ConfigError,
};

constexpr std::string_view to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::InvalidCartanType: return "InvalidCartanType";
    case ErrorKind::AutomorphismMismatch: return "AutomorphismMismatch";
    case ErrorKind::NotDiagramAutomorphism: return "NotDiagramAutomorphism";
    case ErrorKind::NonCommuting: return "NonCommuting";
    case ErrorKind::RankGuardExceeded: return "RankGuardExceeded";
    case ErrorKind::DegenerateComponent: return "DegenerateComponent";
    case ErrorKind::NonTermination: return "NonTermination";
    case ErrorKind::GroupTooLarge: return "GroupTooLarge";
    case ErrorKind::NotInWaff: return "NotInWaff";
    case ErrorKind::NotHomomorphism: return "NotHomomorphism";
    case ErrorKind::NotFixed: return "NotFixed";
    case ErrorKind::ModelMismatch: return "ModelMismatch";
    case ErrorKind::CheckFailed: return "CheckFailed";
    case ErrorKind::InternalInconsistency: return "InternalInconsistency";
    case ErrorKind::UnknownClassId: return "UnknownClassId";
    case ErrorKind::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

/// Single exception type for the library; `kind()` says which contract failed.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void ensure(bool cond, ErrorKind kind, const std::string& what) {
  if (!cond) fail(kind, what);
}

}  // namespace endo
