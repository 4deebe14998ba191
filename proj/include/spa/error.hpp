#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace spa {

enum class ErrorKind {
  SyntaxError,
  UndeclaredIdentifier,
  DuplicateDeclaration,
  SelfMessage,
  KindMismatch,
  Ungeneratable,
  Unrecoverable,
  AmbiguousMatch,
  ShapeViolation,
  InvalidOpStrand,
  UnknownRole,
  ConfigError,
  IoError,
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::UndeclaredIdentifier: return "UndeclaredIdentifier";
    case ErrorKind::DuplicateDeclaration: return "DuplicateDeclaration";
    case ErrorKind::SelfMessage: return "SelfMessage";
    case ErrorKind::KindMismatch: return "KindMismatch";
    case ErrorKind::Ungeneratable: return "Ungeneratable";
    case ErrorKind::Unrecoverable: return "Unrecoverable";
    case ErrorKind::AmbiguousMatch: return "AmbiguousMatch";
    case ErrorKind::ShapeViolation: return "ShapeViolation";
    case ErrorKind::InvalidOpStrand: return "InvalidOpStrand";
    case ErrorKind::UnknownRole: return "UnknownRole";
    case ErrorKind::ConfigError: return "ConfigError";
    case ErrorKind::IoError: return "IoError";
  }
  return "Error";
}

struct SourceLoc {
  int line = 0;
  int column = 0;
  friend bool operator==(const SourceLoc&, const SourceLoc&) = default;
};

/// Every failure raised by the library. `what()` reads
/// "<Kind> at <line>:<column>: <detail>" when a location is known.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail, std::optional<SourceLoc> loc = std::nullopt)
      : std::runtime_error(format(kind, detail, loc)), kind_(kind), detail_(detail), loc_(loc) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& detail() const noexcept { return detail_; }
  const std::optional<SourceLoc>& loc() const noexcept { return loc_; }

 private:
  static std::string format(ErrorKind kind, const std::string& detail, std::optional<SourceLoc> loc) {
    std::string out(to_string(kind));
    if (loc) {
      out += " at " + std::to_string(loc->line) + ":" + std::to_string(loc->column);
    }
    out += ": " + detail;
    return out;
  }

  ErrorKind kind_;
  std::string detail_;
  std::optional<SourceLoc> loc_;
};

}  // namespace spa
