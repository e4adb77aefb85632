#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sptree {

enum class ErrorKind {
  PointOutsideDomain,
  PointOutsideNode,
  DuplicateId,
  NegativeRadius,
  DepthExhausted,
  EmptyLeaf,
  TooFewEntries,
  InvalidConfig,
  OracleMismatch,
  InvalidGrid,
  EmptyInput,
};

constexpr std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::PointOutsideDomain: return "PointOutsideDomain";
    case ErrorKind::PointOutsideNode: return "PointOutsideNode";
    case ErrorKind::DuplicateId: return "DuplicateId";
    case ErrorKind::NegativeRadius: return "NegativeRadius";
    case ErrorKind::DepthExhausted: return "DepthExhausted";
    case ErrorKind::EmptyLeaf: return "EmptyLeaf";
    case ErrorKind::TooFewEntries: return "TooFewEntries";
    case ErrorKind::InvalidConfig: return "InvalidConfig";
    case ErrorKind::OracleMismatch: return "OracleMismatch";
    case ErrorKind::InvalidGrid: return "InvalidGrid";
    case ErrorKind::EmptyInput: return "EmptyInput";
  }
  return "Unknown";
}

// Every failure raised by the library carries a kind so callers (and tests)
// can dispatch without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace sptree
