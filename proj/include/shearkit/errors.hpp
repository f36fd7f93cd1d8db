#pragma once

#include <stdexcept>
#include <string>

namespace shearkit {

/// Base of all shearkit errors. Each concrete error carries a stable
/// process exit code so the CLI can map failures one-to-one.
class Error : public std::runtime_error {
public:
  Error(const std::string& msg, int exit_code)
      : std::runtime_error(msg), exit_code_(exit_code) {}
  int exit_code() const noexcept { return exit_code_; }

private:
  int exit_code_;
};

#define SHEARKIT_ERROR(Name, Code)                       \
  class Name : public Error {                            \
  public:                                                \
    explicit Name(const std::string& msg = #Name)        \
        : Error(std::string(#Name) + ": " + msg, Code) {} \
  }

SHEARKIT_ERROR(ConfigInvalid, 2);
SHEARKIT_ERROR(BadMagic, 3);
SHEARKIT_ERROR(VersionMismatch, 4);
SHEARKIT_ERROR(GridMismatch, 5);
SHEARKIT_ERROR(ZeroDilation, 6);
SHEARKIT_ERROR(OrderTooHigh, 7);
SHEARKIT_ERROR(NotLizorkin, 8);
SHEARKIT_ERROR(SingularDivision, 9);
SHEARKIT_ERROR(BadBandEdges, 10);
SHEARKIT_ERROR(QuadratureNotConverged, 11);
SHEARKIT_ERROR(NotAdmissible, 12);
SHEARKIT_ERROR(DegenerateInput, 13);
SHEARKIT_ERROR(GridTooCoarse, 14);
SHEARKIT_ERROR(NoBoundWithinCap, 15);
SHEARKIT_ERROR(CoverageGap, 16);
SHEARKIT_ERROR(IoError, 17);

#undef SHEARKIT_ERROR

/// Non-fatal conditions surfaced by field operations.
struct Warnings {
  bool support_escape = false;
};

}  // namespace shearkit
