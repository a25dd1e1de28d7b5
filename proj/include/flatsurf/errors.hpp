#pragma once

#include <stdexcept>
#include <string>

namespace flatsurf {

enum class ErrorCode {
  MismatchedEdgeLengths,
  DanglingGluing,
  UnlabeledBoundary,
  EmptyLabelSet,
  DegenerateTriangle,
  DisconnectedSurface,
  NonManifoldGluing,
  UnknownVertex,
  SearchBudgetExceeded,
  NoArcExists,
  NearDegenerate,
  NotSimple,
  ChainNotGeodesic,
  SeamMismatch,
  DegenerateSplit,
  NearDegenerateCrossing,
  NotAFlatDisk,
  NotADisk,
  NotASphere,
  NotAMobiusBand,
  NoEssentialLoop,
  NotRenderable,
  SyntaxError,
  InternalError,
};

const char* errorCodeName(ErrorCode code);

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, std::string message, int line = -1, int column = -1)
      : std::runtime_error(std::string(errorCodeName(code)) + ": " + message),
        code_(code), line_(line), column_(column) {}

  ErrorCode code() const { return code_; }
  int line() const { return line_; }
  int column() const { return column_; }

private:
  ErrorCode code_;
  int line_, column_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message, int line = -1,
                              int column = -1) {
  throw Error(code, message, line, column);
}

} // namespace flatsurf
