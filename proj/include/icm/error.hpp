#pragma once

#include <stdexcept>
#include <string>

namespace icm {

// Typed failure codes surfaced by engine operations. The CLI maps these to
// exit codes; tests assert on them by name.
enum class Errc {
  NotADirectory,
  MissingIdentityFile,
  MissingRoutingFile,
  PathOutsideWorkspace,
  InputNotFound,
  LayerMismatch,
  EscapesWorkspace,
  AnchorNotFound,
  ForwardReference,
  SelfReference,
  AgentFailure,
  LockHeld,
  OutputOutsideDeclared,
  VerifyFailed,
  TargetNotEmpty,
  NoMarkerGoverns,
  UsageError,
  IoError,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message),
        code_(code) {}

  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace icm
