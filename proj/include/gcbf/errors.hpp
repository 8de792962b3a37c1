// Copyright 2026 The gcbf authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <stdexcept>
#include <string>

namespace gcbf {

// Error taxonomy. Exit-code mapping used by the CLI:
//   0 ok, 2 usage, 3 format/IO, 4 shape/config mismatch.
enum class ErrorCode {
  kInvalidArgument,  // bad flag/usage                          -> 2
  kIoFailure,        // file open/read/write failed             -> 3
  kBadMagic,         // weight/WAV file magic wrong             -> 3
  kBadVersion,       // unsupported format version              -> 3
  kTruncated,        // file ends mid-record                    -> 3
  kBadFormat,        // structurally invalid file               -> 3
  kShapeMismatch,    // tensor/buffer dims inconsistent         -> 4
  kInvalidConfig,    // configuration violates an invariant     -> 4
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& msg)
      : std::runtime_error(msg), code_(code) {}

  ErrorCode code() const { return code_; }

  int exit_code() const {
    switch (code_) {
      case ErrorCode::kInvalidArgument:
        return 2;
      case ErrorCode::kIoFailure:
      case ErrorCode::kBadMagic:
      case ErrorCode::kBadVersion:
      case ErrorCode::kTruncated:
      case ErrorCode::kBadFormat:
        return 3;
      case ErrorCode::kShapeMismatch:
      case ErrorCode::kInvalidConfig:
        return 4;
    }
    return 1;
  }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& msg) {
  throw Error(code, msg);
}

}  // namespace gcbf
