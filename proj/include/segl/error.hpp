#pragma once

#include <stdexcept>
#include <string>

namespace segl {

enum class ErrorCode {
  Parse = 1,   // malformed input file
  Dimension,   // image/field sizes do not fit the operation
  Config,      // invalid parameter (q, k, folds, ...)
  Domain,      // numeric precondition violated
  Schema,      // feature names / CSV columns do not line up
  Fit,         // a model cannot be trained on the given data
  Io,          // file could not be read or written
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace segl
