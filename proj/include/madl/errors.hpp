#pragma once

#include <stdexcept>
#include <string>

namespace madl {

// Base for everything the pipeline can throw. Stage wrappers catch this and
// re-throw with the stage name prefixed so per-frame failures are attributable.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& msg) : Error(msg) {}
};

class MalformedFileError : public Error {
 public:
  explicit MalformedFileError(const std::string& msg) : Error(msg) {}
};

class ParseError : public Error {
 public:
  explicit ParseError(const std::string& msg) : Error(msg) {}
};

class InvalidPoseError : public Error {
 public:
  explicit InvalidPoseError(const std::string& msg) : Error(msg) {}
};

class CalibFormatError : public Error {
 public:
  explicit CalibFormatError(const std::string& msg) : Error(msg) {}
};

class InvalidCalibError : public Error {
 public:
  explicit InvalidCalibError(const std::string& msg) : Error(msg) {}
};

class PreconditionError : public Error {
 public:
  explicit PreconditionError(const std::string& msg) : Error(msg) {}
};

class DegenerateGeometryError : public Error {
 public:
  explicit DegenerateGeometryError(const std::string& msg) : Error(msg) {}
};

class UndefinedSmoothnessError : public Error {
 public:
  explicit UndefinedSmoothnessError(const std::string& msg) : Error(msg) {}
};

class IllConditionedError : public Error {
 public:
  explicit IllConditionedError(const std::string& msg) : Error(msg) {}
};

class NoOverlapError : public Error {
 public:
  explicit NoOverlapError(const std::string& msg) : Error(msg) {}
};

class DivergenceError : public Error {
 public:
  explicit DivergenceError(const std::string& msg) : Error(msg) {}
};

class FormatError : public Error {
 public:
  explicit FormatError(const std::string& msg) : Error(msg) {}
};

class DegenerateInputError : public Error {
 public:
  explicit DegenerateInputError(const std::string& msg) : Error(msg) {}
};

class RemoteReviewError : public Error {
 public:
  explicit RemoteReviewError(const std::string& msg) : Error(msg) {}
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& msg) : Error(msg) {}
};

class StageError : public Error {
 public:
  StageError(const std::string& stage, const std::string& msg)
      : Error(stage + ": " + msg), stage_(stage) {}
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

}  // namespace madl
