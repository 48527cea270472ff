#pragma once

#include <stdexcept>
#include <string>

namespace icz {

enum class ErrorKind {
  InvalidArgument,
  SingularProbe,
  DegenerateCalibration,
  OpenIndistinguishable,
  Resonance,
  FrequencyOutOfRange,
  DeadChannel,
  EmptyCandidates,
  Nyquist,
  ZeroBaseline,
  Parse,
  NonMonotone,
  EmptyFile,
  OutOfBand,
  Io,
  Locked,
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace icz
