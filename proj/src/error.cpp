#include "icz/error.hpp"

namespace icz {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "invalid-argument";
    case ErrorKind::SingularProbe: return "singular-probe";
    case ErrorKind::DegenerateCalibration: return "degenerate-calibration";
    case ErrorKind::OpenIndistinguishable: return "open-indistinguishable";
    case ErrorKind::Resonance: return "resonance";
    case ErrorKind::FrequencyOutOfRange: return "frequency-out-of-range";
    case ErrorKind::DeadChannel: return "dead-channel";
    case ErrorKind::EmptyCandidates: return "empty-candidates";
    case ErrorKind::Nyquist: return "nyquist";
    case ErrorKind::ZeroBaseline: return "zero-baseline";
    case ErrorKind::Parse: return "parse";
    case ErrorKind::NonMonotone: return "non-monotone";
    case ErrorKind::EmptyFile: return "empty-file";
    case ErrorKind::OutOfBand: return "out-of-band";
    case ErrorKind::Io: return "io";
    case ErrorKind::Locked: return "locked";
  }
  return "unknown";
}

}  // namespace icz
