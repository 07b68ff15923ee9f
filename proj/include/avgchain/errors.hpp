#pragma once

#include <stdexcept>
#include <string>

namespace avgchain {

enum class Errc {
  MetricViolation,
  IndexOutOfRange,
  EmptySpace,
  NotExplicitMap,
  SizeOverflow,
  UnsupportedKind,
  NonpositiveDelta,
  NonpositiveEpsilon,
  NonpositiveEta,
  TooShort,
  HorizonZero,
  InvalidInputChain,
  LengthNotDivisible,
  LengthMismatch,
  PowerTransitivityUnavailable,
  EmptyInput,
  PrefixTooShort,
  NotSurjective,
  NotForwardInvariant,
  UnknownName,
  BadParameter,
  HypothesisUnmet,
  InvariantBreach,
};

const char* errc_name(Errc c);

// Library errors carry a stable code so callers (and the CLI exit-code
// mapping) can distinguish input errors from internal invariant breaches.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace avgchain
