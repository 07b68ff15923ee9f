#include "avgchain/errors.hpp"

namespace avgchain {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::MetricViolation: return "MetricViolation";
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
    case Errc::EmptySpace: return "EmptySpace";
    case Errc::NotExplicitMap: return "NotExplicitMap";
    case Errc::SizeOverflow: return "SizeOverflow";
    case Errc::UnsupportedKind: return "UnsupportedKind";
    case Errc::NonpositiveDelta: return "NonpositiveDelta";
    case Errc::NonpositiveEpsilon: return "NonpositiveEpsilon";
    case Errc::NonpositiveEta: return "NonpositiveEta";
    case Errc::TooShort: return "TooShort";
    case Errc::HorizonZero: return "HorizonZero";
    case Errc::InvalidInputChain: return "InvalidInputChain";
    case Errc::LengthNotDivisible: return "LengthNotDivisible";
    case Errc::LengthMismatch: return "LengthMismatch";
    case Errc::PowerTransitivityUnavailable: return "PowerTransitivityUnavailable";
    case Errc::EmptyInput: return "EmptyInput";
    case Errc::PrefixTooShort: return "PrefixTooShort";
    case Errc::NotSurjective: return "NotSurjective";
    case Errc::NotForwardInvariant: return "NotForwardInvariant";
    case Errc::UnknownName: return "UnknownName";
    case Errc::BadParameter: return "BadParameter";
    case Errc::HypothesisUnmet: return "HypothesisUnmet";
    case Errc::InvariantBreach: return "InvariantBreach";
  }
  return "UnknownError";
}

}  // namespace avgchain
