#pragma once

#include <stdexcept>
#include <string>

namespace pairrank {

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct NonPositiveScore : Error { using Error::Error; };
struct TooFewItems : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };
struct NormalizationTooSmall : Error { using Error::Error; };
struct EmptyGraph : Error { using Error::Error; };
struct Disconnected : Error { using Error::Error; };
struct NoConvergence : Error { using Error::Error; };
struct BadK : Error { using Error::Error; };
struct ZeroTruth : Error { using Error::Error; };
struct NotSymmetric : Error { using Error::Error; };
struct NotReversible : Error { using Error::Error; };
struct DegenerateQ : Error { using Error::Error; };
struct BadEps : Error { using Error::Error; };
struct BadRegime : Error { using Error::Error; };
struct ConfigError : Error { using Error::Error; };
struct InsufficientData : Error { using Error::Error; };
struct IoError : Error { using Error::Error; };

}  // namespace pairrank
