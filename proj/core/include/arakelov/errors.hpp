#pragma once

#include <stdexcept>
#include <string>

// Failure vocabulary for the whole library. Every throw names the specific
// unmet precondition so callers (and the CLI exit-code mapping) can react
// without parsing message text.

namespace arakelov {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// exact arithmetic
struct NotPrime : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };
struct NotSquare : Error { using Error::Error; };
struct DependentColumns : Error { using Error::Error; };
struct SingularMatrix : Error { using Error::Error; };
struct RankDeficient : Error { using Error::Error; };
struct NotInSpan : Error { using Error::Error; };

// building geometry
struct NotComplementary : Error { using Error::Error; };
struct NotOnGeodesic : Error { using Error::Error; };

// cycle intersection, both places
struct ImproperIntersection : Error { using Error::Error; };
struct NotSpanning : Error { using Error::Error; };
struct LatticesNotEquivalent : Error { using Error::Error; };
struct GateNotFound : Error { using Error::Error; };
struct NotProportional : Error { using Error::Error; };

// A mathematical hypothesis that the input data simply fails to satisfy,
// as opposed to malformed input. `condition` identifies which one.
struct HypothesesFailed : Error {
  std::string condition;
  HypothesesFailed(std::string cond, const std::string& what)
      : Error(what), condition(std::move(cond)) {}
};

// symmetric space
struct NotPositiveDefinite : Error { using Error::Error; };
struct NotHermitian : Error { using Error::Error; };
struct NotTangent : Error { using Error::Error; };
struct NoRoot : Error { using Error::Error; };
struct SingularProjection : Error { using Error::Error; };
struct WrongCodimension : Error { using Error::Error; };

// serialization
struct SchemaError : Error { using Error::Error; };

}  // namespace arakelov
