#pragma once

#include <stdexcept>
#include <string>

namespace walkzeta {

// One exception type per contract violation so callers (and tests) can
// catch exactly the failure they expect.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error { using Error::Error; };
struct NotSquare : Error { using Error::Error; };
struct SizeExceeded : Error { using Error::Error; };
struct BadSize : Error { using Error::Error; };
struct NotReal : Error { using Error::Error; };
struct NotTracePreserving : Error { using Error::Error; };
struct NotReducible : Error { using Error::Error; };
struct CapExceeded : Error { using Error::Error; };
struct DetNearZero : Error { using Error::Error; };
struct GridTooCoarse : Error { using Error::Error; };
struct NotConverged : Error { using Error::Error; };
struct RadiusViolation : Error { using Error::Error; };
struct ZeroEntry : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };

}  // namespace walkzeta
