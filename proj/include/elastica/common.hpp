#pragma once

#include <stdexcept>
#include <string>

namespace elastica {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

enum class ErrorCode {
  ZeroLength,
  BadGrid,
  DimensionMismatch,
  LiftJump,
  ZeroVariation,
  BadSigma,
  GridMismatch,
  DegeneratePath,
  DegenerateEndpoints,
  AntipodalPair,
  InvalidLift,
  NotClosed,
  BadFrame,
  NoConvergence,
};

const char* error_name(ErrorCode code);

// Library-level failure carrying a stable code the CLI maps to exit classes.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& msg) {
  throw Error(code, msg);
}

inline double clamp_unit(double x) {
  return x < -1.0 ? -1.0 : (x > 1.0 ? 1.0 : x);
}

}  // namespace elastica
