#pragma once

#include <stdexcept>
#include <string>

namespace liequad {

// Base class for all recoverable failures raised by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bad configuration, arguments or input data. CLI exit code 1.
struct InvalidArgument : Error {
  using Error::Error;
};

// Numerical breakdown during integration or analysis. CLI exit code 2.
struct NumericalError : Error {
  using Error::Error;
};

// A state that should live in the horizontal plane has leaked out of it.
struct NonHorizontal : NumericalError {
  using NumericalError::NumericalError;
};

// |v| fell below q_min: the direction v/|v| is undefined.
struct ZeroVelocity : NumericalError {
  using NumericalError::NumericalError;
};

// Two consecutive direction samples differ by almost pi: the continuous
// angle lift is ambiguous at this sampling rate.
struct UndersampledRotation : NumericalError {
  using NumericalError::NumericalError;
};

// Polar right-hand side evaluated with q <= q_min.
struct RadialUnderflow : NumericalError {
  using NumericalError::NumericalError;
};

// Adaptive step size underflowed while trying to meet the tolerance.
struct StepFailure : NumericalError {
  using NumericalError::NumericalError;
};

// max_steps exceeded.
struct Budget : NumericalError {
  using NumericalError::NumericalError;
};

// Stereographic projection evaluated at the projection pole.
struct PoleProjection : NumericalError {
  using NumericalError::NumericalError;
};

// Two trajectories expected on the same time grid are not.
struct GridMismatch : InvalidArgument {
  using InvalidArgument::InvalidArgument;
};

// Rescaled time bt left the sampled span.
struct SpanExceeded : InvalidArgument {
  using InvalidArgument::InvalidArgument;
};

// Trajectory too short for the requested tail analysis.
struct InsufficientTail : NumericalError {
  using NumericalError::NumericalError;
};

// q is not monotonically growing on the requested fit window.
struct NotGrowing : NumericalError {
  using NumericalError::NumericalError;
};

// Null-case analysis requested on a trajectory with a nonzero constant.
struct NonNull : InvalidArgument {
  using InvalidArgument::InvalidArgument;
};

}  // namespace liequad
