#pragma once

#include <stdexcept>
#include <string>

namespace sbo {

/// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Exact arithmetic / special functions
struct PoleError : Error { using Error::Error; };
struct NotBothPoles : Error { using Error::Error; };

// Harmonics
struct DegreeError : Error { using Error::Error; };
struct EmptySpace : Error { using Error::Error; };
struct ParityError : Error { using Error::Error; };

// Lattice / spectral
struct ParameterError : Error { using Error::Error; };
struct SingularSystem : Error { using Error::Error; };
struct SupportError : Error { using Error::Error; };
struct CalibrationError : Error { using Error::Error; };

// Solver
struct WindowTooSmall : Error { using Error::Error; };
struct WindowUnstable : Error { using Error::Error; };
struct MismatchError : Error { using Error::Error; };

// Quadrature
struct DimensionError : Error { using Error::Error; };
struct ConvergenceError : Error { using Error::Error; };
struct ToleranceExceeded : Error { using Error::Error; };

// Internal consistency (transcription guards); never expected to fire.
struct InternalError : Error { using Error::Error; };

} // namespace sbo
