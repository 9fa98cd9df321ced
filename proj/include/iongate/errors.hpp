#pragma once

#include <stdexcept>
#include <string>

namespace iongate {

// Root of the library's exception hierarchy.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed configuration, CLI input, or atomic-data file. CLI exit code 2.
class ConfigError : public Error {
public:
    using Error::Error;
};

// A physically impossible or out-of-domain request. CLI exit code 3.
class PhysicsError : public Error {
public:
    using Error::Error;
};

// Laser frequency too close to an atomic resonance for the dispersive
// dipole-potential formulas to be trusted.
class GuardBandViolation : public PhysicsError {
public:
    using PhysicsError::PhysicsError;
};

// Root bracketing failed: the target function does not change sign on the
// requested interval.
class NoSignChange : public PhysicsError {
public:
    using PhysicsError::PhysicsError;
};

// Beam/ion placement constraints of the requested geometry cannot be met.
class GeometryUnresolvable : public PhysicsError {
public:
    using PhysicsError::PhysicsError;
};

// The differential dipole coefficient psi_plus - psi_minus is (nearly) zero,
// so no finite laser intensity below the power cap can drive the gate.
class DifferentialCancellation : public PhysicsError {
public:
    using PhysicsError::PhysicsError;
};

// A root solve failed to converge inside its allowed domain.
class NoSolution : public PhysicsError {
public:
    using PhysicsError::PhysicsError;
};

// Adaptive quadrature could not reach the requested tolerance within its
// interval budget.
class QuadratureFailure : public PhysicsError {
public:
    using PhysicsError::PhysicsError;
};

} // namespace iongate
