#pragma once

#include <stdexcept>
#include <string>

namespace blowuplab {

/// Requested Robin coefficient sits in (or within tolerance of) the
/// resonance set of the active domain; the mixed-BC solve is singular there.
struct ResonanceError : std::runtime_error {
    explicit ResonanceError(const std::string& what) : std::runtime_error(what) {}
};

/// Discrete solve failed its residual gate.
struct SolverError : std::runtime_error {
    explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

/// Weight/scenario parameter outside the admissible range of the active variant.
struct ParameterError : std::runtime_error {
    explicit ParameterError(const std::string& what) : std::runtime_error(what) {}
};

/// Initial data fails the active theorem's sign/threshold hypotheses.
struct HypothesisViolation : std::runtime_error {
    explicit HypothesisViolation(const std::string& what) : std::runtime_error(what) {}
};

/// A time step produced an inadmissible state (e.g. u undershoot beyond
/// tolerance); the driver halves dt and retries.
struct StepRejected : std::runtime_error {
    explicit StepRejected(const std::string& what) : std::runtime_error(what) {}
};

struct ShapeMismatch : std::runtime_error {
    explicit ShapeMismatch(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace blowuplab
