#pragma once

#include <stdexcept>
#include <string>

namespace qbell {

// Requested Fock cutoffs cannot hold the state at the requested tolerance.
class TruncationError : public std::runtime_error {
public:
    explicit TruncationError(const std::string& what) : std::runtime_error(what) {}
};

// A state that has no finite normalizer (e.g. Phi2/Phi4 at beta = 0).
class DegenerateStateError : public std::invalid_argument {
public:
    explicit DegenerateStateError(const std::string& what) : std::invalid_argument(what) {}
};

// A computed matrix violates a structural tolerance (PSD, Hermiticity, ...).
class NumericalInstabilityError : public std::runtime_error {
public:
    explicit NumericalInstabilityError(const std::string& what) : std::runtime_error(what) {}
};

// Two states fail the unitary-symmetry precondition of the minimax reduction.
class SymmetryError : public std::invalid_argument {
public:
    explicit SymmetryError(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace qbell
