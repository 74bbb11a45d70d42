#pragma once

#include <stdexcept>
#include <string>

namespace omh {

// Raised when an adaptive ODE integration cannot reach the requested
// tolerance. Carries the last time that was integrated successfully.
class IntegrationError : public std::runtime_error {
public:
    IntegrationError(const std::string& what, double last_good_time)
        : std::runtime_error(what), last_good_time(last_good_time) {}
    double last_good_time;
};

// Raised when a Fock-space truncation cap is hit before the requested
// tail weight is reached.
class TruncationError : public std::runtime_error {
public:
    TruncationError(const std::string& what, double achieved_weight)
        : std::runtime_error(what), achieved_weight(achieved_weight) {}
    double achieved_weight;
};

// Raised when a small-matrix inverse looks numerically meaningless.
class SingularMatrixError : public std::runtime_error {
public:
    explicit SingularMatrixError(const std::string& what)
        : std::runtime_error(what) {}
};

// Raised when a drift matrix is not Hurwitz and a steady state is requested.
class UnstableSystemError : public std::runtime_error {
public:
    UnstableSystemError(const std::string& what, double margin)
        : std::runtime_error(what), margin(margin) {}
    // Largest real part of the drift eigenvalues (positive = unstable).
    double margin;
};

}  // namespace omh
