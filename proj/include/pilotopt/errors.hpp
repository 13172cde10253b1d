#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pilotopt {

/// Malformed or physically invalid scenario input.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of a conversion (e.g. log of 0).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Caller broke an operation precondition (mismatched lengths and similar).
class ContractError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A pilot ratio that would have to be >= 1, or a target beyond the power limit.
class InfeasibleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The closed-form approximation left its validity domain.
class ApproxDomainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Root bracketing or convergence failure. Carries the samples that were
/// evaluated so a caller can see what the residual function looked like.
class SolverError : public std::runtime_error {
public:
    struct Sample {
        double x;
        double value;
    };

    SolverError(const std::string& what, std::vector<Sample> samples, double best_iterate)
        : std::runtime_error(what), samples_(std::move(samples)), best_iterate_(best_iterate) {}

    const std::vector<Sample>& samples() const noexcept { return samples_; }
    double best_iterate() const noexcept { return best_iterate_; }

private:
    std::vector<Sample> samples_;
    double best_iterate_;
};

}  // namespace pilotopt
