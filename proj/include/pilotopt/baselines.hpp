#pragma once

#include <cstdint>
#include <optional>

#include "pilotopt/channel_model.hpp"
#include "pilotopt/ee_optimizer.hpp"
#include "pilotopt/link_metrics.hpp"
#include "pilotopt/se_optimizer.hpp"

namespace pilotopt {

// Comparison schemes: a fixed uniform pilot ratio at every BS, and a seeded
// evolutionary search over the ratio vector.

/// Combined SNR with the same ratio at every BS.
double traditional_scheme(const Scenario& scenario, double tx_power_w, double alpha_uniform);

struct FixedRatioPower {
    SolveStatus status = SolveStatus::ok;
    double tx_power_w = 0.0;  // power limit when infeasible
    double energy_efficiency_bit_per_joule = 0.0;
};

/// Smallest power at which a uniform ratio reaches the rate target, found by
/// bisection in log P (combined SNR at a fixed ratio grows with P).
FixedRatioPower traditional_scheme_min_power(const Scenario& scenario, double target_rate_bps,
                                             double alpha_uniform, double rel_tol = 1e-10);

struct SearchBudget {
    int population = 50;
    int generations = 100;
    std::uint64_t seed = 1;
    double mutation_scale = 0.05;

    static constexpr long long kMaxEvaluations = 10'000'000;
};

void validate(const SearchBudget& budget);

/// Elitist evolutionary search maximizing combined SNR over the ratio vector:
/// binary tournament selection, blend crossover, Gaussian mutation clipped to
/// the open unit interval. Deterministic for a given seed.
SeSolution stochastic_search_se(const LinkState& state, double bandwidth_hz, const SearchBudget& budget);
SeSolution stochastic_search_se(const Scenario& scenario, double tx_power_w, const SearchBudget& budget);

/// Bisection in log P on "the search reaches the required SNR".
EeSolution stochastic_search_ee(const Scenario& scenario, double target_rate_bps, const SearchBudget& budget,
                                double rel_tol = 1e-6);

}  // namespace pilotopt
