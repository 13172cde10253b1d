#include "pilotopt/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "pilotopt/errors.hpp"
#include "pilotopt/kernels.hpp"
#include "pilotopt/root_finding.hpp"

namespace pilotopt {
namespace {

constexpr double kRatioFloor = 1e-9;
constexpr double kRatioCeil = 1.0 - 1e-9;

double clip_ratio(double a) { return std::clamp(a, kRatioFloor, kRatioCeil); }

double lowest_useful_power(const Scenario& scenario, double target_snr) {
    const double noise = noise_power_w(scenario.config);
    double g = 0.0;
    for (const BsLink& link : scenario.links) g += snr_per_watt(link, noise);
    return target_snr / (g * scenario.config.coherence_symbols);
}

}  // namespace

double traditional_scheme(const Scenario& scenario, double tx_power_w, double alpha_uniform) {
    return combined_snr(PilotAllocation::uniform(scenario.config.num_bs, alpha_uniform),
                        link_state(scenario, tx_power_w));
}

FixedRatioPower traditional_scheme_min_power(const Scenario& scenario, double target_rate_bps,
                                             double alpha_uniform, double rel_tol) {
    const SystemConfig& cfg = scenario.config;
    const double target = required_snr(target_rate_bps, cfg.bandwidth_hz);
    const double p_max = max_tx_power_w(cfg);
    const PilotAllocation alloc = PilotAllocation::uniform(cfg.num_bs, alpha_uniform);
    auto excess = [&](double log_p) { return combined_snr(alloc, link_state(scenario, std::exp(log_p))) - target; };

    FixedRatioPower out;
    if (!(excess(std::log(p_max)) >= 0.0)) {
        out.status = SolveStatus::infeasible;
        out.tx_power_w = p_max;
        return out;
    }
    const double p_lo = std::min(lowest_useful_power(scenario, target), p_max * 0.5);
    const BisectionResult root = bisect(excess, std::log(p_lo), std::log(p_max), rel_tol, kMaxBisectionIterations);
    out.tx_power_w = std::exp(root.hi);
    out.energy_efficiency_bit_per_joule = energy_efficiency(target_rate_bps, out.tx_power_w, cfg);
    return out;
}

void validate(const SearchBudget& budget) {
    if (budget.population < 2) throw ContractError("search population must be >= 2");
    if (budget.generations < 1) throw ContractError("search generations must be >= 1");
    if (!(budget.mutation_scale > 0.0)) throw ContractError("mutation scale must be positive");
    if (static_cast<long long>(budget.population) * budget.generations > SearchBudget::kMaxEvaluations) {
        throw ContractError("search budget exceeds " + std::to_string(SearchBudget::kMaxEvaluations) +
                            " evaluations");
    }
}

SeSolution stochastic_search_se(const LinkState& state, double bandwidth_hz, const SearchBudget& budget) {
    validate(budget);
    const std::size_t pop = static_cast<std::size_t>(budget.population);
    const std::size_t width = state.per_bs_snr.size();

    std::mt19937_64 rng(budget.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::normal_distribution<double> gauss(0.0, budget.mutation_scale);
    std::uniform_int_distribution<std::size_t> pick(0, pop - 1);

    AllocationBatch current(pop, width);
    for (std::size_t i = 0; i < pop; ++i) {
        for (std::size_t m = 0; m < width; ++m) current.at(i, m) = clip_ratio(unit(rng));
    }
    std::vector<double> fitness(pop);
    combined_snr_batch(current, state, fitness);

    auto best_index = [&] {
        return static_cast<std::size_t>(std::max_element(fitness.begin(), fitness.end()) - fitness.begin());
    };
    auto tournament = [&] {
        const std::size_t a = pick(rng);
        const std::size_t b = pick(rng);
        return fitness[a] >= fitness[b] ? a : b;
    };

    AllocationBatch next(pop, width);
    for (int gen = 1; gen < budget.generations; ++gen) {
        const std::size_t elite = best_index();
        for (std::size_t m = 0; m < width; ++m) next.at(0, m) = current.at(elite, m);
        for (std::size_t i = 1; i < pop; ++i) {
            const std::size_t p1 = tournament();
            const std::size_t p2 = tournament();
            for (std::size_t m = 0; m < width; ++m) {
                const double w = unit(rng);
                const double blended = w * current.at(p1, m) + (1.0 - w) * current.at(p2, m);
                next.at(i, m) = clip_ratio(blended + gauss(rng));
            }
        }
        std::swap(current, next);
        combined_snr_batch(current, state, fitness);
    }

    const std::size_t best = best_index();
    SeSolution sol;
    sol.method = SolveMethod::search;
    sol.allocation.ratios = current.candidate(best);
    sol.optimal_snr = fitness[best];
    sol.capacity_bps = capacity_bps(bandwidth_hz, sol.optimal_snr);
    sol.residuals = stationarity_residuals(sol.optimal_snr, sol.allocation.ratios, state);
    sol.iterations = budget.generations;
    return sol;
}

SeSolution stochastic_search_se(const Scenario& scenario, double tx_power_w, const SearchBudget& budget) {
    SeSolution sol = stochastic_search_se(link_state(scenario, tx_power_w), scenario.config.bandwidth_hz, budget);
    sol.tx_power_w = tx_power_w;
    return sol;
}

EeSolution stochastic_search_ee(const Scenario& scenario, double target_rate_bps, const SearchBudget& budget,
                                double rel_tol) {
    validate(budget);
    if (!(target_rate_bps > 0.0)) throw ContractError("stochastic_search_ee: target rate must be positive");
    const SystemConfig& cfg = scenario.config;

    EeSolution sol;
    sol.method = SolveMethod::search;
    sol.target_rate_bps = target_rate_bps;
    sol.target_snr = required_snr(target_rate_bps, cfg.bandwidth_hz);

    auto search_at = [&](double p) { return stochastic_search_se(scenario, p, budget); };

    const double p_max = max_tx_power_w(cfg);
    const SeSolution at_max = search_at(p_max);
    if (!(at_max.optimal_snr >= sol.target_snr)) {
        sol.status = SolveStatus::infeasible;
        sol.min_tx_power_w = p_max;
        sol.achievable_rate_at_max_bps = at_max.capacity_bps;
        return sol;
    }

    double lo = std::log(std::min(lowest_useful_power(scenario, sol.target_snr), p_max * 0.5));
    double hi = std::log(p_max);
    SeSolution best = at_max;
    int iterations = 0;
    while (hi - lo > rel_tol && iterations < kMaxBisectionIterations) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        SeSolution trial = search_at(std::exp(mid));
        if (trial.optimal_snr >= sol.target_snr) {
            hi = mid;
            best = std::move(trial);
        } else {
            lo = mid;
        }
        ++iterations;
    }

    sol.min_tx_power_w = std::exp(hi);
    sol.allocation = best.allocation;
    sol.achieved_snr = best.optimal_snr;
    sol.energy_efficiency_bit_per_joule = energy_efficiency(target_rate_bps, sol.min_tx_power_w, cfg);
    sol.iterations = iterations;
    return sol;
}

}  // namespace pilotopt
