#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "oracles.hpp"
#include "pilotopt/errors.hpp"
#include "pilotopt/harness.hpp"

using namespace pilotopt;

namespace {

SweepSpec small_power_sweep() {
    SweepSpec spec;
    spec.kind = SweepKind::power_sweep;
    spec.start = 20.0;
    spec.stop = 46.0;
    spec.points = 6;
    spec.budget.population = 20;
    spec.budget.generations = 30;
    return spec;
}

std::string csv_of(const SweepTable& t) {
    std::ostringstream os;
    write_csv(os, t);
    return os.str();
}

}  // namespace

TEST(SweepSpec, PointsIncludeEndpoints) {
    SweepSpec spec = small_power_sweep();
    const auto xs = sweep_points(spec);
    ASSERT_EQ(xs.size(), 6u);
    EXPECT_EQ(xs.front(), 20.0);
    EXPECT_EQ(xs.back(), 46.0);
}

TEST(SweepSpec, Validation) {
    SweepSpec spec = small_power_sweep();
    spec.points = 1;
    EXPECT_THROW(validate(spec), ConfigError);
    spec = small_power_sweep();
    spec.schemes.clear();
    EXPECT_THROW(validate(spec), ConfigError);
    spec = small_power_sweep();
    spec.stop = 50.0;
    EXPECT_NO_THROW(validate(spec));
    EXPECT_THROW(run_power_sweep(reference_scenario(), spec), ConfigError);
}

TEST(SchemeNames, RoundTrip) {
    for (Scheme s : {Scheme::pos, Scheme::aos, Scheme::gas, Scheme::ts}) EXPECT_EQ(parse_scheme(to_string(s)), s);
    EXPECT_FALSE(parse_scheme("xyz").has_value());
}

TEST(PowerSweep, OrderingAndDirectSolve) {
    const Scenario sc = reference_scenario();
    const auto t = run_power_sweep(sc, small_power_sweep());
    ASSERT_EQ(t.rows.size(), 6u);
    double prev = 0.0;
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        EXPECT_EQ(t.rows[i].status, RowStatus::ok);
        const double pos = t.value(i, "pos_snr");
        EXPECT_GE(pos, prev);
        prev = pos;
        for (const char* ts : {"ts_0.01_snr", "ts_0.05_snr", "ts_0.2_snr"}) EXPECT_LE(t.value(i, ts), pos);
        EXPECT_LE(t.value(i, "gas_snr"), pos * (1.0 + 1e-12));
        EXPECT_EQ(pos, solve_se_precise(sc, dbm_to_watt(t.rows[i].x_value)).optimal_snr);
    }
}

TEST(PowerSweep, DegenerateRangeGivesNearIdenticalRows) {
    SweepSpec spec = small_power_sweep();
    spec.start = 30.0;
    spec.stop = 30.0 + 1e-9;
    spec.points = 2;
    const auto t = run_power_sweep(reference_scenario(), spec);
    ASSERT_EQ(t.rows.size(), 2u);
    EXPECT_NEAR(t.value(0, "pos_snr"), t.value(1, "pos_snr"), 1e-6);
}

TEST(PowerSweep, TsOnlyProjection) {
    SweepSpec spec = small_power_sweep();
    spec.schemes = {Scheme::ts};
    const auto t = run_power_sweep(reference_scenario(), spec);
    EXPECT_THROW(t.column("pos_snr"), ContractError);
    EXPECT_NO_THROW(t.column("ts_0.05_rate_bps"));
}

TEST(PowerSweep, ThreadCountDoesNotChangeOutput) {
    SweepSpec spec = small_power_sweep();
    const auto one = csv_of(run_power_sweep(reference_scenario(), spec));
    spec.threads = 4;
    EXPECT_EQ(one, csv_of(run_power_sweep(reference_scenario(), spec)));
}

TEST(RateSweep, EfficiencyFallsAndInfeasibleRowsFlagged) {
    SweepSpec spec;
    spec.kind = SweepKind::rate_sweep;
    spec.start = 1.0;
    spec.stop = 10.0;
    spec.points = 10;
    spec.schemes = {Scheme::pos, Scheme::aos, Scheme::ts};
    const auto t = run_rate_sweep(reference_scenario(), spec);
    double prev = 1e300;
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        if (t.rows[i].x_value <= 8.0) {
            const double ee = t.value(i, "pos_ee_bit_per_j");
            EXPECT_LT(ee, prev);
            prev = ee;
            const double ts = t.value(i, "ts_0.05_ee_bit_per_j");
            if (!std::isnan(ts)) {
                EXPECT_GE(ee, ts * (1.0 - 1e-9));
            }
        }
    }
    EXPECT_EQ(t.rows.back().status, RowStatus::infeasible);
}

TEST(AlphaSweep, UnimodalWithConsistentArgmax) {
    SystemConfig cfg;
    cfg.num_bs = 1;
    const std::vector<double> d{250.0};
    const Scenario sc = scenario_from_distances(cfg, d);
    SweepSpec spec;
    spec.kind = SweepKind::alpha_sweep;
    spec.start = 0.001;
    spec.stop = 0.99;
    spec.points = 199;
    const auto t = run_alpha_sweep(sc, spec);
    std::vector<double> se, ee;
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        se.push_back(t.value(i, "se_bps_per_hz"));
        ee.push_back(t.value(i, "ee_bit_per_j"));
        EXPECT_EQ(t.rows[i].status, RowStatus::ok);
    }
    EXPECT_LE(oracle::smoothed_shape(se).sign_changes, 1);
    EXPECT_LE(oracle::smoothed_shape(ee).sign_changes, 1);
    const auto best = std::max_element(se.begin(), se.end()) - se.begin();
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        EXPECT_EQ(t.value(i, "se_argmax") == 1.0, static_cast<long>(i) == best) << "row " << i;
    }
}

TEST(SingleSolve, TablesCarryBothMethods) {
    const Scenario sc = reference_scenario();
    const auto se = solve_se_table(sc, dbm_to_watt(30.0), true, true, 1e-10);
    EXPECT_EQ(se.rows.size(), 2u);
    const auto ee = solve_ee_table(sc, 90e6, true, true, 1e-10);
    ASSERT_EQ(ee.rows.size(), 2u);
    EXPECT_EQ(ee.rows[0].status, RowStatus::infeasible);
}

TEST(Csv, FormatAndManifest) {
    EXPECT_EQ(format_number(0.1), "0.1");
    EXPECT_EQ(format_number(std::nan("")), "nan");
    EXPECT_EQ(format_number(1e300), "1e+300");
    const auto t = run_power_sweep(reference_scenario(), small_power_sweep());
    const std::string csv = csv_of(t);
    const std::string header = csv.substr(0, csv.find('\n'));
    EXPECT_EQ(header.rfind(",status"), header.size() - 7);
    EXPECT_EQ(header.find(';'), std::string::npos);
    std::ostringstream js;
    write_manifest(js, t);
    EXPECT_NE(js.str().find("\"pos_snr\""), std::string::npos);
}
