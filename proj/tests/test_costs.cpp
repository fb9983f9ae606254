#include <doctest.h>

#include <cmath>
#include <fstream>
#include <map>

#include "microgrid/costs.hpp"
#include "microgrid/devices.hpp"

using namespace microgrid;

namespace {

// Exact balance at every hour with the battery idle: hydro first, then MT,
// then DE picks up the remainder.
DispatchSchedule balanced_schedule(const Scenario& s) {
    const EvaluationContext ctx = make_context(s);
    const std::size_t T = s.steps();
    DispatchSchedule sched = DispatchSchedule::zeros(T);
    for (std::size_t t = 0; t < T; ++t) {
        sched.hg_kw[t] = ctx.hydro_avail_kw[t];
        double needed = ctx.load_kw[t] - ctx.wt_kw[t] - ctx.pv_kw[t] - sched.hg_kw[t];
        sched.mt_kw[t] = std::min(needed, s.unit(UnitKind::MT).power_max_kw);
        needed -= sched.mt_kw[t];
        sched.de_kw[t] = needed;
    }
    return sched;
}

std::map<std::string, double> load_oracle(const char* name) {
    std::ifstream in(std::string(MICROGRID_TEST_DATA_DIR) + "/" + name);
    REQUIRE(in.good());
    std::map<std::string, double> vals;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        const auto comma = line.find(',');
        vals[line.substr(0, comma)] = std::stod(line.substr(comma + 1));
    }
    return vals;
}

}  // namespace

TEST_CASE("depreciation cost") {
    UnitParams u;
    u.install_cost_usd = 8760.0;
    u.power_max_kw = 1.0;
    u.capacity_factor = 1.0;
    u.service_life_years = 1;
    // one-year life collapses to C*(1+d)/(8760*P*f)
    CHECK(depreciation_cost(u, 0.1) == doctest::Approx(1.1).epsilon(1e-12));

    // small d approaches straight-line depreciation C/(8760*P*f*m)
    u.service_life_years = 10;
    CHECK(depreciation_cost(u, 1e-9) ==
          doctest::Approx(u.install_cost_usd / (8760.0 * 10.0)).epsilon(1e-6));

    u.install_cost_usd = 50000.0;
    u.power_max_kw = 45.0;
    u.capacity_factor = 0.6;
    u.service_life_years = 10;
    CHECK(depreciation_cost(u, 0.08) ==
          doctest::Approx(0.031504627240207028).epsilon(1e-12));
}

TEST_CASE("maintenance cost") {
    UnitParams u;
    u.maintenance_base_cost_usd = 1.0;
    u.maintenance_base_prob = 1.0;
    CHECK(maintenance_cost(u, 0.0) == doctest::Approx(3014.0 / 3125.0).epsilon(1e-12));

    u.maintenance_base_cost_usd = 0.0;
    for (double t : {0.0, 5.0, 100.0}) CHECK(maintenance_cost(u, t) == 0.0);

    u.maintenance_base_cost_usd = 0.05;
    u.maintenance_base_prob = 0.02;
    double prev = 0.0;
    for (double t = 0.0; t <= 48.0; t += 1.0) {
        const double m = maintenance_cost(u, t);
        CHECK(m >= prev);
        prev = m;
    }
}

TEST_CASE("interruption cost") {
    EconomicParams econ;  // A=0, B=1, C=0, D=0.01, L=normal, H=0.3
    CHECK(interruption_cost(0.0, econ) == 0.0);

    EconomicParams custom;
    custom.interruption_a = 1.0;
    custom.interruption_b = 1.0;
    custom.interruption_c = 2.0;
    custom.interruption_d = 0.01;
    custom.load_priority = LoadPriority::Important;
    custom.interruption_history = 0.5;
    CHECK(interruption_cost(10.0, custom) == doctest::Approx(22.25).epsilon(1e-12));

    // D = 0 makes the cost linear with slope B*L
    EconomicParams linear;
    linear.interruption_d = 0.0;
    linear.load_priority = LoadPriority::Critical;
    const double slope = linear.interruption_b * 3.0;
    CHECK(interruption_cost(4.0, linear) - interruption_cost(3.0, linear) ==
          doctest::Approx(slope).epsilon(1e-12));
}

TEST_CASE("environmental cost per MWh matches the published tables") {
    const Scenario s = demo_scenario();
    const auto sf = StochasticFactors::deterministic();
    const std::size_t T = s.steps();

    DispatchSchedule de_only = DispatchSchedule::zeros(T);
    for (std::size_t t = 0; t < T; ++t) de_only.de_kw[t] = 1000.0 / double(T);
    const double de_expected = 0.013 * 1.55 + 3.892 * 19.8 + 0.892 * 0.51;
    CHECK(environmental_cost(de_only, s, sf) ==
          doctest::Approx(de_expected).epsilon(1e-9));

    DispatchSchedule mt_only = DispatchSchedule::zeros(T);
    for (std::size_t t = 0; t < T; ++t) mt_only.mt_kw[t] = 1000.0 / double(T);
    const double mt_expected = 0.013 * 1.65 + 3.892 * 0.50 + 0.892 * 0.01;
    CHECK(environmental_cost(mt_only, s, sf) ==
          doctest::Approx(mt_expected).epsilon(1e-9));

    DispatchSchedule clean = DispatchSchedule::zeros(T);
    for (std::size_t t = 0; t < T; ++t) clean.hg_kw[t] = 20.0;
    CHECK(environmental_cost(clean, s, sf) == 0.0);
}

TEST_CASE("environmental cost is linear in MT and DE energy") {
    const Scenario s = demo_scenario();
    const auto sf = StochasticFactors::deterministic();
    DispatchSchedule half = DispatchSchedule::zeros(s.steps());
    for (std::size_t t = 0; t < s.steps(); ++t) {
        half.mt_kw[t] = 10.0;
        half.de_kw[t] = 7.5;
    }
    DispatchSchedule full = half;
    for (std::size_t t = 0; t < s.steps(); ++t) {
        full.mt_kw[t] *= 2.0;
        full.de_kw[t] *= 2.0;
    }
    CHECK(environmental_cost(full, s, sf) ==
          doctest::Approx(2.0 * environmental_cost(half, s, sf)).epsilon(1e-12));
}

TEST_CASE("generation cost against the frozen line-item oracle") {
    const Scenario s = demo_scenario();
    const auto oracle = load_oracle("generation_cost_oracle.csv");

    DispatchSchedule sched = DispatchSchedule::zeros(s.steps());
    sched.de_kw[0] = 30.0;
    const double total =
        generation_cost(sched, s, StochasticFactors::deterministic());
    CHECK(total == doctest::Approx(oracle.at("total")).epsilon(1e-9));

    // the all-zero schedule carries only the baseline terms
    const DispatchSchedule zeros = DispatchSchedule::zeros(s.steps());
    const double baseline =
        generation_cost(zeros, s, StochasticFactors::deterministic());
    CHECK(baseline == doctest::Approx(oracle.at("om_total") + oracle.at("iv_wt") +
                                      oracle.at("fee_wt") + oracle.at("iv_pv") +
                                      oracle.at("fee_pv"))
                          .epsilon(1e-9));

    // factor structure: eps1 scales depreciation only, eps2 maintenance only
    StochasticFactors sf;
    sf.eps1 = 1.5;
    const double iv_all = oracle.at("iv_de") + oracle.at("iv_wt") + oracle.at("iv_pv");
    CHECK(generation_cost(sched, s, sf) ==
          doctest::Approx(total + 0.5 * iv_all).epsilon(1e-9));
    sf = StochasticFactors{};
    sf.eps2 = 2.0;
    CHECK(generation_cost(sched, s, sf) ==
          doctest::Approx(total + oracle.at("om_total")).epsilon(1e-9));
}

TEST_CASE("operating cost") {
    const Scenario s = demo_scenario();
    DispatchSchedule sched = DispatchSchedule::zeros(s.steps());
    sched.mt_kw[3] = 20.0;
    sched.ll_kw[5] = 4.0;

    const auto det = StochasticFactors::deterministic();
    double interruption = 0.0;
    for (std::size_t t = 0; t < s.steps(); ++t)
        interruption += interruption_cost(sched.ll_kw[t], s.economics);
    CHECK(operating_cost(sched, s, det) ==
          doctest::Approx(generation_cost(sched, s, det) + interruption)
              .epsilon(1e-12));

    // same substream, same value; ratio bounded by the factor law
    rng::Stream a = rng::substream(99, "factors", 1);
    rng::Stream b = rng::substream(99, "factors", 1);
    const auto fa = StochasticFactors::sample(a);
    const auto fb = StochasticFactors::sample(b);
    CHECK(operating_cost(sched, s, fa) == operating_cost(sched, s, fb));

    const double ratio = operating_cost(sched, s, fa) / operating_cost(sched, s, det);
    CHECK(ratio >= 1.0);
    CHECK(ratio <= 1.01);
}

TEST_CASE("stochastic factor laws hold over many draws") {
    const Scenario s = demo_scenario();
    const DispatchSchedule sched = balanced_schedule(s);
    const auto det = StochasticFactors::deterministic();
    const double f0 = operating_cost(sched, s, det);
    const double ce0 = environmental_cost(sched, s, det);
    REQUIRE(f0 > 0.0);
    REQUIRE(ce0 > 0.0);
    for (std::uint64_t i = 0; i < 1000; ++i) {
        rng::Stream stream = rng::substream(4242, "stochastic-factors", i);
        const auto sf = StochasticFactors::sample(stream);
        const double fr = operating_cost(sched, s, sf) / f0;
        const double cer = environmental_cost(sched, s, sf) / ce0;
        CHECK(fr >= 1.0);
        CHECK(fr <= 1.01);
        CHECK(cer >= 1.0);
        CHECK(cer <= 1.08);
    }
}

TEST_CASE("balance residual") {
    const Scenario s = demo_scenario();
    const EvaluationContext ctx = make_context(s);

    DispatchSchedule sched = balanced_schedule(s);
    for (std::size_t t = 0; t < s.steps(); ++t)
        CHECK(balance_residual(sched, s, t) == doctest::Approx(0.0).epsilon(1e-12));

    sched.mt_kw[2] += 1.0;  // 1 kW surplus, battery untouched
    CHECK(balance_residual(sched, s, 2) == doctest::Approx(1.0).epsilon(1e-12));

    // a 2 kW surplus absorbed by charging balances exactly (unit inverter)
    DispatchSchedule charging = balanced_schedule(s);
    charging.mt_kw[4] += 2.0;
    const auto r = evaluate_detailed(charging, s, ctx, StochasticFactors::deterministic());
    CHECK(r.realized.bs_kw[4] == doctest::Approx(-2.0).epsilon(1e-12));
    CHECK(r.residual_kw[4] == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("penalty") {
    const Scenario s = demo_scenario();

    DispatchSchedule feasible = balanced_schedule(s);
    CHECK(penalty(feasible, s) == 0.0);

    DispatchSchedule surplus = feasible;
    surplus.mt_kw[7] += 1.0;  // 1 kW residual for one hour at lambda = 1e3
    CHECK(penalty(surplus, s) == doctest::Approx(1000.0).epsilon(1e-9));

    DispatchSchedule over_cap = feasible;
    over_cap.ll_kw[7] = 0.25 * s.load.values[7];  // above the 20% cap
    CHECK(penalty(over_cap, s) > 0.0);

    DispatchSchedule battery_abuse = feasible;
    for (std::size_t t = 0; t < s.steps(); ++t) battery_abuse.bs_kw[t] = 5.0;
    CHECK(penalty(battery_abuse, s) > 0.0);  // drains below the floor
}

TEST_CASE("evaluate: repair, feasibility, purity") {
    const Scenario s = demo_scenario();
    const EvaluationContext ctx = make_context(s);
    const auto det = StochasticFactors::deterministic();

    SUBCASE("all-zero schedule cannot serve the load") {
        const auto r = evaluate_detailed(DispatchSchedule::zeros(s.steps()), s, ctx, det);
        CHECK(r.objectives.penalty_usd > 0.0);
    }

    SUBCASE("deterministic evaluation is bitwise reproducible") {
        const DispatchSchedule sched = balanced_schedule(s);
        const auto a = evaluate_detailed(sched, s, ctx, det);
        const auto b = evaluate_detailed(sched, s, ctx, det);
        CHECK(a.objectives == b.objectives);
        CHECK(a.realized == b.realized);
        CHECK(a.battery_energy_kwh == b.battery_energy_kwh);
    }

    SUBCASE("evaluate penalty equals penalty of the realized schedule") {
        rng::Stream stream(123);
        for (int trial = 0; trial < 20; ++trial) {
            DispatchSchedule sched = DispatchSchedule::zeros(s.steps());
            for (std::size_t t = 0; t < s.steps(); ++t) {
                sched.mt_kw[t] = stream.uniform(0.0, 45.0);
                sched.de_kw[t] = stream.uniform(0.0, 30.0);
                sched.hg_kw[t] = stream.uniform(0.0, 13.0);
                sched.bs_kw[t] = stream.uniform(-5.0, 5.0);
                sched.ll_kw[t] = stream.uniform(0.0, 0.2 * s.load.values[t]);
            }
            const auto r = evaluate_detailed(sched, s, ctx, det);
            CHECK(r.objectives.penalty_usd ==
                  doctest::Approx(penalty(r.realized, s)).epsilon(1e-12));
        }
    }

    SUBCASE("repaired trajectory stays within the battery box") {
        rng::Stream stream(321);
        for (int trial = 0; trial < 50; ++trial) {
            DispatchSchedule sched = DispatchSchedule::zeros(s.steps());
            for (std::size_t t = 0; t < s.steps(); ++t) {
                sched.mt_kw[t] = stream.uniform(0.0, 45.0);
                sched.bs_kw[t] = stream.uniform(-5.0, 5.0);
            }
            const auto r = evaluate_detailed(sched, s, ctx, det);
            for (std::size_t t = 0; t < s.steps(); ++t) {
                CHECK(r.battery_energy_kwh[t] >= s.battery.min_energy_kwh - 1e-12);
                CHECK(r.battery_energy_kwh[t] <= s.battery.capacity_kwh + 1e-12);
                CHECK(std::abs(r.realized.bs_kw[t]) <= s.battery.power_max_kw + 1e-12);
            }
        }
    }

    SUBCASE("battery repair never worsens the hourly balance vs an idle battery") {
        rng::Stream stream(555);
        for (int trial = 0; trial < 200; ++trial) {
            DispatchSchedule sched = DispatchSchedule::zeros(s.steps());
            for (std::size_t t = 0; t < s.steps(); ++t) {
                sched.mt_kw[t] = stream.uniform(0.0, 45.0);
                sched.de_kw[t] = stream.uniform(0.0, 30.0);
                sched.hg_kw[t] = stream.uniform(0.0, 13.0);
                sched.bs_kw[t] = stream.uniform(-5.0, 5.0);
                sched.ll_kw[t] = stream.uniform(0.0, 0.2 * s.load.values[t]);
            }
            const auto r = evaluate_detailed(sched, s, ctx, det);
            for (std::size_t t = 0; t < s.steps(); ++t) {
                const double supply = sched.mt_kw[t] + sched.de_kw[t] + sched.hg_kw[t] +
                                      ctx.wt_kw[t] + ctx.pv_kw[t];
                const double idle_residual = supply + sched.ll_kw[t] - s.load.values[t];
                CHECK(std::abs(r.residual_kw[t]) <= std::abs(idle_residual) + 1e-9);
            }
        }
    }
}
