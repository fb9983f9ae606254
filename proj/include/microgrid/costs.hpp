#pragma once

#include <cstdint>
#include <vector>

#include "microgrid/rng.hpp"
#include "microgrid/scenario.hpp"

namespace microgrid {

// Per-hour setpoints for the controllable units plus battery power
// (positive = discharge) and interrupted load.
struct DispatchSchedule {
    std::vector<double> mt_kw;
    std::vector<double> de_kw;
    std::vector<double> hg_kw;
    std::vector<double> bs_kw;
    std::vector<double> ll_kw;

    static DispatchSchedule zeros(std::size_t horizon) {
        DispatchSchedule s;
        s.mt_kw.assign(horizon, 0.0);
        s.de_kw.assign(horizon, 0.0);
        s.hg_kw.assign(horizon, 0.0);
        s.bs_kw.assign(horizon, 0.0);
        s.ll_kw.assign(horizon, 0.0);
        return s;
    }
    std::size_t horizon() const { return mt_kw.size(); }

    bool operator==(const DispatchSchedule&) const = default;
};

struct ObjectiveVector {
    double operating_cost_usd = 0.0;       // F
    double environmental_cost_usd = 0.0;   // CE
    double penalty_usd = 0.0;

    bool operator==(const ObjectiveVector&) const = default;
};

// Correction factors applied to the cost terms. Deterministic mode pins all
// of them to 1; seeded mode draws the whole-cost factor eps in [1, 1.01) and
// the emission factor eps3 in [1, 1.08) from a per-evaluation substream, so
// seeded totals stay within those ratios of the deterministic values.
struct StochasticFactors {
    double eps = 1.0;    // operating-cost factor
    double eps1 = 1.0;   // depreciation factor (available for direct use)
    double eps2 = 1.0;   // maintenance factor (available for direct use)
    double eps3 = 1.0;   // emission processing-cost factor

    static StochasticFactors deterministic() { return {}; }
    static StochasticFactors sample(rng::Stream& stream) {
        StochasticFactors f;
        f.eps = 1.0 + 0.01 * stream.unit();
        f.eps3 = 1.0 + 0.08 * stream.unit();
        return f;
    }
};

struct PenaltyWeights {
    double balance_usd_per_kwh = 1e3;
    double box_usd_per_kwh = 1e3;
    double soc_usd_per_kwh = 1e3;
};

inline constexpr double kBalanceToleranceKw = 1e-6;

// Levelized depreciation of one unit, USD per delivered kWh.
double depreciation_cost(const UnitParams& u, double depreciation_factor);

// Scheduled-maintenance cost of one unit at hour t (expected cost, i.e.
// single-visit cost times the probability of needing the visit).
double maintenance_cost(const UnitParams& u, double t_hours);

// Compensation for interrupting p_ll kW for one step.
double interruption_cost(double p_ll_kw, const EconomicParams& econ);

// Fleet-wide generation cost over the horizon: depreciation and maintenance
// (with their correction factors), fuel for MT and DE, and management fees on
// delivered energy. WT and PV deliver their realized MPPT output.
double generation_cost(const DispatchSchedule& schedule, const Scenario& s,
                       const StochasticFactors& sf);

// (generation + interruption compensation) * eps
double operating_cost(const DispatchSchedule& schedule, const Scenario& s,
                      const StochasticFactors& sf);

// Pollutant processing cost of the schedule; only MT and DE emit.
double environmental_cost(const DispatchSchedule& schedule, const Scenario& s,
                          const StochasticFactors& sf);

// Hourly power-balance residual (generation + interrupted load + battery
// discharge - load), taking the schedule's battery column at face value.
double balance_residual(const DispatchSchedule& schedule, const Scenario& s,
                        std::size_t t);

// Constraint-violation charge of the schedule as written: balance residuals,
// box violations, and battery-energy excursions of the implied trajectory.
// Exactly zero iff every residual is within tolerance and no bound is hit.
double penalty(const DispatchSchedule& schedule, const Scenario& s,
               const PenaltyWeights& w = {});

// Precomputed per-scenario tables used on the evaluation hot path.
struct EvaluationContext {
    double dt_hours = 1.0;
    std::vector<double> load_kw;
    std::vector<double> wt_kw;            // realized wind output
    std::vector<double> pv_kw;            // realized PV output
    std::vector<double> hydro_avail_kw;   // upper bound on HG dispatch
    std::vector<double> ll_max_kw;        // interruptible cap per hour
    std::vector<double> om_total_usd;     // maintenance across the fleet, per hour
    double dep_rate[5] = {};              // USD/kWh by generator kind
    double fee_rate[5] = {};              // USD/kWh by generator kind
    double mt_emission_usd_per_mwh = 0.0; // deterministic part
    double de_emission_usd_per_mwh = 0.0;
};

EvaluationContext make_context(const Scenario& s);

struct EvaluationResult {
    ObjectiveVector objectives;
    DispatchSchedule realized;                 // battery column repaired
    std::vector<double> battery_energy_kwh;   // state of charge after each hour
    std::vector<double> residual_kw;          // per-hour balance residuals
};

// Full evaluation pass: simulate the battery as the balancing slack via
// battery_step (the repaired trajectory replaces the proposed battery
// column), then score operating cost, environmental cost, and penalty.
EvaluationResult evaluate_detailed(const DispatchSchedule& schedule,
                                   const Scenario& s, const EvaluationContext& ctx,
                                   const StochasticFactors& sf,
                                   const PenaltyWeights& w = {});

ObjectiveVector evaluate(const DispatchSchedule& schedule, const Scenario& s,
                         const StochasticFactors& sf);

}  // namespace microgrid
