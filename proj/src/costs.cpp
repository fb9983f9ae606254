#include "microgrid/costs.hpp"

#include <algorithm>
#include <cmath>

#include "microgrid/devices.hpp"

namespace microgrid {

double depreciation_cost(const UnitParams& u, double depreciation_factor) {
    const double d = depreciation_factor;
    const int m = u.service_life_years;
    const double growth = std::pow(1.0 + d, m);
    const double capital_recovery = d * growth / (growth - 1.0);
    return u.install_cost_usd /
           (8760.0 * u.power_max_kw * u.capacity_factor) * capital_recovery;
}

double maintenance_cost(const UnitParams& u, double t_hours) {
    const double t = t_hours;
    const double visit_cost =
        3014.0 / 3125.0 * u.maintenance_base_cost_usd * std::exp(286.0 * t / 3200.0);
    const double visit_prob =
        (1.0 + t / 502.0 + t * t / 3398.0) * u.maintenance_base_prob;
    return visit_cost * visit_prob;
}

double interruption_cost(double p_ll_kw, const EconomicParams& econ) {
    const double lh = p_ll_kw * econ.interruption_history;
    return econ.interruption_a +
           econ.interruption_b * p_ll_kw * econ.priority_weight() +
           econ.interruption_c * econ.interruption_history +
           econ.interruption_d * lh * lh;
}

EvaluationContext make_context(const Scenario& s) {
    EvaluationContext ctx;
    const std::size_t T = s.steps();
    ctx.dt_hours = s.dt_hours();
    ctx.load_kw = s.load.values;
    ctx.wt_kw.resize(T);
    ctx.pv_kw.resize(T);
    ctx.hydro_avail_kw.resize(T);
    ctx.ll_max_kw.resize(T);
    ctx.om_total_usd.assign(T, 0.0);
    for (std::size_t t = 0; t < T; ++t) {
        ctx.wt_kw[t] = wind_power(s.wind_speed.values[t], s.devices.wind);
        ctx.pv_kw[t] = pv_power(s.irradiance.values[t], s.devices.pv);
        ctx.hydro_avail_kw[t] = hydro_power(s.water_flow.values[t], s.devices.hydro);
        ctx.ll_max_kw[t] = s.economics.interruptible_fraction * s.load.values[t];
        const double hour = static_cast<double>(t) * ctx.dt_hours;
        for (const auto& u : s.units) ctx.om_total_usd[t] += maintenance_cost(u, hour);
    }
    for (const auto& u : s.units) {
        const auto idx = static_cast<std::size_t>(u.kind);
        ctx.dep_rate[idx] = depreciation_cost(u, s.economics.depreciation_factor);
        ctx.fee_rate[idx] = u.management_fee_usd_per_mwh / 1000.0;  // per kWh
    }
    for (int j = 0; j < 3; ++j) {
        const auto p = static_cast<Pollutant>(j);
        ctx.mt_emission_usd_per_mwh +=
            s.emissions.processing_cost(p) * s.emissions.factor(UnitKind::MT, p);
        ctx.de_emission_usd_per_mwh +=
            s.emissions.processing_cost(p) * s.emissions.factor(UnitKind::DE, p);
    }
    return ctx;
}

namespace {

double generation_cost_ctx(const DispatchSchedule& schedule, const Scenario& s,
                           const EvaluationContext& ctx, const StochasticFactors& sf) {
    const std::size_t T = schedule.horizon();
    const double dt = ctx.dt_hours;
    double depreciation = 0.0, fees = 0.0, fuel = 0.0, maintenance = 0.0;
    auto rate = [&](UnitKind k) { return ctx.dep_rate[static_cast<std::size_t>(k)]; };
    auto fee = [&](UnitKind k) { return ctx.fee_rate[static_cast<std::size_t>(k)]; };
    for (std::size_t t = 0; t < T; ++t) {
        const double e_mt = schedule.mt_kw[t] * dt;
        const double e_de = schedule.de_kw[t] * dt;
        const double e_hg = schedule.hg_kw[t] * dt;
        const double e_wt = ctx.wt_kw[t] * dt;
        const double e_pv = ctx.pv_kw[t] * dt;
        depreciation += rate(UnitKind::MT) * e_mt + rate(UnitKind::DE) * e_de +
                        rate(UnitKind::HG) * e_hg + rate(UnitKind::WT) * e_wt +
                        rate(UnitKind::PV) * e_pv;
        fees += fee(UnitKind::MT) * e_mt + fee(UnitKind::DE) * e_de +
                fee(UnitKind::HG) * e_hg + fee(UnitKind::WT) * e_wt +
                fee(UnitKind::PV) * e_pv;
        fuel += mt_fuel_cost(schedule.mt_kw[t], dt, s.devices.mt) +
                de_fuel_cost(schedule.de_kw[t], s.devices.de) * dt;
        maintenance += ctx.om_total_usd[t];
    }
    return depreciation * sf.eps1 + maintenance * sf.eps2 + fuel + fees;
}

double environmental_cost_ctx(const DispatchSchedule& schedule,
                              const EvaluationContext& ctx,
                              const StochasticFactors& sf) {
    const double dt = ctx.dt_hours;
    double mwh_mt = 0.0, mwh_de = 0.0;
    for (std::size_t t = 0; t < schedule.horizon(); ++t) {
        mwh_mt += schedule.mt_kw[t] * dt / 1000.0;
        mwh_de += schedule.de_kw[t] * dt / 1000.0;
    }
    return sf.eps3 * (ctx.mt_emission_usd_per_mwh * mwh_mt +
                      ctx.de_emission_usd_per_mwh * mwh_de);
}

double operating_cost_ctx(const DispatchSchedule& schedule, const Scenario& s,
                          const EvaluationContext& ctx, const StochasticFactors& sf) {
    double interruption = 0.0;
    for (std::size_t t = 0; t < schedule.horizon(); ++t)
        interruption += interruption_cost(schedule.ll_kw[t], s.economics);
    return (generation_cost_ctx(schedule, s, ctx, sf) + interruption) * sf.eps;
}

double balance_residual_ctx(const DispatchSchedule& schedule,
                            const EvaluationContext& ctx, std::size_t t) {
    const double supply = schedule.mt_kw[t] + schedule.de_kw[t] + schedule.hg_kw[t] +
                          ctx.wt_kw[t] + ctx.pv_kw[t];
    return supply + schedule.ll_kw[t] - (ctx.load_kw[t] - schedule.bs_kw[t]);
}

struct PenaltyTerms {
    double balance_kwh = 0.0;
    double box_kwh = 0.0;
    double soc_kwh = 0.0;
};

PenaltyTerms penalty_terms(const DispatchSchedule& schedule, const Scenario& s,
                           const EvaluationContext& ctx) {
    PenaltyTerms terms;
    const double dt = ctx.dt_hours;
    const double mt_max = s.unit(UnitKind::MT).power_max_kw;
    const double de_max = s.unit(UnitKind::DE).power_max_kw;
    const BatteryParams& b = s.battery;
    double energy = b.initial_energy_kwh;
    auto box = [&](double v, double lo, double hi) {
        if (v < lo) terms.box_kwh += (lo - v) * dt;
        if (v > hi) terms.box_kwh += (v - hi) * dt;
    };
    for (std::size_t t = 0; t < schedule.horizon(); ++t) {
        const double residual = balance_residual_ctx(schedule, ctx, t);
        if (std::abs(residual) > kBalanceToleranceKw)
            terms.balance_kwh += std::abs(residual) * dt;
        box(schedule.mt_kw[t], 0.0, mt_max);
        box(schedule.de_kw[t], 0.0, de_max);
        box(schedule.hg_kw[t], 0.0, ctx.hydro_avail_kw[t]);
        box(schedule.ll_kw[t], 0.0, ctx.ll_max_kw[t]);
        box(schedule.bs_kw[t], -b.power_max_kw, b.power_max_kw);
        // Trajectory implied by the battery column as written, unrepaired.
        energy -= schedule.bs_kw[t] * b.charge_discharge_efficiency * dt;
        const double excursion = std::max(energy - b.capacity_kwh, 0.0) +
                                 std::max(b.min_energy_kwh - energy, 0.0);
        if (excursion > 1e-9) terms.soc_kwh += excursion;
    }
    return terms;
}

}  // namespace

double generation_cost(const DispatchSchedule& schedule, const Scenario& s,
                       const StochasticFactors& sf) {
    return generation_cost_ctx(schedule, s, make_context(s), sf);
}

double operating_cost(const DispatchSchedule& schedule, const Scenario& s,
                      const StochasticFactors& sf) {
    return operating_cost_ctx(schedule, s, make_context(s), sf);
}

double environmental_cost(const DispatchSchedule& schedule, const Scenario& s,
                          const StochasticFactors& sf) {
    return environmental_cost_ctx(schedule, make_context(s), sf);
}

double balance_residual(const DispatchSchedule& schedule, const Scenario& s,
                        std::size_t t) {
    return balance_residual_ctx(schedule, make_context(s), t);
}

double penalty(const DispatchSchedule& schedule, const Scenario& s,
               const PenaltyWeights& w) {
    const PenaltyTerms terms = penalty_terms(schedule, s, make_context(s));
    return w.balance_usd_per_kwh * terms.balance_kwh +
           w.box_usd_per_kwh * terms.box_kwh + w.soc_usd_per_kwh * terms.soc_kwh;
}

EvaluationResult evaluate_detailed(const DispatchSchedule& schedule,
                                   const Scenario& s, const EvaluationContext& ctx,
                                   const StochasticFactors& sf,
                                   const PenaltyWeights& w) {
    const std::size_t T = schedule.horizon();
    const double dt = ctx.dt_hours;

    EvaluationResult r;
    r.realized = schedule;
    r.battery_energy_kwh.resize(T);
    r.residual_kw.resize(T);

    // Battery repair: the storage acts as the balancing slack within its
    // power and energy limits; whatever the proposal said, the realized
    // column is what the trajectory can actually deliver.
    double energy = s.battery.initial_energy_kwh;
    for (std::size_t t = 0; t < T; ++t) {
        const double supply = schedule.mt_kw[t] + schedule.de_kw[t] +
                              schedule.hg_kw[t] + ctx.wt_kw[t] + ctx.pv_kw[t];
        const double effective_load = ctx.load_kw[t] - schedule.ll_kw[t];
        const BatteryStep step =
            battery_step(energy, supply, effective_load, s.battery, dt);
        energy = step.energy_kwh;
        r.realized.bs_kw[t] = step.power_kw;
        r.battery_energy_kwh[t] = energy;
        r.residual_kw[t] = balance_residual_ctx(r.realized, ctx, t);
    }

    const PenaltyTerms terms = penalty_terms(r.realized, s, ctx);
    r.objectives.penalty_usd = w.balance_usd_per_kwh * terms.balance_kwh +
                               w.box_usd_per_kwh * terms.box_kwh +
                               w.soc_usd_per_kwh * terms.soc_kwh;
    r.objectives.operating_cost_usd = operating_cost_ctx(r.realized, s, ctx, sf);
    r.objectives.environmental_cost_usd = environmental_cost_ctx(r.realized, ctx, sf);
    return r;
}

ObjectiveVector evaluate(const DispatchSchedule& schedule, const Scenario& s,
                         const StochasticFactors& sf) {
    return evaluate_detailed(schedule, s, make_context(s), sf).objectives;
}

}  // namespace microgrid
