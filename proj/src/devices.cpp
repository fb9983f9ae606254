#include "microgrid/devices.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace microgrid {

double lhv_btu_ft3_to_kwh_m3(double lhv_btu_per_ft3) {
    return lhv_btu_per_ft3 * kKwhPerBtu / kM3PerFt3;
}

double wind_power(double v, const WindParams& p) {
    if (v < p.cut_in_ms || v > p.cut_out_ms) return 0.0;
    if (v >= p.rated_ms) return p.rated_power_kw;
    const double ci3 = p.cut_in_ms * p.cut_in_ms * p.cut_in_ms;
    const double r3 = p.rated_ms * p.rated_ms * p.rated_ms;
    const double v3 = v * v * v;
    return (v3 - ci3) / (r3 - ci3) * p.rated_power_kw;
}

double pv_power(double irradiance_w_m2, const PvParams& p) {
    const double watts = irradiance_w_m2 * p.mppt_efficiency * p.panel_area_m2 *
                         p.panel_efficiency * std::cos(p.incidence_angle_rad);
    return std::clamp(watts / 1000.0, 0.0, p.power_max_kw);
}

double hydro_power(double flow_m3_s, const HydroParams& p) {
    const double watts = p.water_density_kg_m3 * p.gravity_ms2 * flow_m3_s *
                         p.head_m * p.hydraulic_efficiency;
    return std::clamp(watts / 1000.0, 0.0, p.power_max_kw);
}

double hydro_mech_loss(const HydroParams& p) {
    const double watts = p.friction_water * p.water_speed_ms * p.water_speed_ms +
                         p.friction_shaft * p.shaft_speed_rad_s * p.shaft_speed_rad_s;
    return watts / 1000.0;
}

double hydro_turbine_efficiency(double flow_m3_s, const HydroParams& p) {
    const double hydraulic_kw = p.water_density_kg_m3 * p.gravity_ms2 *
                                flow_m3_s * p.head_m / 1000.0;
    if (hydraulic_kw <= 0.0)
        throw std::domain_error("hydro_turbine_efficiency: zero hydraulic power");
    return std::clamp((hydraulic_kw - hydro_mech_loss(p)) / hydraulic_kw, 0.0, 1.0);
}

double mt_efficiency_raw(double power_kw) {
    double sum = 0.0;
    const double x = power_kw / kMtReferencePowerKw;
    double xp = 1.0;
    for (int i = 1; i <= 4; ++i) {
        xp *= x;
        sum += 0.372 / (1.0 + std::pow(i / 3.445, 3.529)) * xp;
    }
    return sum;
}

double mt_efficiency(double power_kw, const MtParams& p) {
    return std::clamp(mt_efficiency_raw(power_kw), p.efficiency_floor,
                      p.efficiency_cap);
}

double mt_fuel_cost(double power_kw, double dt_hours, const MtParams& p) {
    const double energy_kwh = power_kw * dt_hours;
    return p.gas_price_usd_per_m3 * energy_kwh /
           (p.lhv_kwh_per_m3 * mt_efficiency(power_kw, p));
}

double de_fuel_cost_raw(double per_unit_power, const DeParams& p) {
    double sum = 0.0;
    double xp = 1.0;
    for (int i = 1; i <= p.degree; ++i) {
        xp *= per_unit_power;
        const double coeff = p.coefficient_override
                                 ? p.coefficient_override->at(i - 1)
                                 : 0.284 - 1.426 * std::log10(double(i));
        sum += coeff * xp;
    }
    return sum;
}

double de_fuel_cost(double power_kw, const DeParams& p) {
    const double per_unit = power_kw / p.rated_power_kw;
    return std::max(de_fuel_cost_raw(per_unit, p) * p.cost_scale, p.cost_floor);
}

BatteryStep battery_step(double energy_prev_kwh, double supply_total_kw,
                         double load_kw, const BatteryParams& p,
                         double dt_hours) {
    const double inverter_side_load = load_kw / p.inverter_efficiency;
    const double eta = p.charge_discharge_efficiency;
    if (supply_total_kw >= inverter_side_load) {
        double charge_kw = std::min(supply_total_kw - inverter_side_load,
                                    p.power_max_kw);
        double delta = charge_kw * eta * dt_hours;
        const double headroom = p.capacity_kwh - energy_prev_kwh;
        if (delta > headroom) {
            delta = std::max(headroom, 0.0);
            charge_kw = delta / (eta * dt_hours);
        }
        return {energy_prev_kwh + delta, -charge_kw};
    }
    double discharge_kw = std::min(inverter_side_load - supply_total_kw,
                                   p.power_max_kw);
    double delta = discharge_kw * eta * dt_hours;
    const double available = energy_prev_kwh - p.min_energy_kwh;
    if (delta > available) {
        delta = std::max(available, 0.0);
        discharge_kw = delta / (eta * dt_hours);
    }
    return {energy_prev_kwh - delta, discharge_kw};
}

}  // namespace microgrid
