#pragma once

#include <optional>
#include <vector>

namespace microgrid {

// Per-device physical and fuel-cost models. All functions here are pure;
// parameters arrive via the Scenario.

struct WindParams {
    double cut_in_ms = 3.0;
    double cut_out_ms = 25.0;
    double rated_ms = 15.0;
    double rated_power_kw = 15.0;

    bool operator==(const WindParams&) const = default;
};

struct PvParams {
    double panel_area_m2 = 130.0;
    double mppt_efficiency = 0.9;
    double panel_efficiency = 0.15;
    double incidence_angle_rad = 0.0;
    double power_max_kw = 18.0;

    bool operator==(const PvParams&) const = default;
};

struct HydroParams {
    double water_density_kg_m3 = 1000.0;
    double gravity_ms2 = 9.81;
    double head_m = 12.0;
    double hydraulic_efficiency = 0.85;
    double friction_water = 1.2;   // turbine-water coupling, W·s²/m²
    double friction_shaft = 0.8;   // turbine-shaft coupling, W·s²
    double water_speed_ms = 2.5;
    double shaft_speed_rad_s = 25.0;
    double power_max_kw = 28.0;

    bool operator==(const HydroParams&) const = default;
};

struct MtParams {
    double gas_price_usd_per_m3 = 0.31;
    double lhv_kwh_per_m3 = 10.349721719968359;  // 1000 Btu/ft³ converted
    double efficiency_floor = 0.05;
    double efficiency_cap = 0.95;

    bool operator==(const MtParams&) const = default;
};

struct DeParams {
    int degree = 4;
    std::optional<std::vector<double>> coefficient_override;
    double cost_scale = 30.0;
    double cost_floor = 0.0;
    double rated_power_kw = 30.0;

    bool operator==(const DeParams&) const = default;
};

struct BatteryParams {
    double power_max_kw = 5.0;
    double capacity_kwh = 25.0;
    double initial_energy_kwh = 12.5;
    double min_energy_kwh = 2.5;
    double inverter_efficiency = 1.0;
    double charge_discharge_efficiency = 0.9;

    bool operator==(const BatteryParams&) const = default;
};

// Unit conversion constants for the gas heating value (Btu/ft³ -> kWh/m³).
inline constexpr double kKwhPerBtu = 0.000293071;
inline constexpr double kM3PerFt3 = 0.0283168;
inline constexpr double kMtReferencePowerKw = 65.0;

double lhv_btu_ft3_to_kwh_m3(double lhv_btu_per_ft3);

// Wind turbine output, piecewise in wind speed: zero outside [cut-in,
// cut-out], cubic ramp up to rated speed, flat at rated power above it.
double wind_power(double wind_speed_ms, const WindParams& p);

// PV output under MPPT, clamped to the module's power limit.
double pv_power(double irradiance_w_m2, const PvParams& p);

// Hydro output from water flow, clamped to the module's power limit.
double hydro_power(double flow_m3_s, const HydroParams& p);

// Turbomachinery loss from the two friction couplings, in kW.
double hydro_mech_loss(const HydroParams& p);

// (hydraulic power - mechanical loss) / hydraulic power, clamped to [0,1].
// Throws std::domain_error when hydraulic power is zero.
double hydro_turbine_efficiency(double flow_m3_s, const HydroParams& p);

// Micro gas turbine efficiency as a quartic in output power, clamped into
// [efficiency_floor, efficiency_cap]. The /65 reference power is part of the
// fitted expression, independent of the unit's own rating.
double mt_efficiency(double power_kw, const MtParams& p);
double mt_efficiency_raw(double power_kw);

// Gas cost of producing power_kw for dt_hours.
double mt_fuel_cost(double power_kw, double dt_hours, const MtParams& p);

// Diesel consumption characteristic on per-unit power, scaled and floored.
// The fitted polynomial goes negative near rated power; the floor keeps the
// cost physically meaningful.
double de_fuel_cost(double power_kw, const DeParams& p);
double de_fuel_cost_raw(double per_unit_power, const DeParams& p);

struct BatteryStep {
    double energy_kwh;    // state of charge after the step
    double power_kw;      // realized battery power, positive = discharge
};

// One storage step: charge the surplus of supply over inverter-side load, or
// discharge to cover the deficit, with the energy delta pre-clamped so that
// |power| <= power_max and the state of charge stays in [min, capacity].
BatteryStep battery_step(double energy_prev_kwh, double supply_total_kw,
                         double load_kw, const BatteryParams& p,
                         double dt_hours);

}  // namespace microgrid
