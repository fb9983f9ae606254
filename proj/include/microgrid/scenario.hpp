#pragma once

#include <array>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "microgrid/devices.hpp"

namespace microgrid {

enum class UnitKind { MT = 0, HG, DE, WT, PV, ES };
enum class Pollutant { CO2 = 0, NOx, SO2 };

inline constexpr std::array<UnitKind, 5> kGeneratorKinds = {
    UnitKind::MT, UnitKind::HG, UnitKind::DE, UnitKind::WT, UnitKind::PV};

std::string_view to_string(UnitKind kind);
std::string_view to_string(Pollutant p);
UnitKind unit_kind_from_string(std::string_view s);

struct TimeSeries {
    std::vector<double> values;
    double step_hours = 1.0;

    bool operator==(const TimeSeries&) const = default;
};

struct UnitParams {
    UnitKind kind = UnitKind::MT;
    double power_max_kw = 0.0;
    double management_fee_usd_per_mwh = 0.0;
    int service_life_years = 1;
    double install_cost_usd = 0.0;
    double capacity_factor = 1.0;
    double maintenance_base_cost_usd = 0.0;   // K_m(0)
    double maintenance_base_prob = 0.0;       // P(0)

    bool operator==(const UnitParams&) const = default;
};

struct EmissionTable {
    std::array<double, 3> processing_cost_usd_per_kg{};          // by Pollutant
    std::array<std::array<double, 3>, 5> factor_kg_per_mwh{};    // [generator][pollutant]

    double factor(UnitKind kind, Pollutant p) const {
        return factor_kg_per_mwh[static_cast<std::size_t>(kind)]
                                [static_cast<std::size_t>(p)];
    }
    double& factor(UnitKind kind, Pollutant p) {
        return factor_kg_per_mwh[static_cast<std::size_t>(kind)]
                                [static_cast<std::size_t>(p)];
    }
    double processing_cost(Pollutant p) const {
        return processing_cost_usd_per_kg[static_cast<std::size_t>(p)];
    }

    bool operator==(const EmissionTable&) const = default;
};

enum class LoadPriority { Normal = 1, Important = 2, Critical = 3 };
enum class StochasticMode { Deterministic, Seeded };

struct EconomicParams {
    double depreciation_factor = 0.08;
    double gas_price_usd_per_m3 = 0.31;
    double gas_heating_value_btu_per_ft3 = 1000.0;
    double interruption_a = 0.0;
    double interruption_b = 1.0;
    double interruption_c = 0.0;
    double interruption_d = 0.01;
    double interruptible_fraction = 0.2;
    LoadPriority load_priority = LoadPriority::Normal;
    double interruption_history = 0.3;   // H in [0,1]
    StochasticMode stochastic_mode = StochasticMode::Deterministic;

    double priority_weight() const { return static_cast<double>(load_priority); }

    bool operator==(const EconomicParams&) const = default;
};

struct DeviceModels {
    WindParams wind;
    PvParams pv;
    HydroParams hydro;
    MtParams mt;
    DeParams de;

    bool operator==(const DeviceModels&) const = default;
};

struct Scenario {
    int horizon_hours = 24;
    TimeSeries load;          // kW
    TimeSeries wind_speed;    // m/s
    TimeSeries irradiance;    // W/m²
    TimeSeries water_flow;    // m³/s
    std::vector<UnitParams> units;
    BatteryParams battery;
    EmissionTable emissions;
    EconomicParams economics;
    DeviceModels devices;

    double dt_hours() const { return load.step_hours; }
    std::size_t steps() const { return load.values.size(); }
    const UnitParams& unit(UnitKind kind) const;
    const UnitParams* find_unit(UnitKind kind) const;

    bool operator==(const Scenario&) const = default;
};

struct ScenarioError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ScenarioParseError : ScenarioError {
    using ScenarioError::ScenarioError;
};
struct ScenarioValidationError : ScenarioError {
    using ScenarioError::ScenarioError;
};

// Load a scenario document (INI-style sections; see README for the grammar)
// plus the time-series CSV files it references. Throws ScenarioParseError on
// malformed input and ScenarioValidationError naming the first violated
// invariant.
Scenario load_scenario(const std::filesystem::path& path);

// Serialize a scenario back to the same format; CSVs are written next to the
// document. load_scenario(write_scenario(s)) round-trips exactly.
void write_scenario(const Scenario& s, const std::filesystem::path& ini_path);

// Every violated invariant, each naming the field and the broken rule.
// Empty iff the scenario is valid.
std::vector<std::string> validate(const Scenario& s);

// The built-in demo system: 90 kW peak load with an evening peak, 5 kW /
// 25 kWh storage, 20% interruptible load, and the published unit parameter
// and emission tables.
Scenario demo_scenario();

// Directory holding the bundled copy of the demo scenario document.
// Overridable with the MICROGRID_DEMO_DIR environment variable.
std::filesystem::path demo_data_dir();

}  // namespace microgrid
