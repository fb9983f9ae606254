#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>

#include "microgrid/scenario.hpp"

using namespace microgrid;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir(const char* tag) {
    const fs::path dir = fs::temp_directory_path() / (std::string("microgrid_") + tag);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

}  // namespace

TEST_CASE("demo scenario reproduces the published parameters") {
    const Scenario s = demo_scenario();
    CHECK(s.horizon_hours == 24);
    CHECK(s.load.values.size() == 24);
    CHECK(*std::max_element(s.load.values.begin(), s.load.values.end()) == 90.0);

    CHECK(s.unit(UnitKind::MT).power_max_kw == 45.0);
    CHECK(s.unit(UnitKind::MT).management_fee_usd_per_mwh == 5.6479);
    CHECK(s.unit(UnitKind::MT).service_life_years == 10);
    CHECK(s.unit(UnitKind::HG).power_max_kw == 28.0);
    CHECK(s.unit(UnitKind::HG).management_fee_usd_per_mwh == 3.2143);
    CHECK(s.unit(UnitKind::HG).service_life_years == 15);
    CHECK(s.unit(UnitKind::DE).power_max_kw == 30.0);
    CHECK(s.unit(UnitKind::DE).management_fee_usd_per_mwh == 11.9561);
    CHECK(s.unit(UnitKind::WT).power_max_kw == 15.0);
    CHECK(s.unit(UnitKind::WT).management_fee_usd_per_mwh == 4.1692);
    CHECK(s.unit(UnitKind::PV).power_max_kw == 18.0);
    CHECK(s.unit(UnitKind::PV).management_fee_usd_per_mwh == 1.1973);
    CHECK(s.unit(UnitKind::PV).service_life_years == 20);

    CHECK(s.battery.power_max_kw == 5.0);
    CHECK(s.battery.capacity_kwh == 25.0);
    CHECK(s.economics.interruptible_fraction == 0.2);

    CHECK(s.emissions.factor(UnitKind::DE, Pollutant::NOx) == 19.8);
    CHECK(s.emissions.factor(UnitKind::MT, Pollutant::CO2) == 1.65);
    CHECK(s.emissions.factor(UnitKind::MT, Pollutant::SO2) == 0.01);
    CHECK(s.emissions.processing_cost(Pollutant::NOx) == 3.892);
    for (UnitKind clean : {UnitKind::WT, UnitKind::PV, UnitKind::HG})
        for (int j = 0; j < 3; ++j)
            CHECK(s.emissions.factor(clean, static_cast<Pollutant>(j)) == 0.0);

    CHECK(validate(s).empty());
}

TEST_CASE("bundled demo file matches the built-in scenario") {
    const fs::path file = demo_data_dir() / "scenario.ini";
    REQUIRE(fs::exists(file));
    const Scenario loaded = load_scenario(file);
    CHECK(loaded == demo_scenario());
}

TEST_CASE("write/load round-trips field for field") {
    Scenario s = demo_scenario();
    s.economics.interruption_d = 0.012345678901234567;  // oddball double
    s.load.values[3] = 37.25;
    s.devices.de.coefficient_override = std::vector<double>{0.3, -0.1, -0.4, -0.6};
    const fs::path dir = temp_dir("roundtrip");
    write_scenario(s, dir / "scenario.ini");
    CHECK(load_scenario(dir / "scenario.ini") == s);
}

TEST_CASE("validate reports specific violations") {
    const Scenario good = demo_scenario();

    SUBCASE("series length mismatch") {
        Scenario s = good;
        s.load.values.pop_back();
        const auto v = validate(s);
        REQUIRE(!v.empty());
        CHECK(v.front().find("series length") != std::string::npos);
    }
    SUBCASE("negative load value") {
        Scenario s = good;
        s.load.values[5] = -1.0;
        const auto v = validate(s);
        REQUIRE(v.size() == 1);
        CHECK(v.front().find("negative") != std::string::npos);
    }
    SUBCASE("battery energy ordering") {
        Scenario s = good;
        s.battery.initial_energy_kwh = s.battery.capacity_kwh + 1.0;
        const auto v = validate(s);
        REQUIRE(v.size() == 1);
        CHECK(v.front().find("battery") != std::string::npos);
    }
    SUBCASE("efficiency out of range") {
        Scenario s = good;
        s.battery.charge_discharge_efficiency = 1.2;
        const auto v = validate(s);
        REQUIRE(v.size() == 1);
        CHECK(v.front().find("efficiency range") != std::string::npos);
    }
    SUBCASE("duplicate unit kind") {
        Scenario s = good;
        s.units.push_back(s.units.front());
        CHECK(!validate(s).empty());
    }
    SUBCASE("clean unit with emissions") {
        Scenario s = good;
        s.emissions.factor(UnitKind::WT, Pollutant::CO2) = 0.5;
        CHECK(!validate(s).empty());
    }
    SUBCASE("depreciation factor out of range") {
        Scenario s = good;
        s.economics.depreciation_factor = 1.0;
        CHECK(!validate(s).empty());
    }
    SUBCASE("wind speed ordering") {
        Scenario s = good;
        s.devices.wind.rated_ms = 30.0;  // above cut-out
        CHECK(!validate(s).empty());
    }
}

TEST_CASE("load_scenario rejects malformed and invalid files") {
    const fs::path dir = temp_dir("badfiles");

    SUBCASE("missing file") {
        CHECK_THROWS_AS(load_scenario(dir / "nope.ini"), ScenarioParseError);
    }
    SUBCASE("malformed line") {
        const fs::path f = dir / "bad.ini";
        std::ofstream(f) << "[scenario]\nhorizon_hours 24\n";
        CHECK_THROWS_AS(load_scenario(f), ScenarioParseError);
    }
    SUBCASE("duplicate section key") {
        Scenario s = demo_scenario();
        write_scenario(s, dir / "scenario.ini");
        std::ofstream(dir / "scenario.ini", std::ios::app) << "\n[battery]\n";
        CHECK_THROWS_AS(load_scenario(dir / "scenario.ini"), ScenarioParseError);
    }
    SUBCASE("short series fails validation with its name") {
        Scenario s = demo_scenario();
        write_scenario(s, dir / "scenario.ini");
        {
            std::ofstream f(dir / "load.csv");
            f << "hour,value\n";
            for (int t = 0; t < 23; ++t) f << t << ",50\n";
        }
        try {
            load_scenario(dir / "scenario.ini");
            FAIL("expected validation error");
        } catch (const ScenarioValidationError& e) {
            CHECK(std::string(e.what()).find("series length") != std::string::npos);
        }
    }
    SUBCASE("bad efficiency fails validation naming the rule") {
        Scenario s = demo_scenario();
        s.battery.charge_discharge_efficiency = 1.2;
        write_scenario(s, dir / "scenario.ini");
        try {
            load_scenario(dir / "scenario.ini");
            FAIL("expected validation error");
        } catch (const ScenarioValidationError& e) {
            CHECK(std::string(e.what()).find("efficiency range") != std::string::npos);
        }
    }
}

TEST_CASE("single-field corruptions are caught by validate") {
    // Each mutation breaks exactly one listed invariant.
    using Mutator = void (*)(Scenario&);
    const Mutator mutators[] = {
        [](Scenario& s) { s.load.values[0] = -5.0; },
        [](Scenario& s) { s.wind_speed.values.push_back(1.0); },
        [](Scenario& s) { s.units[0].power_max_kw = 0.0; },
        [](Scenario& s) { s.units[1].capacity_factor = 1.5; },
        [](Scenario& s) { s.units[2].service_life_years = 0; },
        [](Scenario& s) { s.battery.min_energy_kwh = 30.0; },
        [](Scenario& s) { s.battery.inverter_efficiency = 0.0; },
        [](Scenario& s) { s.economics.interruptible_fraction = 1.5; },
        [](Scenario& s) { s.economics.interruption_history = -0.1; },
        [](Scenario& s) { s.emissions.processing_cost_usd_per_kg[0] = -1.0; },
        [](Scenario& s) { s.devices.mt.efficiency_floor = 0.0; },
        [](Scenario& s) { s.devices.pv.panel_area_m2 = 0.0; },
    };
    for (const auto& mutate : mutators) {
        Scenario s = demo_scenario();
        mutate(s);
        CHECK(!validate(s).empty());
    }
}
