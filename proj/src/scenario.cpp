#include "microgrid/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

namespace microgrid {

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

double parse_double(const std::string& value, const std::string& where) {
    char* end = nullptr;
    const double v = std::strtod(value.c_str(), &end);
    if (end == value.c_str() || *end != '\0')
        throw ScenarioParseError(where + ": not a number: '" + value + "'");
    return v;
}

int parse_int(const std::string& value, const std::string& where) {
    const double v = parse_double(value, where);
    if (v != std::floor(v))
        throw ScenarioParseError(where + ": not an integer: '" + value + "'");
    return static_cast<int>(v);
}

// Shortest decimal form that parses back to the same double.
std::string format_double(double v) {
    char buf[40];
    const auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

struct Section {
    std::string name;
    std::map<std::string, std::string> entries;
    std::map<std::string, bool> consumed;
};

// Minimal INI reader: [section] headers, key = value pairs, '#'/';' comments.
std::vector<Section> parse_ini(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ScenarioParseError("cannot open scenario file: " + path.string());
    std::vector<Section> sections;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto comment = line.find_first_of("#;");
        if (comment != std::string::npos) line.erase(comment);
        const std::string text = trim(line);
        if (text.empty()) continue;
        const std::string where = path.string() + ":" + std::to_string(lineno);
        if (text.front() == '[') {
            if (text.back() != ']')
                throw ScenarioParseError(where + ": unterminated section header");
            const std::string name = trim(text.substr(1, text.size() - 2));
            for (const auto& s : sections)
                if (s.name == name)
                    throw ScenarioParseError(where + ": duplicate section [" + name + "]");
            sections.push_back({name, {}, {}});
            continue;
        }
        const auto eq = text.find('=');
        if (eq == std::string::npos)
            throw ScenarioParseError(where + ": expected 'key = value'");
        if (sections.empty())
            throw ScenarioParseError(where + ": key outside any section");
        const std::string key = trim(text.substr(0, eq));
        if (!sections.back().entries.emplace(key, trim(text.substr(eq + 1))).second)
            throw ScenarioParseError(where + ": duplicate key '" + key + "'");
    }
    return sections;
}

class SectionReader {
public:
    SectionReader(Section& s, std::string file) : s_(s), file_(std::move(file)) {}

    bool has(const std::string& key) const { return s_.entries.count(key) != 0; }

    std::string str(const std::string& key) {
        auto it = s_.entries.find(key);
        if (it == s_.entries.end())
            throw ScenarioParseError(file_ + ": [" + s_.name + "] missing key '" + key + "'");
        s_.consumed[key] = true;
        return it->second;
    }
    double num(const std::string& key) {
        return parse_double(str(key), context(key));
    }
    double num(const std::string& key, double fallback) {
        return has(key) ? num(key) : fallback;
    }
    int integer(const std::string& key) { return parse_int(str(key), context(key)); }
    int integer(const std::string& key, int fallback) {
        return has(key) ? integer(key) : fallback;
    }

    void reject_unknown_keys() const {
        for (const auto& [key, _] : s_.entries)
            if (!s_.consumed.count(key))
                throw ScenarioParseError(file_ + ": [" + s_.name + "] unknown key '" + key + "'");
    }

private:
    std::string context(const std::string& key) const {
        return file_ + ": [" + s_.name + "] " + key;
    }
    Section& s_;
    std::string file_;
};

TimeSeries load_series_csv(const std::filesystem::path& path, double step_hours) {
    std::ifstream in(path);
    if (!in) throw ScenarioParseError("cannot open series file: " + path.string());
    std::string line;
    if (!std::getline(in, line) || trim(line) != "hour,value")
        throw ScenarioParseError(path.string() + ": expected header 'hour,value'");
    TimeSeries ts;
    ts.step_hours = step_hours;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string text = trim(line);
        if (text.empty()) continue;
        const auto comma = text.find(',');
        if (comma == std::string::npos)
            throw ScenarioParseError(path.string() + ":" + std::to_string(lineno) +
                                     ": expected 'hour,value'");
        ts.values.push_back(parse_double(text.substr(comma + 1),
                                         path.string() + ":" + std::to_string(lineno)));
    }
    return ts;
}

void write_series_csv(const std::filesystem::path& path, const TimeSeries& ts) {
    std::ofstream out(path);
    if (!out) throw ScenarioError("cannot write series file: " + path.string());
    out << "hour,value\n";
    for (std::size_t t = 0; t < ts.values.size(); ++t)
        out << t << "," << format_double(ts.values[t]) << "\n";
}

const char* kSeriesNames[4] = {"load", "wind_speed", "irradiance", "water_flow"};

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return out;
}

}  // namespace

std::string_view to_string(UnitKind kind) {
    switch (kind) {
        case UnitKind::MT: return "MT";
        case UnitKind::HG: return "HG";
        case UnitKind::DE: return "DE";
        case UnitKind::WT: return "WT";
        case UnitKind::PV: return "PV";
        case UnitKind::ES: return "ES";
    }
    return "?";
}

std::string_view to_string(Pollutant p) {
    switch (p) {
        case Pollutant::CO2: return "CO2";
        case Pollutant::NOx: return "NOx";
        case Pollutant::SO2: return "SO2";
    }
    return "?";
}

UnitKind unit_kind_from_string(std::string_view s) {
    for (UnitKind k : {UnitKind::MT, UnitKind::HG, UnitKind::DE, UnitKind::WT,
                       UnitKind::PV, UnitKind::ES})
        if (lower(to_string(k)) == lower(s)) return k;
    throw ScenarioParseError("unknown unit kind: '" + std::string(s) + "'");
}

const UnitParams* Scenario::find_unit(UnitKind kind) const {
    for (const auto& u : units)
        if (u.kind == kind) return &u;
    return nullptr;
}

const UnitParams& Scenario::unit(UnitKind kind) const {
    const UnitParams* u = find_unit(kind);
    if (!u) throw ScenarioError("scenario has no unit " + std::string(to_string(kind)));
    return *u;
}

Scenario load_scenario(const std::filesystem::path& path) {
    auto sections = parse_ini(path);
    const std::string file = path.string();
    auto find_section = [&](const std::string& name) -> Section* {
        for (auto& s : sections)
            if (s.name == name) return &s;
        return nullptr;
    };
    auto require_section = [&](const std::string& name) -> Section& {
        Section* s = find_section(name);
        if (!s) throw ScenarioParseError(file + ": missing section [" + name + "]");
        return *s;
    };

    Scenario sc;
    SectionReader scenario(require_section("scenario"), file);
    sc.horizon_hours = scenario.integer("horizon_hours");
    const double step = scenario.num("step_hours", 1.0);
    std::filesystem::path series_dir = path.parent_path();
    if (scenario.has("series_dir")) {
        std::filesystem::path given = scenario.str("series_dir");
        series_dir = given.is_absolute() ? given : path.parent_path() / given;
    }
    scenario.reject_unknown_keys();

    SectionReader series(require_section("series"), file);
    TimeSeries* targets[4] = {&sc.load, &sc.wind_speed, &sc.irradiance, &sc.water_flow};
    for (int i = 0; i < 4; ++i)
        *targets[i] = load_series_csv(series_dir / series.str(kSeriesNames[i]), step);
    series.reject_unknown_keys();

    for (UnitKind kind : kGeneratorKinds) {
        SectionReader unit(require_section("unit " + std::string(to_string(kind))), file);
        UnitParams u;
        u.kind = kind;
        u.power_max_kw = unit.num("power_max_kw");
        u.management_fee_usd_per_mwh = unit.num("management_fee_usd_per_mwh");
        u.service_life_years = unit.integer("service_life_years");
        u.install_cost_usd = unit.num("install_cost_usd", 1000.0 * u.power_max_kw);
        u.capacity_factor = unit.num("capacity_factor", 0.5);
        u.maintenance_base_cost_usd = unit.num("maintenance_base_cost_usd", 0.05);
        u.maintenance_base_prob = unit.num("maintenance_base_prob", 0.02);
        unit.reject_unknown_keys();
        sc.units.push_back(u);
    }

    SectionReader battery(require_section("battery"), file);
    sc.battery.power_max_kw = battery.num("power_max_kw");
    sc.battery.capacity_kwh = battery.num("capacity_kwh");
    sc.battery.initial_energy_kwh = battery.num("initial_energy_kwh");
    sc.battery.min_energy_kwh = battery.num("min_energy_kwh", 0.0);
    sc.battery.inverter_efficiency = battery.num("inverter_efficiency", 1.0);
    sc.battery.charge_discharge_efficiency = battery.num("charge_discharge_efficiency", 1.0);
    battery.reject_unknown_keys();

    SectionReader econ(require_section("economics"), file);
    EconomicParams& e = sc.economics;
    e.depreciation_factor = econ.num("depreciation_factor", 0.08);
    e.gas_price_usd_per_m3 = econ.num("gas_price_usd_per_m3", 0.31);
    e.gas_heating_value_btu_per_ft3 = econ.num("gas_heating_value_btu_per_ft3", 1000.0);
    e.interruption_a = econ.num("interruption_a", 0.0);
    e.interruption_b = econ.num("interruption_b", 1.0);
    e.interruption_c = econ.num("interruption_c", 0.0);
    e.interruption_d = econ.num("interruption_d", 0.01);
    e.interruptible_fraction = econ.num("interruptible_fraction", 0.2);
    e.interruption_history = econ.num("interruption_history", 0.3);
    if (econ.has("load_priority")) {
        const std::string p = lower(econ.str("load_priority"));
        if (p == "critical") e.load_priority = LoadPriority::Critical;
        else if (p == "important") e.load_priority = LoadPriority::Important;
        else if (p == "normal") e.load_priority = LoadPriority::Normal;
        else throw ScenarioParseError(file + ": [economics] bad load_priority '" + p + "'");
    }
    if (econ.has("stochastic_mode")) {
        const std::string m = lower(econ.str("stochastic_mode"));
        if (m == "deterministic") e.stochastic_mode = StochasticMode::Deterministic;
        else if (m == "seeded") e.stochastic_mode = StochasticMode::Seeded;
        else throw ScenarioParseError(file + ": [economics] bad stochastic_mode '" + m + "'");
    }
    econ.reject_unknown_keys();

    SectionReader emis(require_section("emissions"), file);
    const char* pollutant_keys[3] = {"co2", "nox", "so2"};
    for (int j = 0; j < 3; ++j)
        sc.emissions.processing_cost_usd_per_kg[j] =
            emis.num(std::string("processing_cost_") + pollutant_keys[j] + "_usd_per_kg", 0.0);
    for (UnitKind kind : kGeneratorKinds)
        for (int j = 0; j < 3; ++j) {
            const std::string key = "factor_" + lower(to_string(kind)) + "_" +
                                    pollutant_keys[j] + "_kg_per_mwh";
            sc.emissions.factor(kind, static_cast<Pollutant>(j)) = emis.num(key, 0.0);
        }
    emis.reject_unknown_keys();

    DeviceModels& d = sc.devices;
    if (Section* dev_section = find_section("devices")) {
        SectionReader dev(*dev_section, file);
        d.wind.cut_in_ms = dev.num("wind_cut_in_ms", d.wind.cut_in_ms);
        d.wind.cut_out_ms = dev.num("wind_cut_out_ms", d.wind.cut_out_ms);
        d.wind.rated_ms = dev.num("wind_rated_ms", d.wind.rated_ms);
        d.pv.panel_area_m2 = dev.num("pv_panel_area_m2", d.pv.panel_area_m2);
        d.pv.mppt_efficiency = dev.num("pv_mppt_efficiency", d.pv.mppt_efficiency);
        d.pv.panel_efficiency = dev.num("pv_panel_efficiency", d.pv.panel_efficiency);
        d.pv.incidence_angle_rad = dev.num("pv_incidence_angle_rad", d.pv.incidence_angle_rad);
        d.hydro.water_density_kg_m3 = dev.num("hydro_water_density_kg_m3", d.hydro.water_density_kg_m3);
        d.hydro.gravity_ms2 = dev.num("hydro_gravity_ms2", d.hydro.gravity_ms2);
        d.hydro.head_m = dev.num("hydro_head_m", d.hydro.head_m);
        d.hydro.hydraulic_efficiency = dev.num("hydro_efficiency", d.hydro.hydraulic_efficiency);
        d.hydro.friction_water = dev.num("hydro_friction_water", d.hydro.friction_water);
        d.hydro.friction_shaft = dev.num("hydro_friction_shaft", d.hydro.friction_shaft);
        d.hydro.water_speed_ms = dev.num("hydro_water_speed_ms", d.hydro.water_speed_ms);
        d.hydro.shaft_speed_rad_s = dev.num("hydro_shaft_speed_rad_s", d.hydro.shaft_speed_rad_s);
        d.mt.efficiency_floor = dev.num("mt_efficiency_floor", d.mt.efficiency_floor);
        d.mt.efficiency_cap = dev.num("mt_efficiency_cap", d.mt.efficiency_cap);
        d.de.degree = dev.integer("de_degree", d.de.degree);
        d.de.cost_scale = dev.num("de_cost_scale", d.de.cost_scale);
        d.de.cost_floor = dev.num("de_cost_floor", d.de.cost_floor);
        if (dev.has("de_coefficients")) {
            std::vector<double> coeffs;
            std::stringstream ss(dev.str("de_coefficients"));
            std::string item;
            while (std::getline(ss, item, ','))
                coeffs.push_back(parse_double(trim(item), file + ": de_coefficients"));
            d.de.coefficient_override = std::move(coeffs);
        }
        dev.reject_unknown_keys();
    }
    // Ratings and the gas model are tied to their owning sections.
    d.wind.rated_power_kw = sc.unit(UnitKind::WT).power_max_kw;
    d.pv.power_max_kw = sc.unit(UnitKind::PV).power_max_kw;
    d.hydro.power_max_kw = sc.unit(UnitKind::HG).power_max_kw;
    d.de.rated_power_kw = sc.unit(UnitKind::DE).power_max_kw;
    d.mt.gas_price_usd_per_m3 = e.gas_price_usd_per_m3;
    d.mt.lhv_kwh_per_m3 = lhv_btu_ft3_to_kwh_m3(e.gas_heating_value_btu_per_ft3);

    for (const auto& s : sections) {
        static const char* known[] = {"scenario", "series", "battery", "economics",
                                      "emissions", "devices"};
        bool ok = std::any_of(std::begin(known), std::end(known),
                              [&](const char* k) { return s.name == k; }) ||
                  s.name.rfind("unit ", 0) == 0;
        if (!ok) throw ScenarioParseError(file + ": unknown section [" + s.name + "]");
    }

    const auto violations = validate(sc);
    if (!violations.empty()) throw ScenarioValidationError(violations.front());
    return sc;
}

void write_scenario(const Scenario& s, const std::filesystem::path& ini_path) {
    const auto dir = ini_path.parent_path();
    if (!dir.empty()) std::filesystem::create_directories(dir);
    std::ofstream out(ini_path);
    if (!out) throw ScenarioError("cannot write scenario file: " + ini_path.string());
    auto kv = [&](const char* key, double v) { out << key << " = " << format_double(v) << "\n"; };

    out << "[scenario]\n";
    out << "horizon_hours = " << s.horizon_hours << "\n";
    kv("step_hours", s.load.step_hours);
    out << "\n[series]\n";
    const TimeSeries* series[4] = {&s.load, &s.wind_speed, &s.irradiance, &s.water_flow};
    for (int i = 0; i < 4; ++i) {
        out << kSeriesNames[i] << " = " << kSeriesNames[i] << ".csv\n";
        write_series_csv(dir / (std::string(kSeriesNames[i]) + ".csv"), *series[i]);
    }
    for (const auto& u : s.units) {
        out << "\n[unit " << to_string(u.kind) << "]\n";
        kv("power_max_kw", u.power_max_kw);
        kv("management_fee_usd_per_mwh", u.management_fee_usd_per_mwh);
        out << "service_life_years = " << u.service_life_years << "\n";
        kv("install_cost_usd", u.install_cost_usd);
        kv("capacity_factor", u.capacity_factor);
        kv("maintenance_base_cost_usd", u.maintenance_base_cost_usd);
        kv("maintenance_base_prob", u.maintenance_base_prob);
    }
    out << "\n[battery]\n";
    kv("power_max_kw", s.battery.power_max_kw);
    kv("capacity_kwh", s.battery.capacity_kwh);
    kv("initial_energy_kwh", s.battery.initial_energy_kwh);
    kv("min_energy_kwh", s.battery.min_energy_kwh);
    kv("inverter_efficiency", s.battery.inverter_efficiency);
    kv("charge_discharge_efficiency", s.battery.charge_discharge_efficiency);

    const EconomicParams& e = s.economics;
    out << "\n[economics]\n";
    kv("depreciation_factor", e.depreciation_factor);
    kv("gas_price_usd_per_m3", e.gas_price_usd_per_m3);
    kv("gas_heating_value_btu_per_ft3", e.gas_heating_value_btu_per_ft3);
    kv("interruption_a", e.interruption_a);
    kv("interruption_b", e.interruption_b);
    kv("interruption_c", e.interruption_c);
    kv("interruption_d", e.interruption_d);
    kv("interruptible_fraction", e.interruptible_fraction);
    out << "load_priority = "
        << (e.load_priority == LoadPriority::Critical    ? "critical"
            : e.load_priority == LoadPriority::Important ? "important"
                                                         : "normal")
        << "\n";
    kv("interruption_history", e.interruption_history);
    out << "stochastic_mode = "
        << (e.stochastic_mode == StochasticMode::Seeded ? "seeded" : "deterministic")
        << "\n";

    out << "\n[emissions]\n";
    const char* pollutant_keys[3] = {"co2", "nox", "so2"};
    for (int j = 0; j < 3; ++j)
        kv((std::string("processing_cost_") + pollutant_keys[j] + "_usd_per_kg").c_str(),
           s.emissions.processing_cost_usd_per_kg[j]);
    for (UnitKind kind : kGeneratorKinds)
        for (int j = 0; j < 3; ++j) {
            const double f = s.emissions.factor(kind, static_cast<Pollutant>(j));
            if (f != 0.0)
                kv(("factor_" + lower(to_string(kind)) + "_" + pollutant_keys[j] +
                    "_kg_per_mwh").c_str(), f);
        }

    const DeviceModels& d = s.devices;
    out << "\n[devices]\n";
    kv("wind_cut_in_ms", d.wind.cut_in_ms);
    kv("wind_cut_out_ms", d.wind.cut_out_ms);
    kv("wind_rated_ms", d.wind.rated_ms);
    kv("pv_panel_area_m2", d.pv.panel_area_m2);
    kv("pv_mppt_efficiency", d.pv.mppt_efficiency);
    kv("pv_panel_efficiency", d.pv.panel_efficiency);
    kv("pv_incidence_angle_rad", d.pv.incidence_angle_rad);
    kv("hydro_water_density_kg_m3", d.hydro.water_density_kg_m3);
    kv("hydro_gravity_ms2", d.hydro.gravity_ms2);
    kv("hydro_head_m", d.hydro.head_m);
    kv("hydro_efficiency", d.hydro.hydraulic_efficiency);
    kv("hydro_friction_water", d.hydro.friction_water);
    kv("hydro_friction_shaft", d.hydro.friction_shaft);
    kv("hydro_water_speed_ms", d.hydro.water_speed_ms);
    kv("hydro_shaft_speed_rad_s", d.hydro.shaft_speed_rad_s);
    kv("mt_efficiency_floor", d.mt.efficiency_floor);
    kv("mt_efficiency_cap", d.mt.efficiency_cap);
    out << "de_degree = " << d.de.degree << "\n";
    kv("de_cost_scale", d.de.cost_scale);
    kv("de_cost_floor", d.de.cost_floor);
    if (d.de.coefficient_override) {
        out << "de_coefficients = ";
        for (std::size_t i = 0; i < d.de.coefficient_override->size(); ++i)
            out << (i ? "," : "") << format_double((*d.de.coefficient_override)[i]);
        out << "\n";
    }
}

namespace {

void check_series(std::vector<std::string>& out, const char* name,
                  const TimeSeries& ts, int horizon, bool nonnegative) {
    if (ts.step_hours <= 0.0) {
        out.push_back(std::string("series ") + name + ": step must be positive");
        return;
    }
    const auto expected =
        static_cast<std::size_t>(std::llround(horizon / ts.step_hours));
    if (ts.values.size() != expected)
        out.push_back(std::string("series ") + name + ": series length " +
                      std::to_string(ts.values.size()) + " does not match horizon " +
                      std::to_string(horizon));
    for (double v : ts.values) {
        if (!std::isfinite(v)) {
            out.push_back(std::string("series ") + name + ": non-finite value");
            break;
        }
        if (nonnegative && v < 0.0) {
            out.push_back(std::string("series ") + name + ": negative value");
            break;
        }
    }
}

}  // namespace

std::vector<std::string> validate(const Scenario& s) {
    std::vector<std::string> out;
    if (s.horizon_hours < 1) out.push_back("scenario.horizon_hours: must be >= 1");

    check_series(out, "load", s.load, s.horizon_hours, true);
    check_series(out, "wind_speed", s.wind_speed, s.horizon_hours, true);
    check_series(out, "irradiance", s.irradiance, s.horizon_hours, true);
    check_series(out, "water_flow", s.water_flow, s.horizon_hours, true);
    for (const TimeSeries* ts : {&s.wind_speed, &s.irradiance, &s.water_flow})
        if (ts->step_hours != s.load.step_hours) {
            out.push_back("series: step mismatch across series");
            break;
        }

    for (UnitKind kind : kGeneratorKinds) {
        int count = 0;
        for (const auto& u : s.units) count += (u.kind == kind);
        if (count != 1)
            out.push_back("units: expected exactly one " + std::string(to_string(kind)) +
                          " entry, found " + std::to_string(count));
    }
    for (const auto& u : s.units) {
        const std::string prefix = "unit " + std::string(to_string(u.kind)) + ".";
        if (u.power_max_kw <= 0.0) out.push_back(prefix + "power_max_kw: must be > 0");
        if (u.service_life_years < 1) out.push_back(prefix + "service_life_years: must be >= 1");
        if (u.capacity_factor <= 0.0 || u.capacity_factor > 1.0)
            out.push_back(prefix + "capacity_factor: must be in (0,1]");
        if (u.management_fee_usd_per_mwh < 0.0)
            out.push_back(prefix + "management_fee_usd_per_mwh: must be >= 0");
        if (u.install_cost_usd < 0.0) out.push_back(prefix + "install_cost_usd: must be >= 0");
        if (u.maintenance_base_prob < 0.0 || u.maintenance_base_prob > 1.0)
            out.push_back(prefix + "maintenance_base_prob: must be in [0,1]");
    }

    const BatteryParams& b = s.battery;
    if (b.power_max_kw <= 0.0) out.push_back("battery.power_max_kw: must be > 0");
    if (!(0.0 <= b.min_energy_kwh && b.min_energy_kwh <= b.initial_energy_kwh &&
          b.initial_energy_kwh <= b.capacity_kwh))
        out.push_back("battery: energy ordering 0 <= min <= initial <= capacity violated");
    if (b.inverter_efficiency <= 0.0 || b.inverter_efficiency > 1.0)
        out.push_back("battery.inverter_efficiency: efficiency range (0,1] violated");
    if (b.charge_discharge_efficiency <= 0.0 || b.charge_discharge_efficiency > 1.0)
        out.push_back("battery.charge_discharge_efficiency: efficiency range (0,1] violated");

    for (int j = 0; j < 3; ++j)
        if (s.emissions.processing_cost_usd_per_kg[j] < 0.0)
            out.push_back("emissions.processing_cost: must be >= 0");
    for (UnitKind kind : kGeneratorKinds)
        for (int j = 0; j < 3; ++j) {
            const double f = s.emissions.factor(kind, static_cast<Pollutant>(j));
            if (f < 0.0)
                out.push_back("emissions.factor " + std::string(to_string(kind)) +
                              ": must be >= 0");
            const bool clean = kind == UnitKind::WT || kind == UnitKind::PV ||
                               kind == UnitKind::HG;
            if (clean && f != 0.0)
                out.push_back("emissions.factor " + std::string(to_string(kind)) +
                              ": clean units must have zero emission factors");
        }

    const EconomicParams& e = s.economics;
    if (e.depreciation_factor <= 0.0 || e.depreciation_factor >= 1.0)
        out.push_back("economics.depreciation_factor: must be in (0,1)");
    if (e.interruptible_fraction < 0.0 || e.interruptible_fraction > 1.0)
        out.push_back("economics.interruptible_fraction: must be in [0,1]");
    if (e.interruption_history < 0.0 || e.interruption_history > 1.0)
        out.push_back("economics.interruption_history: must be in [0,1]");
    if (e.gas_price_usd_per_m3 < 0.0) out.push_back("economics.gas_price: must be >= 0");
    if (e.gas_heating_value_btu_per_ft3 <= 0.0)
        out.push_back("economics.gas_heating_value: must be > 0");

    const DeviceModels& d = s.devices;
    if (!(0.0 < d.wind.cut_in_ms && d.wind.cut_in_ms < d.wind.rated_ms &&
          d.wind.rated_ms < d.wind.cut_out_ms))
        out.push_back("devices.wind: requires 0 < cut_in < rated < cut_out");
    if (d.pv.panel_area_m2 <= 0.0) out.push_back("devices.pv.panel_area_m2: must be > 0");
    for (double eff : {d.pv.mppt_efficiency, d.pv.panel_efficiency})
        if (eff <= 0.0 || eff > 1.0) {
            out.push_back("devices.pv: efficiency range (0,1] violated");
            break;
        }
    if (d.hydro.water_density_kg_m3 <= 0.0 || d.hydro.gravity_ms2 <= 0.0 ||
        d.hydro.head_m <= 0.0)
        out.push_back("devices.hydro: density, gravity, head must be > 0");
    if (d.hydro.hydraulic_efficiency <= 0.0 || d.hydro.hydraulic_efficiency > 1.0)
        out.push_back("devices.hydro.efficiency: efficiency range (0,1] violated");
    if (!(0.0 < d.mt.efficiency_floor && d.mt.efficiency_floor < d.mt.efficiency_cap &&
          d.mt.efficiency_cap <= 1.0))
        out.push_back("devices.mt: requires 0 < efficiency_floor < efficiency_cap <= 1");
    if (d.de.degree < 1) out.push_back("devices.de.degree: must be >= 1");
    if (d.de.coefficient_override &&
        d.de.coefficient_override->size() != static_cast<std::size_t>(d.de.degree))
        out.push_back("devices.de.coefficients: override length must equal degree");

    return out;
}

Scenario demo_scenario() {
    Scenario s;
    s.horizon_hours = 24;
    s.load.values = {42, 40, 38, 37, 38, 40, 46, 54, 62, 68, 72, 74,
                     73, 71, 72, 80, 86, 90, 88, 82, 70, 60, 52, 46};
    s.irradiance.values = {0,   0,   0,   0,   0,   20,  100, 260, 450, 620, 780, 900,
                           950, 930, 850, 700, 520, 320, 140, 30,  0,   0,   0,   0};
    s.wind_speed.values = {9,    8.5, 8,  8,    7.5,  7,    7.5, 8,
                           9,    10,  10.5, 11, 11.5, 12,   12,  11.5,
                           10.5, 9.5, 9,  8.5,  9,    9.5,  10,  9.5};
    s.water_flow.values = {0.15, 0.15, 0.14, 0.14, 0.13, 0.13, 0.14, 0.16,
                           0.18, 0.2,  0.22, 0.24, 0.25, 0.25, 0.24, 0.22,
                           0.2,  0.18, 0.16, 0.15, 0.14, 0.14, 0.15, 0.15};

    auto make_unit = [](UnitKind kind, double pmax, double fee, int life,
                        double capacity_factor) {
        UnitParams u;
        u.kind = kind;
        u.power_max_kw = pmax;
        u.management_fee_usd_per_mwh = fee;
        u.service_life_years = life;
        u.install_cost_usd = 1000.0 * pmax;
        u.capacity_factor = capacity_factor;
        u.maintenance_base_cost_usd = 0.05;
        u.maintenance_base_prob = 0.02;
        return u;
    };
    s.units = {make_unit(UnitKind::MT, 45, 5.6479, 10, 0.6),
               make_unit(UnitKind::HG, 28, 3.2143, 15, 0.5),
               make_unit(UnitKind::DE, 30, 11.9561, 10, 0.4),
               make_unit(UnitKind::WT, 15, 4.1692, 10, 0.25),
               make_unit(UnitKind::PV, 18, 1.1973, 20, 0.2)};

    s.battery = BatteryParams{};  // 5 kW / 25 kWh, half-full start

    EmissionTable& em = s.emissions;
    em.processing_cost_usd_per_kg = {0.013, 3.892, 0.892};
    em.factor(UnitKind::MT, Pollutant::CO2) = 1.65;
    em.factor(UnitKind::MT, Pollutant::NOx) = 0.50;
    em.factor(UnitKind::MT, Pollutant::SO2) = 0.01;
    em.factor(UnitKind::DE, Pollutant::CO2) = 1.55;
    em.factor(UnitKind::DE, Pollutant::NOx) = 19.8;
    em.factor(UnitKind::DE, Pollutant::SO2) = 0.51;

    s.economics = EconomicParams{};
    s.devices = DeviceModels{};
    s.devices.mt.gas_price_usd_per_m3 = s.economics.gas_price_usd_per_m3;
    s.devices.mt.lhv_kwh_per_m3 =
        lhv_btu_ft3_to_kwh_m3(s.economics.gas_heating_value_btu_per_ft3);
    return s;
}

std::filesystem::path demo_data_dir() {
    if (const char* env = std::getenv("MICROGRID_DEMO_DIR"))
        return std::filesystem::path(env);
#ifdef MICROGRID_DEMO_DATA_DIR
    return std::filesystem::path(MICROGRID_DEMO_DATA_DIR);
#else
    return std::filesystem::path("data/demo");
#endif
}

}  // namespace microgrid
