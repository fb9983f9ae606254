#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "microgrid/fusion.hpp"

namespace microgrid {

struct OutputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunMetadata {
    std::string scenario_label;
    Pipeline algorithm = Pipeline::Fused;
    ObjectiveMode mode = ObjectiveMode::Multi;
    std::uint64_t seed = 0;
    bool deterministic = true;
    AlgorithmConfig config;
};

// Stable digest of every effective run parameter.
std::uint64_t config_hash(const RunMetadata& meta);

// Write pareto.csv, one schedule_<id>.csv per distinct schedule, and
// summary.txt into dir. Rows are sorted by operating cost then environmental
// cost so a fixed seed yields byte-identical pareto.csv. On any I/O failure
// the partial file set is removed and OutputError is thrown.
std::vector<std::filesystem::path> write_outputs(const FusionReport& report,
                                                 const Scenario& scenario,
                                                 const std::filesystem::path& dir,
                                                 const RunMetadata& meta);

// One-line run summary for the console.
std::string summarize(const FusionReport& report, double wall_seconds);

}  // namespace microgrid
