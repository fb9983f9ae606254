#pragma once

#include <optional>
#include <string>
#include <vector>

#include "microgrid/algorithms.hpp"

namespace microgrid {

enum class Pipeline { Moga, MogaMosa, MogaMopso, MogaMoaco, Fused };

std::string_view to_string(Pipeline p);
Pipeline pipeline_from_string(std::string_view name);

struct BranchResult {
    std::string name;
    ParetoArchive archive{0};
    double hypervolume = 0.0;
    double wall_seconds = 0.0;
    std::uint64_t evaluations = 0;
};

struct FusionReport {
    std::vector<BranchResult> branches;
    ParetoArchive merged{0};
    double merged_hypervolume = 0.0;
    ObjectivePair reference_point{0.0, 0.0};
    std::uint64_t warm_start_evaluations = 0;
    double warm_start_seconds = 0.0;
    std::optional<ScoredSolution> best_operating;
    std::optional<ScoredSolution> best_environmental;
};

// Warm-start genetic run feeding the selected branch searches; branch
// archives are merged into the non-dominated union. With Pipeline::Moga the
// genetic algorithm runs on its full budget and is the only branch.
FusionReport run_pipeline(const Scenario& scenario, const AlgorithmConfig& cfg,
                          Pipeline pipeline, ObjectiveMode mode,
                          bool parallel = true);

FusionReport run_fused(const Scenario& scenario, const AlgorithmConfig& cfg,
                       bool parallel = true);

struct SingleObjectiveResult {
    std::optional<ScoredSolution> best;   // best feasible point found
    FusionReport report;
};

// Fused pipeline driven by one penalized objective; the other objective is
// recorded on the result but not optimized.
SingleObjectiveResult run_single_objective(const Scenario& scenario,
                                           const AlgorithmConfig& cfg,
                                           ObjectiveMode objective,
                                           bool parallel = true);

// Share of MT energy in the combined MT+DE energy of a schedule.
double mt_energy_share(const DispatchSchedule& schedule);

}  // namespace microgrid
