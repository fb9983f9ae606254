#include "microgrid/fusion.hpp"

#include <chrono>
#include <stdexcept>

namespace microgrid {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

ObjectivePair reference_for(const std::vector<BranchResult>& branches) {
    ObjectivePair ref{1.0, 1.0};
    for (const auto& b : branches)
        for (const auto& m : b.archive.members()) {
            ref[0] = std::max(ref[0], m.penalized[0] + 1.0);
            ref[1] = std::max(ref[1], m.penalized[1] + 1.0);
        }
    return ref;
}

}  // namespace

std::string_view to_string(Pipeline p) {
    switch (p) {
        case Pipeline::Moga: return "moga";
        case Pipeline::MogaMosa: return "moga-mosa";
        case Pipeline::MogaMopso: return "moga-mopso";
        case Pipeline::MogaMoaco: return "moga-moaco";
        case Pipeline::Fused: return "fused";
    }
    return "?";
}

Pipeline pipeline_from_string(std::string_view name) {
    for (Pipeline p : {Pipeline::Moga, Pipeline::MogaMosa, Pipeline::MogaMopso,
                       Pipeline::MogaMoaco, Pipeline::Fused})
        if (to_string(p) == name) return p;
    throw std::invalid_argument("unknown algorithm: '" + std::string(name) + "'");
}

FusionReport run_pipeline(const Scenario& scenario, const AlgorithmConfig& cfg,
                          Pipeline pipeline, ObjectiveMode mode, bool parallel) {
    const auto violations = validate(scenario);
    if (!violations.empty()) throw ScenarioValidationError(violations.front());
    cfg.check();

    Evaluator evaluator(scenario, mode, cfg.master_seed);
    FusionReport report;

    const bool moga_only = pipeline == Pipeline::Moga;
    const auto warm_start = Clock::now();
    MogaResult warm = moga_run(evaluator, cfg,
                               moga_only ? std::optional<int>{}
                                         : std::optional<int>{cfg.warm_start_generations},
                               {}, parallel);
    report.warm_start_evaluations = warm.evaluations;
    report.warm_start_seconds = seconds_since(warm_start);

    std::vector<std::vector<double>> seeds;
    seeds.reserve(warm.population.size());
    for (const auto& ind : warm.population) seeds.push_back(ind.genome);

    auto add_branch = [&](std::string name, auto&& run) {
        const auto start = Clock::now();
        SearchResult r = run();
        BranchResult branch;
        branch.name = std::move(name);
        branch.archive = std::move(r.archive);
        branch.evaluations = r.evaluations;
        branch.wall_seconds = seconds_since(start);
        report.branches.push_back(std::move(branch));
    };

    try {
        if (moga_only) {
            BranchResult branch;
            branch.name = "moga";
            branch.archive = std::move(warm.archive);
            branch.evaluations = warm.evaluations;
            branch.wall_seconds = report.warm_start_seconds;
            report.branches.push_back(std::move(branch));
        }
        if (pipeline == Pipeline::MogaMosa || pipeline == Pipeline::Fused)
            add_branch("moga-mosa", [&] { return mosa_run(evaluator, cfg, seeds); });
        if (pipeline == Pipeline::MogaMopso || pipeline == Pipeline::Fused)
            add_branch("moga-mopso",
                       [&] { return mopso_run(evaluator, cfg, seeds, parallel); });
        if (pipeline == Pipeline::MogaMoaco || pipeline == Pipeline::Fused)
            add_branch("moga-moaco",
                       [&] { return moaco_run(evaluator, cfg, seeds, parallel); });
    } catch (const std::exception& e) {
        throw std::runtime_error("branch " +
                                 std::to_string(report.branches.size()) + " (" +
                                 std::string(to_string(pipeline)) + "): " + e.what());
    }

    // Merged capacity covers every branch so the union is never truncated and
    // the merged archive is exactly the non-dominated filter of the union.
    report.merged =
        ParetoArchive(cfg.archive_capacity * std::max<std::size_t>(report.branches.size(), 1));
    for (const auto& branch : report.branches)
        for (const auto& m : branch.archive.members()) report.merged.insert(m);

    report.reference_point = reference_for(report.branches);
    for (auto& branch : report.branches)
        branch.hypervolume =
            hypervolume_2d(branch.archive.objective_points(), report.reference_point);
    report.merged_hypervolume =
        hypervolume_2d(report.merged.objective_points(), report.reference_point);

    for (const auto& m : report.merged.members()) {
        if (!report.best_operating ||
            m.objectives.operating_cost_usd <
                report.best_operating->objectives.operating_cost_usd)
            report.best_operating = m;
        if (!report.best_environmental ||
            m.objectives.environmental_cost_usd <
                report.best_environmental->objectives.environmental_cost_usd)
            report.best_environmental = m;
    }
    return report;
}

FusionReport run_fused(const Scenario& scenario, const AlgorithmConfig& cfg,
                       bool parallel) {
    return run_pipeline(scenario, cfg, Pipeline::Fused, ObjectiveMode::Multi, parallel);
}

SingleObjectiveResult run_single_objective(const Scenario& scenario,
                                           const AlgorithmConfig& cfg,
                                           ObjectiveMode objective, bool parallel) {
    SingleObjectiveResult result;
    result.report = run_pipeline(scenario, cfg, Pipeline::Fused, objective, parallel);

    // Prefer feasible points; fall back to the least-infeasible one.
    const ScoredSolution* best = nullptr;
    for (const auto& m : result.report.merged.members()) {
        if (!best) { best = &m; continue; }
        const bool feasible = m.objectives.penalty_usd == 0.0;
        const bool best_feasible = best->objectives.penalty_usd == 0.0;
        if (feasible != best_feasible) {
            if (feasible) best = &m;
            continue;
        }
        if (feasible ? m.penalized[0] < best->penalized[0]
                     : m.objectives.penalty_usd < best->objectives.penalty_usd)
            best = &m;
    }
    if (best) result.best = *best;
    return result;
}

double mt_energy_share(const DispatchSchedule& schedule) {
    double mt = 0.0, de = 0.0;
    for (std::size_t t = 0; t < schedule.horizon(); ++t) {
        mt += schedule.mt_kw[t];
        de += schedule.de_kw[t];
    }
    const double total = mt + de;
    return total > 0.0 ? mt / total : 0.0;
}

}  // namespace microgrid
