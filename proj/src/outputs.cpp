#include "microgrid/outputs.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace microgrid {

namespace {

std::string fixed6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

struct ParetoRow {
    std::string branch;
    const ScoredSolution* solution;
    std::size_t schedule_id = 0;
};

void hash_mix(std::uint64_t& h, std::uint64_t v) { h = rng::mix(h, v); }

void hash_mix(std::uint64_t& h, double v) {
    std::uint64_t bits;
    static_assert(sizeof bits == sizeof v);
    __builtin_memcpy(&bits, &v, sizeof bits);
    hash_mix(h, bits);
}

}  // namespace

std::uint64_t config_hash(const RunMetadata& meta) {
    const AlgorithmConfig& c = meta.config;
    std::uint64_t h = rng::fnv1a("microgrid-run-config");
    hash_mix(h, rng::fnv1a(meta.scenario_label));
    hash_mix(h, rng::fnv1a(to_string(meta.algorithm)));
    hash_mix(h, rng::fnv1a(to_string(meta.mode)));
    hash_mix(h, meta.seed);
    hash_mix(h, static_cast<std::uint64_t>(meta.deterministic));
    hash_mix(h, static_cast<std::uint64_t>(c.population_size));
    hash_mix(h, static_cast<std::uint64_t>(c.generations));
    hash_mix(h, c.crossover_prob);
    hash_mix(h, c.mutation_prob);
    hash_mix(h, static_cast<std::uint64_t>(c.elite_count));
    hash_mix(h, static_cast<std::uint64_t>(c.max_crossover_points));
    hash_mix(h, c.diversity_threshold);
    hash_mix(h, c.reinit_fraction);
    hash_mix(h, c.sa_initial_temp);
    hash_mix(h, c.sa_cooling);
    hash_mix(h, c.sa_termination_temp);
    hash_mix(h, static_cast<std::uint64_t>(c.sa_steps_per_temp));
    hash_mix(h, c.sa_perturb_prob);
    hash_mix(h, c.sa_perturb_range);
    hash_mix(h, c.pso_inertia);
    hash_mix(h, c.pso_c1);
    hash_mix(h, c.pso_c2);
    hash_mix(h, c.pso_velocity_limit);
    hash_mix(h, c.pso_perturb_fraction);
    hash_mix(h, static_cast<std::uint64_t>(c.pso_hybrid_reproduction));
    hash_mix(h, static_cast<std::uint64_t>(c.aco_ants));
    hash_mix(h, c.aco_evaporation);
    hash_mix(h, c.aco_initial_pheromone);
    hash_mix(h, c.aco_alpha);
    hash_mix(h, c.aco_beta);
    hash_mix(h, static_cast<std::uint64_t>(c.aco_levels));
    hash_mix(h, static_cast<std::uint64_t>(c.archive_capacity));
    hash_mix(h, static_cast<std::uint64_t>(c.warm_start_generations));
    hash_mix(h, c.master_seed);
    return h;
}

std::vector<std::filesystem::path> write_outputs(const FusionReport& report,
                                                 const Scenario& scenario,
                                                 const std::filesystem::path& dir,
                                                 const RunMetadata& meta) {
    namespace fs = std::filesystem;
    std::vector<fs::path> written;
    auto open = [&](const fs::path& p) {
        std::ofstream out(p, std::ios::binary);
        if (!out) throw OutputError("cannot write " + p.string());
        written.push_back(p);
        return out;
    };

    try {
        fs::create_directories(dir);

        std::vector<ParetoRow> rows;
        for (const auto& branch : report.branches)
            for (const auto& m : branch.archive.members())
                rows.push_back({branch.name, &m});
        for (const auto& m : report.merged.members())
            rows.push_back({"merged", &m});
        std::stable_sort(rows.begin(), rows.end(),
                         [](const ParetoRow& a, const ParetoRow& b) {
                             const auto& x = a.solution->objectives;
                             const auto& y = b.solution->objectives;
                             if (x.operating_cost_usd != y.operating_cost_usd)
                                 return x.operating_cost_usd < y.operating_cost_usd;
                             return x.environmental_cost_usd < y.environmental_cost_usd;
                         });

        // Distinct schedules get sequential ids in row order.
        std::vector<const ScoredSolution*> unique;
        for (auto& row : rows) {
            std::size_t id = unique.size();
            for (std::size_t i = 0; i < unique.size(); ++i)
                if (unique[i]->schedule == row.solution->schedule &&
                    unique[i]->battery_energy_kwh == row.solution->battery_energy_kwh) {
                    id = i;
                    break;
                }
            if (id == unique.size()) unique.push_back(row.solution);
            row.schedule_id = id;
        }

        {
            auto out = open(dir / "pareto.csv");
            out << "branch,operating_cost_usd,environmental_cost_usd,penalty,schedule_id\n";
            for (const auto& row : rows)
                out << row.branch << "," << fixed6(row.solution->objectives.operating_cost_usd)
                    << "," << fixed6(row.solution->objectives.environmental_cost_usd) << ","
                    << fixed6(row.solution->objectives.penalty_usd) << "," << row.schedule_id
                    << "\n";
            if (!out) throw OutputError("write failed: pareto.csv");
        }

        const EvaluationContext ctx = make_context(scenario);
        for (std::size_t id = 0; id < unique.size(); ++id) {
            auto out = open(dir / ("schedule_" + std::to_string(id) + ".csv"));
            out << "hour,p_mt_kw,p_de_kw,p_hg_kw,p_wt_kw,p_pv_kw,p_bs_kw,p_ll_kw,"
                   "battery_kwh\n";
            const DispatchSchedule& s = unique[id]->schedule;
            for (std::size_t t = 0; t < s.horizon(); ++t)
                out << t << "," << fixed6(s.mt_kw[t]) << "," << fixed6(s.de_kw[t]) << ","
                    << fixed6(s.hg_kw[t]) << "," << fixed6(ctx.wt_kw[t]) << ","
                    << fixed6(ctx.pv_kw[t]) << "," << fixed6(s.bs_kw[t]) << ","
                    << fixed6(s.ll_kw[t]) << ","
                    << fixed6(unique[id]->battery_energy_kwh[t]) << "\n";
            if (!out) throw OutputError("write failed: schedule csv");
        }

        {
            auto out = open(dir / "summary.txt");
            out << "scenario: " << meta.scenario_label << "\n";
            out << "algorithm: " << to_string(meta.algorithm) << "\n";
            out << "mode: " << to_string(meta.mode) << "\n";
            out << "seed: " << meta.seed << "\n";
            out << "deterministic: " << (meta.deterministic ? "true" : "false") << "\n";
            out << "population: " << meta.config.population_size << "\n";
            out << "generations: " << meta.config.generations << "\n";
            out << "warm_start_generations: " << meta.config.warm_start_generations << "\n";
            char hash_hex[32];
            std::snprintf(hash_hex, sizeof hash_hex, "%016llx",
                          static_cast<unsigned long long>(config_hash(meta)));
            out << "config_hash: " << hash_hex << "\n";
            out << "front_size: " << report.merged.size() << "\n";
            out << "reference_point: " << fixed6(report.reference_point[0]) << ","
                << fixed6(report.reference_point[1]) << "\n";
            out << "merged_hypervolume: " << fixed6(report.merged_hypervolume) << "\n";
            if (report.best_operating)
                out << "best_operating_cost_usd: "
                    << fixed6(report.best_operating->objectives.operating_cost_usd) << "\n";
            if (report.best_environmental)
                out << "best_environmental_cost_usd: "
                    << fixed6(report.best_environmental->objectives.environmental_cost_usd)
                    << "\n";
            out << "warm_start_evaluations: " << report.warm_start_evaluations << "\n";
            out << "warm_start_seconds: " << fixed6(report.warm_start_seconds) << "\n";
            for (const auto& b : report.branches)
                out << "branch " << b.name << ": front=" << b.archive.size()
                    << " hypervolume=" << fixed6(b.hypervolume)
                    << " evaluations=" << b.evaluations
                    << " wall_seconds=" << fixed6(b.wall_seconds) << "\n";
            if (!out) throw OutputError("write failed: summary.txt");
        }
    } catch (...) {
        for (const auto& p : written) {
            std::error_code ec;
            std::filesystem::remove(p, ec);
        }
        throw;
    }
    return written;
}

std::string summarize(const FusionReport& report, double wall_seconds) {
    std::ostringstream out;
    out << "front=" << report.merged.size();
    if (report.best_operating)
        out << " bestF=" << fixed6(report.best_operating->objectives.operating_cost_usd);
    if (report.best_environmental)
        out << " bestCE="
            << fixed6(report.best_environmental->objectives.environmental_cost_usd);
    out << " wall=" << fixed6(wall_seconds) << "s";
    return out.str();
}

}  // namespace microgrid
