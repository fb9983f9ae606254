#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "microgrid/mocore.hpp"

namespace microgrid {

enum class ObjectiveMode { Multi, Economic, Environmental };

std::string_view to_string(ObjectiveMode mode);

struct AlgorithmConfig {
    int population_size = 150;
    int generations = 300;
    double crossover_prob = 0.95;
    double mutation_prob = 0.05;
    int elite_count = 5;
    int max_crossover_points = 4;
    double diversity_threshold = 0.05;   // reinitialize below this
    double reinit_fraction = 0.20;

    double sa_initial_temp = 0.0;        // <= 0: derived from the seed spread
    double sa_cooling = 0.95;
    double sa_termination_temp = 0.0;    // <= 0: 1e-4 * initial temperature
    int sa_steps_per_temp = 50;
    double sa_perturb_prob = 0.1;        // per-gene chance in a neighbor move
    double sa_perturb_range = 0.05;      // fraction of each gene's range

    double pso_inertia = 0.7;
    double pso_c1 = 1.5;
    double pso_c2 = 1.5;
    double pso_velocity_limit = 0.10;    // fraction of each gene's range
    double pso_perturb_fraction = 0.25;  // particles perturbed per iteration
    bool pso_hybrid_reproduction = false;  // optional crossover/mutation step

    int aco_ants = 150;
    double aco_evaporation = 0.3;
    double aco_initial_pheromone = 0.2;
    double aco_alpha = 1.0;
    double aco_beta = 2.0;
    int aco_levels = 21;

    std::size_t archive_capacity = 100;
    int warm_start_generations = 30;
    std::uint64_t master_seed = 1;

    // Throws std::invalid_argument on an out-of-range parameter.
    void check() const;
};

// One gene block per hour: [MT, DE, HG, BS, LL].
inline constexpr std::size_t kGenesPerHour = 5;

struct GenomeBounds {
    std::vector<double> lo;
    std::vector<double> hi;
    std::size_t genes() const { return lo.size(); }
    double range(std::size_t i) const { return hi[i] - lo[i]; }
};

GenomeBounds make_bounds(const Scenario& s, const EvaluationContext& ctx);

DispatchSchedule decode(std::span<const double> genome, const GenomeBounds& bounds);

// Scores genomes against a scenario. Pure given the evaluation key, so a
// population can be scored concurrently with identical results.
class Evaluator {
public:
    Evaluator(const Scenario& scenario, ObjectiveMode mode, std::uint64_t master_seed);

    ScoredSolution score(std::span<const double> genome, std::uint64_t eval_key) const;

    const Scenario& scenario() const { return *scenario_; }
    const EvaluationContext& context() const { return ctx_; }
    const GenomeBounds& bounds() const { return bounds_; }
    ObjectiveMode mode() const { return mode_; }

private:
    const Scenario* scenario_;
    EvaluationContext ctx_;
    GenomeBounds bounds_;
    ObjectiveMode mode_;
    StochasticMode stochastic_;
    std::uint64_t master_seed_;
};

// Data-parallel scoring kernel. The OpenMP path writes each result by index,
// so it is bit-identical to the serial reference for any thread count.
void evaluate_population(const Evaluator& evaluator,
                         std::span<const std::vector<double>> genomes,
                         std::uint64_t iteration_key,
                         std::vector<ScoredSolution>& out, bool parallel = true);

// --- search operators -------------------------------------------------------

// Draw an index with probability weight/sum. Throws std::invalid_argument
// when every weight is zero.
std::size_t roulette_select(std::span<const double> weights, rng::Stream& stream);

std::pair<std::vector<double>, std::vector<double>> multipoint_crossover(
    std::span<const double> a, std::span<const double> b, rng::Stream& stream,
    int points);

// Per-gene perturbation at rate mutation_prob*(2 - diversity), stepping
// uniformly within +-10% of the gene's range, clamped to bounds.
std::vector<double> adaptive_mutation(std::span<const double> genome,
                                      double diversity, rng::Stream& stream,
                                      const AlgorithmConfig& cfg,
                                      const GenomeBounds& bounds);

// Accept equal-or-better always, worse with probability exp(-delta/temp).
bool metropolis_accept(double current_energy, double candidate_energy,
                       double temperature, rng::Stream& stream);

std::vector<double> pso_velocity_update(std::span<const double> velocity,
                                        std::span<const double> position,
                                        std::span<const double> pbest,
                                        std::span<const double> gbest,
                                        const AlgorithmConfig& cfg,
                                        const GenomeBounds& bounds,
                                        rng::Stream& stream);

// Per-variable level choice with probability tau^alpha * eta^beta / sum.
std::vector<int> aco_path_select(const std::vector<std::vector<double>>& pheromone,
                                 const std::vector<std::vector<double>>& heuristic,
                                 const AlgorithmConfig& cfg, rng::Stream& stream);

void aco_pheromone_update(std::vector<std::vector<double>>& pheromone,
                          const std::vector<std::vector<double>>& deposits,
                          double evaporation);

// --- runners ----------------------------------------------------------------

struct Individual {
    std::vector<double> genome;
    ScoredSolution scored;
};

struct SearchResult {
    ParetoArchive archive;
    std::uint64_t evaluations = 0;
};

struct MogaResult {
    std::vector<Individual> population;
    ParetoArchive archive;
    std::uint64_t evaluations = 0;
};

MogaResult moga_run(const Evaluator& evaluator, const AlgorithmConfig& cfg,
                    std::optional<int> generations_override = {},
                    std::span<const std::vector<double>> seed_genomes = {},
                    bool parallel = true);

SearchResult mosa_run(const Evaluator& evaluator, const AlgorithmConfig& cfg,
                      std::span<const std::vector<double>> seed_genomes);

SearchResult mopso_run(const Evaluator& evaluator, const AlgorithmConfig& cfg,
                       std::span<const std::vector<double>> seed_genomes,
                       bool parallel = true);

SearchResult moaco_run(const Evaluator& evaluator, const AlgorithmConfig& cfg,
                       std::span<const std::vector<double>> seed_genomes,
                       bool parallel = true);

}  // namespace microgrid
