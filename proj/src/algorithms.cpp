#include "microgrid/algorithms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "microgrid/devices.hpp"

namespace microgrid {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require(bool ok, const char* message) {
    if (!ok) throw std::invalid_argument(message);
}

std::vector<double> encode(const DispatchSchedule& s) {
    const std::size_t T = s.horizon();
    std::vector<double> genome(T * kGenesPerHour);
    for (std::size_t t = 0; t < T; ++t) {
        genome[t * kGenesPerHour + 0] = s.mt_kw[t];
        genome[t * kGenesPerHour + 1] = s.de_kw[t];
        genome[t * kGenesPerHour + 2] = s.hg_kw[t];
        genome[t * kGenesPerHour + 3] = s.bs_kw[t];
        genome[t * kGenesPerHour + 4] = s.ll_kw[t];
    }
    return genome;
}

std::vector<double> random_genome(const GenomeBounds& bounds, rng::Stream& stream) {
    std::vector<double> g(bounds.genes());
    for (std::size_t i = 0; i < g.size(); ++i)
        g[i] = stream.uniform(bounds.lo[i], bounds.hi[i]);
    return g;
}

std::vector<double> clamp_genome(std::span<const double> genome,
                                 const GenomeBounds& bounds) {
    std::vector<double> g(genome.begin(), genome.end());
    for (std::size_t i = 0; i < g.size(); ++i)
        g[i] = std::clamp(g[i], bounds.lo[i], bounds.hi[i]);
    return g;
}

// Mean pairwise distance between range-normalized genomes, in [0,1].
double population_diversity(std::span<const Individual> population,
                            const GenomeBounds& bounds) {
    const std::size_t n = population.size();
    if (n < 2) return 1.0;
    const std::size_t genes = bounds.genes();
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            double dist = 0.0;
            for (std::size_t k = 0; k < genes; ++k) {
                const double range = bounds.range(k);
                if (range <= 0.0) continue;
                dist += std::abs(population[i].genome[k] - population[j].genome[k]) / range;
            }
            total += dist / static_cast<double>(genes);
        }
    return total / (static_cast<double>(n) * static_cast<double>(n - 1) / 2.0);
}

std::vector<std::size_t> ranks_of(const std::vector<std::vector<std::size_t>>& fronts,
                                  std::size_t n) {
    std::vector<std::size_t> rank(n, 0);
    for (std::size_t f = 0; f < fronts.size(); ++f)
        for (std::size_t i : fronts[f]) rank[i] = f;
    return rank;
}

std::vector<double> crowding_by_index(const std::vector<std::vector<std::size_t>>& fronts,
                                      std::span<const ObjectivePair> points) {
    std::vector<double> crowd(points.size(), 0.0);
    for (const auto& front : fronts) {
        std::vector<ObjectivePair> pts;
        pts.reserve(front.size());
        for (std::size_t i : front) pts.push_back(points[i]);
        const auto d = crowding_distance(pts);
        for (std::size_t k = 0; k < front.size(); ++k) crowd[front[k]] = d[k];
    }
    return crowd;
}

// Roulette weights from an archive's crowding scores; infinite boundary
// scores become twice the largest finite score so they stay favored.
std::vector<double> crowding_weights(const std::vector<double>& crowd) {
    double max_finite = 0.0;
    for (double c : crowd)
        if (std::isfinite(c)) max_finite = std::max(max_finite, c);
    const double boundary = max_finite > 0.0 ? 2.0 * max_finite : 1.0;
    std::vector<double> w(crowd.size());
    for (std::size_t i = 0; i < crowd.size(); ++i)
        w[i] = std::isfinite(crowd[i]) ? crowd[i] + 1e-9 : boundary;
    return w;
}

struct Normalizer {
    ObjectivePair lo{kInf, kInf};
    ObjectivePair hi{-kInf, -kInf};
    void update(const ObjectivePair& p) {
        for (int k = 0; k < 2; ++k) {
            lo[k] = std::min(lo[k], p[k]);
            hi[k] = std::max(hi[k], p[k]);
        }
    }
    double energy(const ObjectivePair& p) const {
        double sum = 0.0;
        for (int k = 0; k < 2; ++k)
            sum += (hi[k] == lo[k]) ? 0.5 : (p[k] - lo[k]) / (hi[k] - lo[k]);
        return sum / 2.0;
    }
};

}  // namespace

std::string_view to_string(ObjectiveMode mode) {
    switch (mode) {
        case ObjectiveMode::Multi: return "multi";
        case ObjectiveMode::Economic: return "economic";
        case ObjectiveMode::Environmental: return "environmental";
    }
    return "?";
}

void AlgorithmConfig::check() const {
    require(population_size >= 2, "population_size must be >= 2");
    require(generations >= 0, "generations must be >= 0");
    require(crossover_prob >= 0.0 && crossover_prob <= 1.0, "crossover_prob in [0,1]");
    require(mutation_prob >= 0.0 && mutation_prob <= 1.0, "mutation_prob in [0,1]");
    require(elite_count >= 0 && elite_count <= population_size, "elite_count in [0,pop]");
    require(sa_cooling > 0.0 && sa_cooling < 1.0, "sa_cooling in (0,1)");
    require(sa_steps_per_temp >= 1, "sa_steps_per_temp >= 1");
    require(aco_evaporation > 0.0 && aco_evaporation < 1.0, "aco_evaporation in (0,1)");
    require(aco_levels >= 2, "aco_levels >= 2");
    require(aco_ants >= 1, "aco_ants >= 1");
    require(pso_velocity_limit > 0.0, "pso_velocity_limit > 0");
    require(archive_capacity >= 1, "archive_capacity >= 1");
}

GenomeBounds make_bounds(const Scenario& s, const EvaluationContext& ctx) {
    const std::size_t T = ctx.load_kw.size();
    GenomeBounds b;
    b.lo.resize(T * kGenesPerHour);
    b.hi.resize(T * kGenesPerHour);
    const double mt_max = s.unit(UnitKind::MT).power_max_kw;
    const double de_max = s.unit(UnitKind::DE).power_max_kw;
    const double bs_max = s.battery.power_max_kw;
    for (std::size_t t = 0; t < T; ++t) {
        const std::size_t base = t * kGenesPerHour;
        b.lo[base + 0] = 0.0;      b.hi[base + 0] = mt_max;
        b.lo[base + 1] = 0.0;      b.hi[base + 1] = de_max;
        b.lo[base + 2] = 0.0;      b.hi[base + 2] = ctx.hydro_avail_kw[t];
        b.lo[base + 3] = -bs_max;  b.hi[base + 3] = bs_max;
        b.lo[base + 4] = 0.0;      b.hi[base + 4] = ctx.ll_max_kw[t];
    }
    return b;
}

DispatchSchedule decode(std::span<const double> genome, const GenomeBounds& bounds) {
    const std::size_t T = genome.size() / kGenesPerHour;
    DispatchSchedule s = DispatchSchedule::zeros(T);
    for (std::size_t t = 0; t < T; ++t) {
        const std::size_t base = t * kGenesPerHour;
        auto clamped = [&](std::size_t k) {
            return std::clamp(genome[base + k], bounds.lo[base + k], bounds.hi[base + k]);
        };
        s.mt_kw[t] = clamped(0);
        s.de_kw[t] = clamped(1);
        s.hg_kw[t] = clamped(2);
        s.bs_kw[t] = clamped(3);
        s.ll_kw[t] = clamped(4);
    }
    return s;
}

Evaluator::Evaluator(const Scenario& scenario, ObjectiveMode mode,
                     std::uint64_t master_seed)
    : scenario_(&scenario),
      ctx_(make_context(scenario)),
      bounds_(make_bounds(scenario, ctx_)),
      mode_(mode),
      stochastic_(scenario.economics.stochastic_mode),
      master_seed_(master_seed) {}

ScoredSolution Evaluator::score(std::span<const double> genome,
                                std::uint64_t eval_key) const {
    StochasticFactors sf = StochasticFactors::deterministic();
    if (stochastic_ == StochasticMode::Seeded) {
        rng::Stream stream = rng::substream(master_seed_, "stochastic-factors", eval_key);
        sf = StochasticFactors::sample(stream);
    }
    EvaluationResult r =
        evaluate_detailed(decode(genome, bounds_), *scenario_, ctx_, sf);
    ScoredSolution out;
    out.schedule = std::move(r.realized);
    out.battery_energy_kwh = std::move(r.battery_energy_kwh);
    out.objectives = r.objectives;
    const double f = r.objectives.operating_cost_usd + r.objectives.penalty_usd;
    const double ce = r.objectives.environmental_cost_usd + r.objectives.penalty_usd;
    switch (mode_) {
        case ObjectiveMode::Multi: out.penalized = {f, ce}; break;
        case ObjectiveMode::Economic: out.penalized = {f, f}; break;
        case ObjectiveMode::Environmental: out.penalized = {ce, ce}; break;
    }
    return out;
}

void evaluate_population(const Evaluator& evaluator,
                         std::span<const std::vector<double>> genomes,
                         std::uint64_t iteration_key,
                         std::vector<ScoredSolution>& out, bool parallel) {
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(genomes.size());
    out.resize(genomes.size());
#pragma omp parallel for schedule(static) if (parallel)
    for (std::ptrdiff_t i = 0; i < n; ++i)
        out[static_cast<std::size_t>(i)] =
            evaluator.score(genomes[static_cast<std::size_t>(i)],
                            rng::mix(iteration_key, static_cast<std::uint64_t>(i)));
}

std::size_t roulette_select(std::span<const double> weights, rng::Stream& stream) {
    double total = 0.0;
    for (double w : weights) {
        require(w >= 0.0, "roulette_select: negative weight");
        total += w;
    }
    require(total > 0.0, "roulette_select: all weights zero");
    const double pick = stream.unit() * total;
    double acc = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        acc += weights[i];
        if (pick < acc) return i;
    }
    return weights.size() - 1;
}

std::pair<std::vector<double>, std::vector<double>> multipoint_crossover(
    std::span<const double> a, std::span<const double> b, rng::Stream& stream,
    int points) {
    require(a.size() == b.size(), "multipoint_crossover: length mismatch");
    const std::size_t n = a.size();
    require(points >= 1 && static_cast<std::size_t>(points) < n,
            "multipoint_crossover: bad point count");
    std::vector<std::size_t> positions(n - 1);
    std::iota(positions.begin(), positions.end(), 1);
    for (int k = 0; k < points; ++k) {
        const std::size_t j =
            k + static_cast<std::size_t>(stream.integer(positions.size() - k));
        std::swap(positions[k], positions[j]);
    }
    std::vector<std::size_t> cuts(positions.begin(), positions.begin() + points);
    std::sort(cuts.begin(), cuts.end());

    std::vector<double> child1(n), child2(n);
    bool swapped = false;
    std::size_t cut = 0;
    for (std::size_t i = 0; i < n; ++i) {
        while (cut < cuts.size() && cuts[cut] == i) {
            swapped = !swapped;
            ++cut;
        }
        child1[i] = swapped ? b[i] : a[i];
        child2[i] = swapped ? a[i] : b[i];
    }
    return {std::move(child1), std::move(child2)};
}

std::vector<double> adaptive_mutation(std::span<const double> genome,
                                      double diversity, rng::Stream& stream,
                                      const AlgorithmConfig& cfg,
                                      const GenomeBounds& bounds) {
    const double rate =
        std::clamp(cfg.mutation_prob * (2.0 - diversity), 0.0, 1.0);
    std::vector<double> out(genome.begin(), genome.end());
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (!stream.bernoulli(rate)) continue;
        out[i] += stream.uniform(-1.0, 1.0) * 0.10 * bounds.range(i);
        out[i] = std::clamp(out[i], bounds.lo[i], bounds.hi[i]);
    }
    return out;
}

bool metropolis_accept(double current_energy, double candidate_energy,
                       double temperature, rng::Stream& stream) {
    if (candidate_energy <= current_energy) return true;
    return stream.unit() <
           std::exp(-(candidate_energy - current_energy) / temperature);
}

std::vector<double> pso_velocity_update(std::span<const double> velocity,
                                        std::span<const double> position,
                                        std::span<const double> pbest,
                                        std::span<const double> gbest,
                                        const AlgorithmConfig& cfg,
                                        const GenomeBounds& bounds,
                                        rng::Stream& stream) {
    require(velocity.size() == position.size() && position.size() == pbest.size() &&
                pbest.size() == gbest.size(),
            "pso_velocity_update: length mismatch");
    const double r1 = stream.unit();
    const double r2 = stream.unit();
    std::vector<double> out(velocity.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        const double v = cfg.pso_inertia * velocity[i] +
                         cfg.pso_c1 * r1 * (pbest[i] - position[i]) +
                         cfg.pso_c2 * r2 * (gbest[i] - position[i]);
        const double limit = cfg.pso_velocity_limit * bounds.range(i);
        out[i] = std::clamp(v, -limit, limit);
    }
    return out;
}

std::vector<int> aco_path_select(const std::vector<std::vector<double>>& pheromone,
                                 const std::vector<std::vector<double>>& heuristic,
                                 const AlgorithmConfig& cfg, rng::Stream& stream) {
    require(pheromone.size() == heuristic.size(), "aco_path_select: shape mismatch");
    std::vector<int> choice(pheromone.size());
    std::vector<double> weights;
    for (std::size_t v = 0; v < pheromone.size(); ++v) {
        const auto& tau = pheromone[v];
        const auto& eta = heuristic[v];
        require(tau.size() == eta.size(), "aco_path_select: shape mismatch");
        weights.resize(tau.size());
        for (std::size_t l = 0; l < tau.size(); ++l) {
            require(tau[l] > 0.0 && eta[l] > 0.0, "aco_path_select: nonpositive entry");
            weights[l] = std::pow(tau[l], cfg.aco_alpha) * std::pow(eta[l], cfg.aco_beta);
        }
        choice[v] = static_cast<int>(roulette_select(weights, stream));
    }
    return choice;
}

void aco_pheromone_update(std::vector<std::vector<double>>& pheromone,
                          const std::vector<std::vector<double>>& deposits,
                          double evaporation) {
    require(evaporation > 0.0 && evaporation < 1.0, "aco_pheromone_update: rho in (0,1)");
    for (std::size_t v = 0; v < pheromone.size(); ++v)
        for (std::size_t l = 0; l < pheromone[v].size(); ++l)
            pheromone[v][l] = (1.0 - evaporation) * pheromone[v][l] + deposits[v][l];
}

// --- MOGA --------------------------------------------------------------------

MogaResult moga_run(const Evaluator& evaluator, const AlgorithmConfig& cfg,
                    std::optional<int> generations_override,
                    std::span<const std::vector<double>> seed_genomes, bool parallel) {
    cfg.check();
    const GenomeBounds& bounds = evaluator.bounds();
    const std::size_t n = static_cast<std::size_t>(cfg.population_size);
    const int generations = generations_override.value_or(cfg.generations);
    const std::uint64_t seed = cfg.master_seed;

    std::vector<std::vector<double>> genomes;
    genomes.reserve(n);
    for (const auto& g : seed_genomes) {
        if (genomes.size() == n) break;
        genomes.push_back(clamp_genome(g, bounds));
    }
    {
        rng::Stream init = rng::substream(seed, "moga/init");
        while (genomes.size() < n) genomes.push_back(random_genome(bounds, init));
    }

    MogaResult result{{}, ParetoArchive(cfg.archive_capacity), 0};
    std::vector<ScoredSolution> scores;
    auto evaluate_generation = [&](int gen) {
        evaluate_population(evaluator, genomes,
                            rng::mix(rng::fnv1a("moga/eval"), static_cast<std::uint64_t>(gen)),
                            scores, parallel);
        result.evaluations += genomes.size();
        for (const auto& s : scores) result.archive.insert(s);
    };
    evaluate_generation(0);

    for (int gen = 1; gen <= generations; ++gen) {
        std::vector<ObjectivePair> points(n);
        for (std::size_t i = 0; i < n; ++i) points[i] = scores[i].penalized;
        const auto fronts = non_dominated_sort(points);
        const auto rank = ranks_of(fronts, n);
        const auto crowd = crowding_by_index(fronts, points);
        const auto norm = normalize(points);

        std::vector<double> weight(n);
        for (std::size_t i = 0; i < n; ++i)
            weight[i] = 1.0 / (1.0 + static_cast<double>(rank[i]) +
                               0.5 * (norm[i][0] + norm[i][1]));

        std::vector<Individual> population(n);
        for (std::size_t i = 0; i < n; ++i)
            population[i] = {genomes[i], scores[i]};
        const double diversity = population_diversity(population, bounds);

        // Elites survive unchanged: best rank first, widest crowding first.
        std::vector<std::size_t> order(n);
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            if (rank[a] != rank[b]) return rank[a] < rank[b];
            return crowd[a] > crowd[b];
        });

        std::vector<std::vector<double>> next;
        next.reserve(n);
        for (int e = 0; e < cfg.elite_count && next.size() < n; ++e)
            next.push_back(genomes[order[static_cast<std::size_t>(e)]]);

        std::size_t reinit_slots = 0;
        if (diversity < cfg.diversity_threshold)
            reinit_slots = static_cast<std::size_t>(cfg.reinit_fraction *
                                                    static_cast<double>(n));

        rng::Stream select = rng::substream(seed, "moga/select", static_cast<std::uint64_t>(gen));
        rng::Stream cross = rng::substream(seed, "moga/cross", static_cast<std::uint64_t>(gen));
        rng::Stream mutate = rng::substream(seed, "moga/mutate", static_cast<std::uint64_t>(gen));
        const std::size_t breed_target = n - std::min(reinit_slots, n - next.size());
        while (next.size() < breed_target) {
            const std::size_t pa = roulette_select(weight, select);
            const std::size_t pb = roulette_select(weight, select);
            std::vector<double> c1 = genomes[pa];
            std::vector<double> c2 = genomes[pb];
            if (cross.bernoulli(cfg.crossover_prob)) {
                const int max_points = std::min<int>(cfg.max_crossover_points,
                                                     static_cast<int>(bounds.genes()) - 1);
                const int k = 1 + static_cast<int>(cross.integer(
                                      static_cast<std::uint64_t>(max_points)));
                auto [x1, x2] = multipoint_crossover(c1, c2, cross, k);
                c1 = std::move(x1);
                c2 = std::move(x2);
            }
            next.push_back(adaptive_mutation(c1, diversity, mutate, cfg, bounds));
            if (next.size() < breed_target)
                next.push_back(adaptive_mutation(c2, diversity, mutate, cfg, bounds));
        }
        rng::Stream reinit = rng::substream(seed, "moga/reinit", static_cast<std::uint64_t>(gen));
        while (next.size() < n) next.push_back(random_genome(bounds, reinit));

        genomes = std::move(next);
        evaluate_generation(gen);
    }

    result.population.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        result.population[i] = {std::move(genomes[i]), std::move(scores[i])};
    return result;
}

// --- MOSA --------------------------------------------------------------------

SearchResult mosa_run(const Evaluator& evaluator, const AlgorithmConfig& cfg,
                      std::span<const std::vector<double>> seed_genomes) {
    cfg.check();
    require(!seed_genomes.empty(), "mosa_run: seed set must be non-empty");
    const GenomeBounds& bounds = evaluator.bounds();
    const std::uint64_t seed = cfg.master_seed;

    SearchResult result{ParetoArchive(cfg.archive_capacity), 0};
    std::vector<Individual> seeds(seed_genomes.size());
    Normalizer env;
    for (std::size_t i = 0; i < seed_genomes.size(); ++i) {
        seeds[i].genome = clamp_genome(seed_genomes[i], bounds);
        seeds[i].scored =
            evaluator.score(seeds[i].genome, rng::mix(rng::fnv1a("mosa/seed"), i));
        ++result.evaluations;
        result.archive.insert(seeds[i].scored);
        env.update(seeds[i].scored.penalized);
    }

    std::vector<ObjectivePair> seed_points(seeds.size());
    for (std::size_t i = 0; i < seeds.size(); ++i) seed_points[i] = seeds[i].scored.penalized;
    const auto fronts = non_dominated_sort(seed_points);
    Individual current = seeds[fronts[0][0]];

    double t0 = cfg.sa_initial_temp;
    if (t0 <= 0.0) {
        // Spread of the scalarized seed energies sets the starting scale.
        double mean = 0.0;
        for (const auto& s : seeds) mean += env.energy(s.scored.penalized);
        mean /= static_cast<double>(seeds.size());
        double var = 0.0;
        for (const auto& s : seeds) {
            const double d = env.energy(s.scored.penalized) - mean;
            var += d * d;
        }
        t0 = std::sqrt(var / static_cast<double>(seeds.size()));
        if (t0 < 1e-9) t0 = 0.1;
    }
    const double t_stop = cfg.sa_termination_temp > 0.0 ? cfg.sa_termination_temp
                                                        : 1e-4 * t0;

    double temperature = t0;
    std::uint64_t temp_index = 0;
    while (temperature >= t_stop) {
        rng::Stream moves = rng::substream(seed, "mosa/moves", temp_index);
        for (int step = 0; step < cfg.sa_steps_per_temp; ++step) {
            std::vector<double> neighbor = current.genome;
            bool changed = false;
            for (std::size_t i = 0; i < neighbor.size(); ++i) {
                if (!moves.bernoulli(cfg.sa_perturb_prob)) continue;
                neighbor[i] += moves.uniform(-1.0, 1.0) * cfg.sa_perturb_range *
                               bounds.range(i);
                neighbor[i] = std::clamp(neighbor[i], bounds.lo[i], bounds.hi[i]);
                changed = true;
            }
            if (!changed) {
                const std::size_t i = static_cast<std::size_t>(moves.integer(neighbor.size()));
                neighbor[i] = std::clamp(neighbor[i] + moves.uniform(-1.0, 1.0) *
                                                           cfg.sa_perturb_range *
                                                           bounds.range(i),
                                         bounds.lo[i], bounds.hi[i]);
            }
            ScoredSolution cand = evaluator.score(
                neighbor,
                rng::mix(rng::fnv1a("mosa/eval"),
                         temp_index * static_cast<std::uint64_t>(cfg.sa_steps_per_temp) +
                             static_cast<std::uint64_t>(step)));
            ++result.evaluations;
            env.update(cand.penalized);
            result.archive.insert(cand);

            if (!dominates(current.scored.penalized, cand.penalized)) {
                current = {std::move(neighbor), std::move(cand)};
            } else if (metropolis_accept(env.energy(current.scored.penalized),
                                         env.energy(cand.penalized), temperature,
                                         moves)) {
                current = {std::move(neighbor), std::move(cand)};
            }
        }
        temperature *= cfg.sa_cooling;
        ++temp_index;
    }
    return result;
}

// --- MOPSO -------------------------------------------------------------------

SearchResult mopso_run(const Evaluator& evaluator, const AlgorithmConfig& cfg,
                       std::span<const std::vector<double>> seed_genomes,
                       bool parallel) {
    cfg.check();
    require(!seed_genomes.empty(), "mopso_run: seed population must be non-empty");
    const GenomeBounds& bounds = evaluator.bounds();
    const std::size_t n = static_cast<std::size_t>(cfg.population_size);
    const std::size_t genes = bounds.genes();
    const std::uint64_t seed = cfg.master_seed;

    std::vector<std::vector<double>> positions;
    positions.reserve(n);
    for (const auto& g : seed_genomes) {
        if (positions.size() == n) break;
        positions.push_back(clamp_genome(g, bounds));
    }
    {
        rng::Stream init = rng::substream(seed, "mopso/init");
        while (positions.size() < n) positions.push_back(random_genome(bounds, init));
    }
    std::vector<std::vector<double>> velocities(n, std::vector<double>(genes));
    for (std::size_t i = 0; i < n; ++i) {
        rng::Stream v0 = rng::substream(seed, "mopso/vel0", i);
        for (std::size_t k = 0; k < genes; ++k) {
            const double limit = cfg.pso_velocity_limit * bounds.range(k);
            velocities[i][k] = v0.uniform(-limit, limit);
        }
    }

    SearchResult result{ParetoArchive(cfg.archive_capacity), 0};
    std::vector<ScoredSolution> scores;
    evaluate_population(evaluator, positions, rng::fnv1a("mopso/eval0"), scores, parallel);
    result.evaluations += n;
    for (const auto& s : scores) result.archive.insert(s);

    std::vector<ScoredSolution> pbest = scores;
    std::vector<std::vector<double>> pbest_pos = positions;

    for (int iter = 1; iter <= cfg.generations; ++iter) {
        const auto key = static_cast<std::uint64_t>(iter);
        const auto arch_weights = crowding_weights(result.archive.crowding());
        rng::Stream gbest_stream = rng::substream(seed, "mopso/gbest", key);
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t g = roulette_select(arch_weights, gbest_stream);
            const std::vector<double> gbest =
                encode(result.archive.members()[g].schedule);
            rng::Stream vel = rng::substream(seed, "mopso/vel", key, i);
            velocities[i] = pso_velocity_update(velocities[i], positions[i],
                                                pbest_pos[i], gbest, cfg, bounds, vel);
            for (std::size_t k = 0; k < genes; ++k)
                positions[i][k] = std::clamp(positions[i][k] + velocities[i][k],
                                             bounds.lo[k], bounds.hi[k]);
        }

        // Small perturbation of a quarter of the swarm, fading with progress.
        rng::Stream perturb = rng::substream(seed, "mopso/perturb", key);
        const double intensity =
            0.05 * (1.0 - 0.5 * static_cast<double>(iter) /
                              static_cast<double>(std::max(cfg.generations, 1)));
        for (std::size_t i = 0; i < n; ++i) {
            if (!perturb.bernoulli(cfg.pso_perturb_fraction)) continue;
            for (std::size_t k = 0; k < genes; ++k) {
                positions[i][k] += perturb.uniform(-1.0, 1.0) * intensity * bounds.range(k);
                positions[i][k] = std::clamp(positions[i][k], bounds.lo[k], bounds.hi[k]);
            }
        }

        if (cfg.pso_hybrid_reproduction) {
            // Optional GA-style reproduction pass over a quarter of the swarm.
            std::vector<ObjectivePair> points(n);
            for (std::size_t i = 0; i < n; ++i) points[i] = pbest[i].penalized;
            const auto rank = ranks_of(non_dominated_sort(points), n);
            std::vector<double> weight(n);
            for (std::size_t i = 0; i < n; ++i)
                weight[i] = 1.0 / (1.0 + static_cast<double>(rank[i]));
            rng::Stream breed = rng::substream(seed, "mopso/breed", key);
            for (std::size_t pair = 0; pair + 1 < n / 4; pair += 2) {
                const std::size_t a = roulette_select(weight, breed);
                const std::size_t b = roulette_select(weight, breed);
                if (breed.bernoulli(cfg.crossover_prob)) {
                    auto [c1, c2] =
                        multipoint_crossover(positions[a], positions[b], breed, 1);
                    positions[a] = adaptive_mutation(c1, 1.0, breed, cfg, bounds);
                    positions[b] = adaptive_mutation(c2, 1.0, breed, cfg, bounds);
                    velocities[a].assign(genes, 0.0);
                    velocities[b].assign(genes, 0.0);
                }
            }
        }

        evaluate_population(evaluator, positions,
                            rng::mix(rng::fnv1a("mopso/eval"), key), scores, parallel);
        result.evaluations += n;
        for (std::size_t i = 0; i < n; ++i) {
            result.archive.insert(scores[i]);
            if (scores[i].penalized != pbest[i].penalized &&
                !dominates(pbest[i].penalized, scores[i].penalized)) {
                pbest[i] = scores[i];
                pbest_pos[i] = positions[i];
            }
        }
    }
    return result;
}

// --- MOACO -------------------------------------------------------------------

SearchResult moaco_run(const Evaluator& evaluator, const AlgorithmConfig& cfg,
                       std::span<const std::vector<double>> seed_genomes,
                       bool parallel) {
    cfg.check();
    const GenomeBounds& bounds = evaluator.bounds();
    const std::size_t genes = bounds.genes();
    const std::size_t levels = static_cast<std::size_t>(cfg.aco_levels);
    const std::uint64_t seed = cfg.master_seed;

    std::vector<std::vector<double>> level_value(genes, std::vector<double>(levels));
    for (std::size_t v = 0; v < genes; ++v)
        for (std::size_t l = 0; l < levels; ++l)
            level_value[v][l] = bounds.lo[v] + bounds.range(v) * static_cast<double>(l) /
                                                   static_cast<double>(levels - 1);

    // Static per-level heuristic: cheapness of the setpoint by marginal fuel
    // plus emission cost; cost-free variables see a flat heuristic.
    const Scenario& sc = evaluator.scenario();
    const EvaluationContext& ctx = evaluator.context();
    std::vector<std::vector<double>> heuristic(genes, std::vector<double>(levels, 1.0));
    for (std::size_t v = 0; v < genes; ++v) {
        const std::size_t gene_kind = v % kGenesPerHour;
        double max_eta = 0.0;
        std::vector<double>& eta = heuristic[v];
        for (std::size_t l = 0; l < levels; ++l) {
            double cost = 0.0;
            const double x = level_value[v][l];
            if (gene_kind == 0)
                cost = mt_fuel_cost(x, ctx.dt_hours, sc.devices.mt) +
                       ctx.mt_emission_usd_per_mwh * x * ctx.dt_hours / 1000.0;
            else if (gene_kind == 1)
                cost = de_fuel_cost(x, sc.devices.de) * ctx.dt_hours +
                       ctx.de_emission_usd_per_mwh * x * ctx.dt_hours / 1000.0;
            eta[l] = 1.0 / std::max(cost, 1e-6);
            max_eta = std::max(max_eta, eta[l]);
        }
        for (std::size_t l = 0; l < levels; ++l) eta[l] /= max_eta;
    }

    std::vector<std::vector<double>> pheromone(
        genes, std::vector<double>(levels, cfg.aco_initial_pheromone));

    SearchResult result{ParetoArchive(cfg.archive_capacity), 0};
    for (std::size_t i = 0; i < seed_genomes.size(); ++i) {
        const auto g = clamp_genome(seed_genomes[i], bounds);
        result.archive.insert(
            evaluator.score(g, rng::mix(rng::fnv1a("moaco/seed"), i)));
        ++result.evaluations;
        for (std::size_t v = 0; v < genes; ++v) {
            const double range = bounds.range(v);
            std::size_t nearest = 0;
            if (range > 0.0) {
                const double pos = (g[v] - bounds.lo[v]) / range *
                                   static_cast<double>(levels - 1);
                nearest = static_cast<std::size_t>(
                    std::clamp<long long>(std::llround(pos), 0,
                                          static_cast<long long>(levels - 1)));
            }
            pheromone[v][nearest] += cfg.aco_initial_pheromone;
        }
    }

    const std::size_t ants = static_cast<std::size_t>(cfg.aco_ants);
    std::vector<std::vector<int>> chosen(ants);
    std::vector<std::vector<double>> genomes(ants);
    std::vector<ScoredSolution> scores;
    for (int iter = 1; iter <= cfg.generations; ++iter) {
        const auto key = static_cast<std::uint64_t>(iter);
        for (std::size_t a = 0; a < ants; ++a) {
            rng::Stream walk = rng::substream(seed, "moaco/walk", key, a);
            chosen[a] = aco_path_select(pheromone, heuristic, cfg, walk);
            genomes[a].resize(genes);
            for (std::size_t v = 0; v < genes; ++v)
                genomes[a][v] = level_value[v][static_cast<std::size_t>(chosen[a][v])];
        }
        evaluate_population(evaluator, genomes,
                            rng::mix(rng::fnv1a("moaco/eval"), key), scores, parallel);
        result.evaluations += ants;
        for (const auto& s : scores) result.archive.insert(s);

        std::vector<ObjectivePair> points(ants);
        for (std::size_t a = 0; a < ants; ++a) points[a] = scores[a].penalized;
        const auto fronts = non_dominated_sort(points);
        const auto norm = normalize(points);
        std::vector<std::vector<double>> deposits(genes,
                                                  std::vector<double>(levels, 0.0));
        for (std::size_t a : fronts[0]) {
            const double quality = 1.0 - 0.5 * (norm[a][0] + norm[a][1]);
            for (std::size_t v = 0; v < genes; ++v)
                deposits[v][static_cast<std::size_t>(chosen[a][v])] += quality;
        }

        // Evaporation relaxes toward half strength late in the run.
        const double rho = cfg.aco_evaporation *
                           (1.0 - 0.5 * static_cast<double>(iter - 1) /
                                      static_cast<double>(std::max(cfg.generations, 1)));
        aco_pheromone_update(pheromone, deposits, rho);
        for (auto& row : pheromone)
            for (double& tau : row) tau = std::max(tau, 1e-12);
    }
    return result;
}

}  // namespace microgrid
