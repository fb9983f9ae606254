#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "microgrid/costs.hpp"

namespace microgrid {

using ObjectivePair = std::array<double, 2>;

struct ScoredSolution {
    DispatchSchedule schedule;                  // realized (post-repair)
    std::vector<double> battery_energy_kwh;    // state of charge per hour
    ObjectiveVector objectives;
    ObjectivePair penalized{};                  // comparison space

    bool operator==(const ScoredSolution&) const = default;
};

// Pareto dominance for minimization: no worse everywhere, better somewhere.
bool dominates(std::span<const double> a, std::span<const double> b);
bool dominates(const ObjectivePair& a, const ObjectivePair& b);

// Successive non-dominated fronts; front 0 is the non-dominated set and
// every index appears in exactly one front.
std::vector<std::vector<std::size_t>> non_dominated_sort(
    std::span<const std::vector<double>> objectives);
std::vector<std::vector<std::size_t>> non_dominated_sort(
    std::span<const ObjectivePair> objectives);

// NSGA-II crowding distance over one front. Boundary points get infinity;
// exact objective-vector duplicates beyond the first occurrence get zero.
std::vector<double> crowding_distance(std::span<const ObjectivePair> front);

// Max-min normalization per objective; a degenerate column maps to 0.5.
std::vector<ObjectivePair> normalize(std::span<const ObjectivePair> values);

// Area dominated by the front up to ref (sorted sweep). Throws
// std::invalid_argument if any point fails to dominate ref.
double hypervolume_2d(std::span<const ObjectivePair> front, const ObjectivePair& ref);

// Bounded archive of mutually non-dominated solutions. Insertions reject
// dominated or duplicate points, evict newly dominated members, and shed the
// lowest-crowding member when over capacity.
class ParetoArchive {
public:
    explicit ParetoArchive(std::size_t capacity = 100) : capacity_(capacity) {}

    bool insert(ScoredSolution s);

    const std::vector<ScoredSolution>& members() const { return members_; }
    std::size_t size() const { return members_.size(); }
    bool empty() const { return members_.empty(); }
    std::size_t capacity() const { return capacity_; }

    std::vector<ObjectivePair> objective_points() const;
    std::vector<double> crowding() const;

private:
    std::size_t capacity_;
    std::vector<ScoredSolution> members_;
};

}  // namespace microgrid
