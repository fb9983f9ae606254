#include "microgrid/mocore.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace microgrid {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

template <class Objs>
std::vector<std::vector<std::size_t>> fast_non_dominated_sort(const Objs& objs,
                                                              std::size_t n) {
    std::vector<std::vector<std::size_t>> dominated_by(n);
    std::vector<int> domination_count(n, 0);
    std::vector<std::vector<std::size_t>> fronts;
    std::vector<std::size_t> current;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            if (dominates(objs[i], objs[j]))
                dominated_by[i].push_back(j);
            else if (dominates(objs[j], objs[i]))
                ++domination_count[i];
        }
        if (domination_count[i] == 0) current.push_back(i);
    }
    while (!current.empty()) {
        fronts.push_back(current);
        std::vector<std::size_t> next;
        for (std::size_t i : fronts.back())
            for (std::size_t j : dominated_by[i])
                if (--domination_count[j] == 0) next.push_back(j);
        std::sort(next.begin(), next.end());
        current = std::move(next);
    }
    return fronts;
}

}  // namespace

bool dominates(std::span<const double> a, std::span<const double> b) {
    bool strictly_better = false;
    for (std::size_t k = 0; k < a.size(); ++k) {
        if (a[k] > b[k]) return false;
        if (a[k] < b[k]) strictly_better = true;
    }
    return strictly_better;
}

bool dominates(const ObjectivePair& a, const ObjectivePair& b) {
    return (a[0] <= b[0] && a[1] <= b[1]) && (a[0] < b[0] || a[1] < b[1]);
}

std::vector<std::vector<std::size_t>> non_dominated_sort(
    std::span<const std::vector<double>> objectives) {
    return fast_non_dominated_sort(objectives, objectives.size());
}

std::vector<std::vector<std::size_t>> non_dominated_sort(
    std::span<const ObjectivePair> objectives) {
    return fast_non_dominated_sort(objectives, objectives.size());
}

std::vector<double> crowding_distance(std::span<const ObjectivePair> front) {
    const std::size_t n = front.size();
    std::vector<double> distance(n, 0.0);
    if (n == 0) return distance;

    // Exact duplicates after the first occurrence score zero; the unique
    // points are ranked by the usual neighbor-gap sum.
    std::vector<std::size_t> unique_idx;
    std::vector<bool> duplicate(n, false);
    for (std::size_t i = 0; i < n; ++i) {
        bool seen = false;
        for (std::size_t u : unique_idx)
            if (front[u] == front[i]) { seen = true; break; }
        if (seen) duplicate[i] = true;
        else unique_idx.push_back(i);
    }

    const std::size_t m = unique_idx.size();
    if (m <= 2) {
        for (std::size_t u : unique_idx) distance[u] = kInf;
        return distance;
    }
    for (int obj = 0; obj < 2; ++obj) {
        std::vector<std::size_t> order = unique_idx;
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return front[a][obj] < front[b][obj];
        });
        const double lo = front[order.front()][obj];
        const double hi = front[order.back()][obj];
        distance[order.front()] = kInf;
        distance[order.back()] = kInf;
        if (hi == lo) continue;
        for (std::size_t k = 1; k + 1 < m; ++k) {
            if (std::isinf(distance[order[k]])) continue;
            distance[order[k]] +=
                (front[order[k + 1]][obj] - front[order[k - 1]][obj]) / (hi - lo);
        }
    }
    return distance;
}

std::vector<ObjectivePair> normalize(std::span<const ObjectivePair> values) {
    std::vector<ObjectivePair> out(values.begin(), values.end());
    if (values.empty()) return out;
    for (int obj = 0; obj < 2; ++obj) {
        double lo = values[0][obj], hi = values[0][obj];
        for (const auto& v : values) {
            lo = std::min(lo, v[obj]);
            hi = std::max(hi, v[obj]);
        }
        for (auto& v : out)
            v[obj] = (hi == lo) ? 0.5 : (v[obj] - lo) / (hi - lo);
    }
    return out;
}

double hypervolume_2d(std::span<const ObjectivePair> front, const ObjectivePair& ref) {
    if (front.empty()) return 0.0;
    for (const auto& p : front)
        if (!dominates(p, ref))
            throw std::invalid_argument("hypervolume_2d: point does not dominate ref");

    // Sweep the non-dominated subset left to right; each kept point adds the
    // rectangle between its own y and the previous kept point's y.
    std::vector<ObjectivePair> pts(front.begin(), front.end());
    std::sort(pts.begin(), pts.end());
    double area = 0.0;
    double prev_y = ref[1];
    for (const auto& p : pts) {
        if (p[1] >= prev_y) continue;  // dominated by an earlier point
        area += (ref[0] - p[0]) * (prev_y - p[1]);
        prev_y = p[1];
    }
    return area;
}

std::vector<ObjectivePair> ParetoArchive::objective_points() const {
    std::vector<ObjectivePair> pts;
    pts.reserve(members_.size());
    for (const auto& m : members_) pts.push_back(m.penalized);
    return pts;
}

std::vector<double> ParetoArchive::crowding() const {
    return crowding_distance(objective_points());
}

bool ParetoArchive::insert(ScoredSolution s) {
    for (const auto& m : members_)
        if (m.penalized == s.penalized || dominates(m.penalized, s.penalized))
            return false;
    std::erase_if(members_, [&](const ScoredSolution& m) {
        return dominates(s.penalized, m.penalized);
    });
    members_.push_back(std::move(s));
    if (members_.size() > capacity_) {
        const std::vector<double> crowd = crowding();
        std::size_t evict = 0;
        for (std::size_t i = 1; i < members_.size(); ++i)
            if (crowd[i] < crowd[evict]) evict = i;
        members_.erase(members_.begin() + static_cast<std::ptrdiff_t>(evict));
    }
    return true;
}

}  // namespace microgrid
