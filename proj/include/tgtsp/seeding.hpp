#ifndef TGTSP_SEEDING_HPP
#define TGTSP_SEEDING_HPP

#include <cstdint>
#include <vector>

#include "tgtsp/scenario.hpp"
#include "tgtsp/trajectory.hpp"

namespace tgtsp {

/// Discrete visiting order over city centroids plus its closed-tour length
/// (start point -> centroids in order -> end point, Euclidean).
struct TourPermutation {
  std::vector<int> order;  // city ids, each at most once
  double length = 0.0;
};

/// Euclidean length of the centroid tour for an arbitrary order.
double centroid_tour_length(const Scenario& scenario,
                            const std::vector<int>& order);

/// Nearest-neighbor construction from the start point followed by
/// first-improvement 2-opt. Deterministic for a given seed: the seed picks
/// the entry city (seed % |cities| forces the first visit on restarts > 0),
/// ties break toward the lower city id.
TourPermutation heuristic_tour(const Scenario& scenario, std::uint64_t rng_seed);

/// Exhaustive global minimum over all permutations; canonical tie-break
/// (lexicographically smallest order). Throws ValidationError above 10 cities.
TourPermutation brute_force_tour(const Scenario& scenario);

/// Piecewise-linear tour trajectory through the centroids in `perm` order
/// with a zero-velocity loiter at each city long enough to satisfy its dwell
/// requirement. Leg durations keep sampled speeds at or below 0.9 * v_max.
/// The permutation may be a subset of the cities (orienteering seeds).
/// Throws ValidationError if a city centroid lies in a forbidden zone and no
/// zone-free aim point inside the city can be found.
Trajectory seed_trajectory(const Scenario& scenario, const TourPermutation& perm,
                           int nodes_per_leg);

}  // namespace tgtsp

#endif  // TGTSP_SEEDING_HPP
