#pragma once

#include "equistat/conv.hpp"
#include "equistat/flow.hpp"
#include "equistat/markets.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace equistat {

// Tolerances of the acceptance battery.
inline constexpr double kTabulatedDepartureTol = 1e-9;
inline constexpr double kLogitTol = 1e-9;
inline constexpr double kConservationTol = 1e-12;
inline const Rat kHedonicEps = Rat(1, 1000000000);

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0;
};

inline constexpr int kCriteria = 17;

// Runs one criterion; ids are 1..kCriteria.
CriterionResult run_criterion(int id, std::uint64_t seed);
std::vector<CriterionResult> run_acceptance(std::uint64_t seed, const std::vector<int>& only = {});
std::string format_result(const CriterionResult& r);

// Random instance generators shared by the acceptance battery and the property tests.
namespace gen {

using Rng = std::mt19937_64;

long uniform(Rng& rng, long lo, long hi);
std::vector<Rat> levels(long lo, long hi);

// q = A p + b with A off-diagonally nonpositive, tabulated on {0,1,2}^dim.
FiniteCorrespondence wgs_linear(Rng& rng, std::size_t dim);
// Separable convex costs plus a convex function of total output on {0..L}^dim.
DiscreteProducer mnatural_producer(Rng& rng, std::size_t dim, long L);
// Random subset of {0,1,2}^dim with random rational costs.
DiscreteProducer random_producer(Rng& rng, std::size_t dim, std::size_t max_points);
// Full quantity grid {0..L}^dim with random rational costs.
DiscreteProducer grid_producer(Rng& rng, std::size_t dim, long L);
// Mixed connection variants whose tabulated ranges cover [lo, hi].
Network random_network(Rng& rng, std::size_t nodes, std::size_t arcs, long lo, long hi, bool additive_only = false);
FlowProblem random_additive_problem(Rng& rng, std::size_t nodes, std::size_t arcs);
NtuMarket random_ntu(Rng& rng, std::size_t men, std::size_t women);
ItuMarket random_tu(Rng& rng, std::size_t workers, std::size_t firms, bool with_singles);
HedonicMarket random_hedonic(Rng& rng, std::size_t producers, std::size_t qualities, std::size_t consumers);

}  // namespace gen

}  // namespace equistat
