#pragma once

#include "equistat/markets.hpp"

#include <optional>
#include <vector>

// Brute-force reference implementations used to cross-check the solvers.
// None of them calls a library solver.
namespace equistat::oracle {

// Minimum cost over integer flows with 0 <= mu_a <= total supply, or nothing when none balances q.
// Requires additive arcs and integer q.
std::optional<Rat> min_cost_integer_flow(const FlowProblem& prob);

struct IntArc {
    std::size_t from, to;
    long long cost;
};

// Shortest distance from every node to dest with nonnegative integer costs.
std::vector<std::optional<long long>> shortest_to(std::size_t n, const std::vector<IntArc>& arcs, std::size_t dest);

struct TableArc {
    std::size_t from, to;
    std::vector<std::pair<double, double>> table;  // (p_to, p_from), increasing
};

// Latest departure at origin over all simple origin-destination paths; nothing when unreachable.
std::optional<double> latest_departure_by_paths(std::size_t n, const std::vector<TableArc>& arcs, std::size_t origin,
                                                std::size_t dest, double p_d);

// Every stable one-to-one matching as partner-of-man (-1 for single).
std::vector<std::vector<int>> ntu_stable_matchings(const NtuMarket& m);
std::vector<Rat> ntu_women_payoffs(const NtuMarket& m, const std::vector<int>& partner);

// Maximum total TU surplus over integer assignments of individuals; unit counts per type expanded.
Rat tu_assignment_optimum(const ItuMarket& m);

}  // namespace equistat::oracle
