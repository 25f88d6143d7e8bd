#pragma once

#include "equistat/flow.hpp"

#include <optional>
#include <vector>

namespace equistat {

// ---------------------------------------------------------------------------
// matching with (imperfectly) transferable utility

// Worker utility U(w) strictly increasing, firm utility V(w) strictly decreasing in the wage.
struct TransferMap {
    enum class Kind { tu, affine, tabulated };
    Kind kind = Kind::tu;
    Rat alpha, gamma;                          // tu: U = alpha + w, V = gamma - w
    Rat au{1}, bu, av{1}, bv;                  // affine: U = au w + bu, V = bv - av w
    std::vector<std::pair<Rat, Rat>> u_table;  // tabulated (w, U)
    std::vector<std::pair<Rat, Rat>> v_table;  // tabulated (w, V)

    static TransferMap tu(Rat alpha, Rat gamma);

    void validate() const;
    Rat U(const Rat& w) const;
    Rat V(const Rat& w) const;
    Rat U_inv(const Rat& u) const;
    Rat V_inv(const Rat& v) const;
    // G(p_y) = U(V^{-1}(-p_y)).
    ConnectionFunction connection() const;
};

struct ItuMarket {
    std::vector<Rat> n;                         // workers per type
    std::vector<Rat> m;                         // firms per type
    std::vector<std::vector<TransferMap>> maps; // [x][y]
    bool with_singles = false;

    void validate() const;
    std::size_t workers() const { return n.size(); }
    std::size_t firms() const { return m.size(); }
    bool transferable() const;
};

// Pair flows plus reservation flows; wages only for matched pairs.
struct Matching {
    std::vector<std::vector<Rat>> mu;  // [x][y]
    std::vector<Rat> mu_x0;
    std::vector<Rat> mu_0y;
    std::vector<std::vector<std::optional<Rat>>> w;
};

// Node order: worker types, firm types, then the reservation node when singles are allowed.
FlowProblem itu_to_flow(const ItuMarket& m);
Matching flow_to_matching(const ItuMarket& m, const FlowOutcome& out);
Verdict check_stability_itu(const ItuMarket& m, const Matching& match);
Rat total_surplus_tu(const ItuMarket& m, const Matching& match);

struct ItuSolution {
    FlowOutcome outcome;
    Matching matching;
    std::vector<Rat> u, v;
};

// Prices normalized so the reservation node (or the first worker type) is at zero.
ItuSolution solve_itu(const ItuMarket& m);
// Every equilibrium vertex found by the general solver with the same normalization.
std::vector<FlowOutcome> itu_equilibrium_vertices(const ItuMarket& m, std::size_t max_solutions = 256);

// ---------------------------------------------------------------------------
// matching without transfers

struct NtuMarket {
    std::vector<std::vector<Rat>> alpha;  // [x][y], man's utility
    std::vector<std::vector<Rat>> gamma;  // [x][y], woman's utility
    std::vector<Rat> alpha0;              // man single
    std::vector<Rat> gamma0;              // woman single

    // Throws InputError naming the first tie in preferences.
    void validate() const;
    std::size_t men() const { return alpha.size(); }
    std::size_t women() const { return gamma0.size(); }
};

// Best acceptable option of man x under requirements v, or nothing when single is best.
std::optional<std::size_t> ntu_choice(const NtuMarket& m, std::size_t x, const Point& v);
std::vector<long> ntu_excess_supply(const NtuMarket& m, const Point& v);
// Matching read off requirements v through the demand indicators.
Matching ntu_reconstruct(const NtuMarket& m, const Point& v);

Verdict check_feasibility_ntu(const NtuMarket& m, const Matching& match);
Verdict check_stability_ntu(const NtuMarket& m, const Matching& match);
Point ntu_payoffs_u(const NtuMarket& m, const Matching& match);
Point ntu_payoffs_v(const NtuMarket& m, const Matching& match);

// Per-woman payoff levels {gamma_xy} and gamma_0y, and their product grid.
std::vector<std::vector<Rat>> ntu_levels(const NtuMarket& m);
std::vector<Point> ntu_candidate_grid(const NtuMarket& m);

struct NtuOutcome {
    Point v;
    Matching match;
    bool stable = false;
};

// Zeros of the excess supply on the candidate grid with their reconstructed matchings.
std::vector<NtuOutcome> ntu_solve(const NtuMarket& m);

enum class Side { men, women };
Matching gale_shapley(const NtuMarket& m, Side proposing);

FiniteCorrespondence ntu_tabulate(const NtuMarket& m, const std::vector<Point>& grid);
Verdict ntu_m0_check(const NtuMarket& m, const std::vector<Point>& grid);

// Meets and joins of stable payoff vectors are stable payoff vectors.
LatticeReport ntu_lattice_report(const NtuMarket& m, const std::vector<Point>& stable_v);

// ---------------------------------------------------------------------------
// hedonic pricing

struct HedonicMarket {
    std::vector<Rat> n;  // producers per type
    std::vector<Rat> m;  // consumers per type
    std::size_t qualities = 0;
    std::vector<std::vector<std::pair<Rat, Rat>>> pi;  // [x][w] = (a, b): profit a p + b, a > 0
    std::vector<std::vector<std::pair<Rat, Rat>>> s;   // [y][w] = (d, e): surplus d - e p, e > 0

    void validate() const;
    Rat profit(std::size_t x, std::size_t w, const Rat& p) const;
    Rat surplus(std::size_t y, std::size_t w, const Rat& p) const;
};

struct HedonicAllocation {
    std::vector<std::vector<Rat>> mu_xw;  // [x][w]
    std::vector<Rat> mu_x0;
    std::vector<std::vector<Rat>> mu_wy;  // [w][y]
    std::vector<Rat> mu_0y;
};

// Node order: producers, qualities, consumers, then the reservation node.
FlowProblem hedonic_to_flow(const HedonicMarket& m);

struct HedonicOutcome {
    std::vector<Rat> price;  // per quality
    HedonicAllocation alloc;
    std::vector<Rat> u, v;
};

HedonicOutcome hedonic_from_flow(const HedonicMarket& m, const FlowOutcome& out);
// Node prices (u, p, -v, 0) of an outcome.
std::vector<Rat> hedonic_node_prices(const HedonicMarket& m, const HedonicOutcome& h);
Verdict verify_hedonic(const HedonicMarket& m, const std::vector<Rat>& price, const HedonicAllocation& alloc,
                       const Rat& eps = Rat(0));

struct HedonicSolution {
    std::optional<HedonicOutcome> outcome;
    std::vector<FlowOutcome> vertices;
    std::string report;
};

HedonicSolution hedonic_solve(const HedonicMarket& m, bool enumerate_all = false, std::size_t max_solutions = 256);

// Closure of verified equilibrium price vectors for a fixed flow problem.
LatticeReport equilibrium_lattice_report(const FlowProblem& prob, const std::vector<Point>& prices);

}  // namespace equistat
