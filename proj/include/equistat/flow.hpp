#pragma once

#include "equistat/corr.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace equistat {

// Strictly increasing, continuous map G giving the upstream price from the downstream one.
struct ConnectionFunction {
    enum class Kind { additive, affine, tabulated };
    Kind kind = Kind::additive;
    Rat c;                                   // additive: G(p) = p - c
    Rat a{1}, b;                             // affine: G(p) = a p + b, a > 0
    std::vector<std::pair<Rat, Rat>> table;  // tabulated: (p_y, p_x) breakpoints, both strictly increasing
    bool strict_progress = false;            // requires G(p) < p wherever evaluated

    static ConnectionFunction additive(Rat c);
    static ConnectionFunction affine(Rat a, Rat b);
    static ConnectionFunction tabulated(std::vector<std::pair<Rat, Rat>> breakpoints);

    void validate() const;
    // Slope-1 shift maps commute with uniform price shifts.
    bool is_additive() const { return kind == Kind::additive || (kind == Kind::affine && a == Rat(1)); }
    Rat additive_cost() const { return kind == Kind::additive ? c : -b; }
};

std::string to_string(ConnectionFunction::Kind k);

// Throws InputError outside a tabulated range.
Rat eval_connection(const ConnectionFunction& g, const Rat& p_y);
Rat inverse_eval(const ConnectionFunction& g, const Rat& p_x);
// Domain of the map: nothing for unbounded variants.
std::optional<std::pair<Rat, Rat>> connection_domain(const ConnectionFunction& g);
std::optional<std::pair<Rat, Rat>> connection_range(const ConnectionFunction& g);

struct Arc {
    std::size_t from = 0;
    std::size_t to = 0;
    ConnectionFunction g;
};

struct Network {
    std::vector<std::string> nodes;
    std::vector<Arc> arcs;

    std::size_t size() const { return nodes.size(); }
    std::size_t index_of(const std::string& name) const;  // throws InputError
    void validate() const;
};

struct FlowProblem {
    Network network;
    std::vector<Rat> q;  // exiting flow per node

    void validate() const;
};

struct FlowOutcome {
    std::vector<Rat> q;
    std::vector<Rat> mu;  // per arc
    std::vector<Rat> p;   // per node
};

// Row per arc: -1 at the tail, +1 at the head.
std::vector<std::vector<int>> incidence(const Network& net);
// Transposed incidence applied to an arc vector.
std::vector<Rat> divergence(const Network& net, const std::vector<Rat>& mu);

struct EquilibriumCheck {
    Verdict verdict;
    Rat balance_residual;    // max |(grad^T mu - q)_z|
    Rat rent_residual;       // max (G(p_y) - p_x)^+
    Rat slackness_residual;  // max mu_a (p_x - G(p_y))
    std::vector<std::string> violations;
};

EquilibriumCheck verify_equilibrium(const FlowProblem& prob, const FlowOutcome& out, const Rat& eps = Rat(0));

// Min-cost flow by successive shortest paths; p are the optimal dual potentials.
// Throws InfeasibleError when no nonnegative flow balances q and InputError on a negative cycle.
FlowOutcome solve_additive(const FlowProblem& prob);
Rat flow_cost(const Network& net, const std::vector<Rat>& mu);

struct LatestDeparture {
    std::vector<std::optional<Rat>> p;            // unreached nodes stay empty
    std::vector<std::optional<std::size_t>> via;  // tight arc leaving each reached node
    std::vector<std::size_t> path;                // arc sequence from the origin, when one is given
};

LatestDeparture solve_latest_departure(const Network& net, std::size_t destination, const Rat& p_d,
                                       std::optional<std::size_t> origin = std::nullopt);

struct SampledCorrespondence {
    FiniteCorrespondence Q;
    std::vector<Point> filtered;  // grid prices violating condition (ii) or outside a tabulated range
};

// Q(p) = { grad^T mu : mu integer, 0 <= mu <= cap, supported on arcs tight at p }.
SampledCorrespondence sample_equilibrium_correspondence(const Network& net, const std::vector<Point>& grid,
                                                        unsigned cap);

// Arcs with p_x = G(p_y) exactly, or nothing when some arc violates condition (ii) or leaves a tabulated range.
std::optional<std::vector<std::size_t>> tight_arcs(const Network& net, const std::vector<Rat>& p);

// Flow on the given arcs with grad^T mu = q, by exact max-flow.
std::optional<std::vector<Rat>> feasible_flow(const Network& net, const std::vector<std::size_t>& arcs,
                                              const std::vector<Rat>& q);

// Some mu makes (q, mu, p) an equilibrium flow outcome.
std::optional<FlowOutcome> in_equilibrium_set(const FlowProblem& prob, const std::vector<Rat>& p);

struct GeneralOptions {
    std::optional<std::size_t> anchor;  // node with fixed price; defaults to the first node
    Rat anchor_price;
    std::size_t max_nodes = 2000000;    // search budget
    bool enumerate_all = false;         // collect every distinct equilibrium vertex
    std::size_t max_solutions = 4096;
};

struct GeneralResult {
    std::optional<FlowOutcome> outcome;
    std::vector<FlowOutcome> all;
    std::size_t explored = 0;
    bool budget_exhausted = false;
    std::string report;
};

// Exact search over price vectors spanned by tight trees rooted at the anchor.
// Failure is inconclusive and never a claim of nonexistence.
GeneralResult solve_general(const FlowProblem& prob, const GeneralOptions& opts = {});

// Meet and join of every pair of points is accepted by member.
struct LatticeReport {
    Verdict closure;
    std::size_t pairs_checked = 0;
};

LatticeReport lattice_closure(const std::vector<Point>& points, const std::function<bool(const Point&)>& member,
                              const std::string& property = "lattice_closure");

// A <= B in the strong set order on the sampled points.
Verdict strong_set_leq(const std::vector<Point>& A, const std::vector<Point>& B,
                       const std::function<bool(const Point&)>& in_A, const std::function<bool(const Point&)>& in_B);

Point to_point(const std::vector<Rat>& v);

}  // namespace equistat
