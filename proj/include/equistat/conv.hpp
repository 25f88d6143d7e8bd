#pragma once

#include "equistat/corr.hpp"

#include <optional>
#include <vector>

namespace equistat {

// Finite quantity set with a cost per quantity. Convexity is not assumed.
struct DiscreteProducer {
    std::size_t dim = 0;
    std::vector<Point> quantities;
    std::vector<Rat> cost;

    void validate() const;
    Rat profit(std::size_t k, const Point& p) const { return dot(p, quantities[k]) - cost[k]; }
};

struct GridFunction {
    std::vector<Point> grid;
    std::vector<Rat> values;

    const Rat& at(const Point& p) const;
};

FiniteCorrespondence argmax_correspondence(const DiscreteProducer& prod, const std::vector<Point>& grid);
GridFunction indirect_profit(const DiscreteProducer& prod, const std::vector<Point>& grid);
Verdict check_submodular(const GridFunction& f);

struct SpiceReport {
    Verdict submodular;
    Verdict ugs;
    Verdict nonreversing;
    bool agree = false;  // submodular.holds == ugs.holds
};

SpiceReport spice_equivalence(const DiscreteProducer& prod, const std::vector<Point>& grid);

// Midpoint inequality on every pair whose midpoint is a listed quantity.
Verdict check_discrete_convexity(const DiscreteProducer& prod);

// Deviations are restricted to the lattice of coordinate levels between q and q'.
Verdict check_no_complementarities(const DiscreteProducer& prod, const Point& p);

// Objective phi(p, q) tabulated on p_grid x q_grid, p-major.
struct ObjectiveTable {
    std::vector<Point> p_grid;
    std::vector<Point> q_grid;
    std::vector<Rat> values;

    const Rat& operator()(std::size_t pi, std::size_t qi) const { return values[pi * q_grid.size() + qi]; }
    void validate() const;
};

template <class F>
ObjectiveTable make_table(std::vector<Point> p_grid, std::vector<Point> q_grid, F&& phi) {
    ObjectiveTable t{std::move(p_grid), std::move(q_grid), {}};
    t.values.reserve(t.p_grid.size() * t.q_grid.size());
    for (const auto& p : t.p_grid)
        for (const auto& q : t.q_grid) t.values.push_back(phi(p, q));
    return t;
}

FiniteCorrespondence argmax_table(const ObjectiveTable& tab);

struct SingleCrossingReport {
    Verdict single_crossing;
    Verdict argmax_nonreversing;
    bool consistent = true;  // single crossing implies nonreversing argmax
};

SingleCrossingReport check_single_crossing(const ObjectiveTable& tab);

// Tables read as g(p, q) whose argmax over p is the inverse correspondence.
// Witness coordinate records which of the two implications fails (1 or 2).
Verdict check_milgrom_shannon(const ObjectiveTable& tab);
Verdict check_topkis(const ObjectiveTable& tab);

// Affine profits pi_xz(p) = slope * p + intercept, strictly increasing.
struct LogitModel {
    std::size_t goods = 0;
    std::vector<Rat> counts;                   // n_x
    std::vector<std::vector<Rat>> slope;       // [x][z]
    std::vector<std::vector<Rat>> intercept;   // [x][z]
    std::optional<Rat> normalized_price;       // fixes the last good's price

    void validate() const;
    std::size_t free_goods() const { return normalized_price ? goods - 1 : goods; }
};

inline constexpr double kLogitEps = 1e-9;

std::vector<double> logit_supply(const LogitModel& m, const std::vector<double>& p);

struct NumericTaxonomy {
    bool ugs = false;
    bool nonreversing = false;
    bool inverse_point_valued = false;
    bool constant_aggregate_output = false;
    Label label = Label::none;
    double max_conservation_error = 0;
};

NumericTaxonomy logit_taxonomy(const LogitModel& m, const std::vector<Point>& grid, double eps = kLogitEps);

}  // namespace equistat
