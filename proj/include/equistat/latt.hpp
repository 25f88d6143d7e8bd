#pragma once

#include "equistat/corr.hpp"

namespace equistat {

// Graph transpose: q maps to every p with q in Q(p).
FiniteCorrespondence invert(const FiniteCorrespondence& Q);

enum class InverseProperty { totally_isotone, sso_isotone, sublattice_fibers, point_valued };
std::string to_string(InverseProperty p);
std::optional<InverseProperty> parse_inverse_property(const std::string& s);

Verdict check_inverse(const FiniteCorrespondence& Q, InverseProperty property, const CheckOptions& opts = {});

struct PartialInverse {
    std::vector<std::size_t> coords;  // X, ascending
    Point fixed;                      // prices on the complement of X, ascending coordinate order
    FiniteCorrespondence inverse;     // q_X -> { p_X }
    Verdict sso;
};

PartialInverse partial_inverse(const FiniteCorrespondence& Q, std::vector<std::size_t> X, const Point& fixed);

struct EquivalenceReport {
    bool ugs = false;
    bool nonreversing = false;
    bool totally_isotone_inverse = false;
    bool strongly_nonreversing = false;
    bool inverse_point_valued_isotone = false;
    bool inverse_point_valued = false;
    Label label = Label::none;
    bool theorem1_consistent = true;
    bool theorem2_consistent = true;
    std::string note;
};

// Throws std::logic_error on an inconsistent report when abort_on_inconsistency is set.
EquivalenceReport equivalence_suite(const FiniteCorrespondence& Q, bool abort_on_inconsistency = true);

// Point-valued Q: weak gross substitutes and (q(p) <= q(p') implies p <= p').
Verdict check_more_rheinboldt(const FiniteCorrespondence& Q);

struct SolutionSets {
    Point target;
    std::vector<Point> subsolutions;
    std::vector<Point> supersolutions;
    std::vector<Point> solutions;
    std::optional<Point> maximal_subsolution;
    Verdict subsolutions_join_closed;
    Verdict supersolutions_meet_closed;
    Verdict maximal_subsolution_is_solution;
};

SolutionSets solution_sets(const FiniteCorrespondence& Q, const Point& target);

}  // namespace equistat
