#pragma once

#include "equistat/point.hpp"

#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace equistat {

namespace detail {
struct Encoding;
}

// Finite price grid mapped to nonempty finite quantity sets.
// Domain points and each image are stored sorted and duplicate-free.
class FiniteCorrespondence {
public:
    using Entry = std::pair<Point, std::vector<Point>>;

    FiniteCorrespondence(std::size_t dim, std::vector<Entry> entries);

    std::size_t dim() const { return dim_; }
    std::size_t size() const { return domain_.size(); }
    const std::vector<Point>& domain() const { return domain_; }
    const std::vector<Point>& image(std::size_t i) const { return images_[i]; }
    std::optional<std::size_t> find(const Point& p) const;
    const std::vector<Point>& image_of(const Point& p) const;
    bool contains(const Point& p, const Point& q) const;
    bool point_valued() const;
    std::size_t graph_size() const;
    std::vector<Entry> entries() const;

    const detail::Encoding& encoding() const { return *enc_; }

private:
    std::size_t dim_;
    std::vector<Point> domain_;
    std::vector<std::vector<Point>> images_;
    std::unordered_map<Point, std::size_t, PointHash> index_;
    std::shared_ptr<const detail::Encoding> enc_;
};

// Falsifying or certifying configuration. Unused fields stay empty.
struct Witness {
    std::optional<Point> p, p_prime, q, q_prime, q_meet, q_join, weights, delta;
    std::optional<std::size_t> coordinate;
    std::optional<std::vector<std::size_t>> subset;
    std::string note;
};

struct Verdict {
    std::string property;
    bool holds = true;
    bool applicable = true;
    std::optional<Witness> witness;
    std::vector<Witness> failures;
    std::string note;
};

struct CheckOptions {
    // Keep scanning after the first failure and record every failing tuple.
    bool collect_all = false;
    std::size_t max_failures = 100000;
    // Weights for constant aggregate output (defaults to the unit vector).
    std::optional<Point> weights;
};

enum class Substitutes { ugs, ugs_strong_antecedent, kelso_crawford, polterovich_spivak, wgs_function };

enum class Monotonicity {
    nonreversing,
    strongly_nonreversing,
    constant_aggregate_output,
    monotone_total_output,
    aggregate_monotonicity,
    weighted_monotonicity,
    walras,
    p_correspondence,
    p_function,
    bgh3,
};

std::string to_string(Substitutes s);
std::string to_string(Monotonicity m);
std::optional<Substitutes> parse_substitutes(const std::string& s);
std::optional<Monotonicity> parse_monotonicity(const std::string& s);

std::pair<Point, Point> lattice_ops(const Point& p, const Point& p_prime);

Verdict validate_grid(const std::vector<Point>& grid);
Verdict validate_domain(const FiniteCorrespondence& Q);
// Throws DomainError when the domain is not a sublattice.
void require_sublattice(const FiniteCorrespondence& Q);

Verdict check_substitutes(const FiniteCorrespondence& Q, Substitutes notion, const CheckOptions& opts = {});
Verdict check_monotonicity(const FiniteCorrespondence& Q, Monotonicity property, const CheckOptions& opts = {});

// Some k with k_z >= 1 and k.(q - qm) >= 0, k.(qj - qp) >= 0, or nothing.
std::optional<Point> weighted_certificate(const Point& q, const Point& q_meet, const Point& q_join, const Point& q_prime);

// Every (q_meet, q_join) pair is tried in lexicographic order.
std::optional<Witness> weighted_monotonicity_tuple(const FiniteCorrespondence& Q, const Point& p, const Point& p_prime,
                                                   const Point& q, const Point& q_prime);

FiniteCorrespondence monetize(const FiniteCorrespondence& Q);
FiniteCorrespondence aggregate(const FiniteCorrespondence& Q1, const FiniteCorrespondence& Q2, const Rat& lambda,
                               const Rat& mu);
// Appends price coordinate p0 and quantity q0 = p0 - k.q.
FiniteCorrespondence extend_outside_good(const FiniteCorrespondence& Q, const Point& k, const Rat& p0);
// Negates every quantity (demand orientation).
FiniteCorrespondence flip_orientation(const FiniteCorrespondence& Q);

// Tabulates a point-valued map on a grid.
template <class F>
FiniteCorrespondence tabulate(std::size_t dim, const std::vector<Point>& grid, F&& f) {
    std::vector<FiniteCorrespondence::Entry> e;
    e.reserve(grid.size());
    for (const auto& p : grid) e.push_back({p, {f(p)}});
    return FiniteCorrespondence(dim, std::move(e));
}

// Product grid levels^dim.
std::vector<Point> product_grid(std::size_t dim, const std::vector<Rat>& levels);
std::vector<Point> product_grid(const std::vector<std::vector<Rat>>& levels);

enum class Label { m_function, m0_function, m_correspondence, m0_correspondence, none };
std::string to_string(Label l);

struct Taxonomy {
    bool ugs = false;
    bool nonreversing = false;
    bool point_valued = false;
    bool inverse_point_valued = false;
    Label label = Label::none;
};

Taxonomy classify(const FiniteCorrespondence& Q);
Label label_for(bool ugs, bool nonreversing, bool point_valued, bool inverse_point_valued);

}  // namespace equistat
