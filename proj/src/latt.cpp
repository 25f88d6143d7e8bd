#include "equistat/latt.hpp"

#include "encoding.hpp"
#include "equistat/error.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace equistat {

using detail::eq_r;
using detail::leq_r;
using detail::npos;

FiniteCorrespondence invert(const FiniteCorrespondence& Q) {
    std::map<Point, std::vector<Point>> fibers;
    for (std::size_t i = 0; i < Q.size(); ++i)
        for (const auto& q : Q.image(i)) fibers[q].push_back(Q.domain()[i]);
    std::vector<FiniteCorrespondence::Entry> e;
    e.reserve(fibers.size());
    for (auto& [q, ps] : fibers) e.push_back({q, std::move(ps)});
    return FiniteCorrespondence(Q.dim(), std::move(e));
}

std::string to_string(InverseProperty p) {
    switch (p) {
        case InverseProperty::totally_isotone: return "totally_isotone";
        case InverseProperty::sso_isotone: return "sso_isotone";
        case InverseProperty::sublattice_fibers: return "sublattice_fibers";
        case InverseProperty::point_valued: return "point_valued";
    }
    return "?";
}

std::optional<InverseProperty> parse_inverse_property(const std::string& s) {
    for (auto v : {InverseProperty::totally_isotone, InverseProperty::sso_isotone, InverseProperty::sublattice_fibers,
                   InverseProperty::point_valued})
        if (to_string(v) == s) return v;
    return std::nullopt;
}

namespace {

Verdict isotone(const FiniteCorrespondence& Q, bool total, const CheckOptions& opts) {
    const auto& e = Q.encoding();
    const std::size_t n = e.n;
    Verdict v{.property = total ? "totally_isotone" : "sso_isotone"};
    auto fail = [&](Witness w) {
        v.holds = false;
        if (!v.witness) v.witness = w;
        if (opts.collect_all && v.failures.size() < opts.max_failures) v.failures.push_back(std::move(w));
        return !opts.collect_all;
    };
    for (std::size_t i = 0; i < e.g; ++i)
        for (std::size_t j = 0; j < e.g; ++j) {
            const int* p = e.p(i);
            const int* pp = e.p(j);
            if (leq_r(p, pp, n)) continue;  // meet = p and join = p'
            const std::size_t mi = e.meet(i, j), ji = e.join(i, j);
            for (std::size_t a = 0; a < e.count(i); ++a)
                for (std::size_t b = 0; b < e.count(j); ++b) {
                    const int* q = e.q(i, a);
                    const int* qp = e.q(j, b);
                    bool antecedent = true;
                    for (std::size_t z = 0; z < n && antecedent; ++z)
                        antecedent = total ? (p[z] <= pp[z] || q[z] <= qp[z]) : q[z] <= qp[z];
                    if (!antecedent) continue;
                    bool in_m = e.find_q(mi, q) != npos;
                    bool in_j = e.find_q(ji, qp) != npos;
                    if (in_m && in_j) continue;
                    Witness w{.p = Q.domain()[i], .p_prime = Q.domain()[j], .q = Q.image(i)[a], .q_prime = Q.image(j)[b]};
                    std::vector<std::size_t> B;
                    for (std::size_t z = 0; z < n; ++z)
                        if (p[z] <= pp[z]) B.push_back(z);
                    w.subset = B;
                    w.note = !in_m ? "q not in Q(p meet p')" : "q' not in Q(p join p')";
                    if (!in_m && !in_j) w.note += "; q' not in Q(p join p')";
                    if (fail(std::move(w))) return v;
                }
        }
    return v;
}

// Sorted intersection of two rank-encoded images; returns indices into the first.
std::vector<std::size_t> common(const detail::Encoding& e, std::size_t i, std::size_t j) {
    std::vector<std::size_t> out;
    std::size_t a = 0, b = 0;
    const std::size_t n = e.n;
    while (a < e.count(i) && b < e.count(j)) {
        const int* x = e.q(i, a);
        const int* y = e.q(j, b);
        if (eq_r(x, y, n)) {
            out.push_back(a);
            ++a, ++b;
        } else if (std::lexicographical_compare(x, x + n, y, y + n)) {
            ++a;
        } else {
            ++b;
        }
    }
    return out;
}

}  // namespace

Verdict check_inverse(const FiniteCorrespondence& Q, InverseProperty property, const CheckOptions& opts) {
    require_sublattice(Q);
    switch (property) {
        case InverseProperty::totally_isotone: return isotone(Q, true, opts);
        case InverseProperty::sso_isotone: return isotone(Q, false, opts);
        case InverseProperty::sublattice_fibers: {
            const auto& e = Q.encoding();
            Verdict v{.property = "sublattice_fibers"};
            for (std::size_t i = 0; i < e.g; ++i)
                for (std::size_t j = i + 1; j < e.g; ++j) {
                    const std::size_t mi = e.meet(i, j), ji = e.join(i, j);
                    for (std::size_t a : common(e, i, j)) {
                        const int* q = e.q(i, a);
                        bool in_m = e.find_q(mi, q) != npos, in_j = e.find_q(ji, q) != npos;
                        if (in_m && in_j) continue;
                        Witness w{.p = Q.domain()[i], .p_prime = Q.domain()[j], .q = Q.image(i)[a],
                                  .note = !in_m ? "fiber misses p meet p'" : "fiber misses p join p'"};
                        v.holds = false;
                        if (!v.witness) v.witness = w;
                        if (!opts.collect_all) return v;
                        if (v.failures.size() < opts.max_failures) v.failures.push_back(std::move(w));
                    }
                }
            return v;
        }
        case InverseProperty::point_valued: {
            Verdict v{.property = "point_valued"};
            std::map<Point, std::size_t> owner;
            for (std::size_t i = 0; i < Q.size(); ++i)
                for (const auto& q : Q.image(i)) {
                    auto [it, fresh] = owner.emplace(q, i);
                    if (fresh) continue;
                    Witness w{.p = Q.domain()[it->second], .p_prime = Q.domain()[i], .q = q,
                              .note = "quantity has two preimages"};
                    v.holds = false;
                    if (!v.witness) v.witness = w;
                    if (!opts.collect_all) return v;
                    if (v.failures.size() < opts.max_failures) v.failures.push_back(std::move(w));
                }
            return v;
        }
    }
    throw InputError("unknown inverse property");
}

PartialInverse partial_inverse(const FiniteCorrespondence& Q, std::vector<std::size_t> X, const Point& fixed) {
    std::sort(X.begin(), X.end());
    X.erase(std::unique(X.begin(), X.end()), X.end());
    for (auto z : X)
        if (z >= Q.dim()) throw InputError("partial inverse coordinate out of range");
    std::vector<std::size_t> C;
    for (std::size_t z = 0, k = 0; z < Q.dim(); ++z) {
        if (k < X.size() && X[k] == z)
            ++k;
        else
            C.push_back(z);
    }
    if (fixed.size() != C.size()) throw InputError("fixed prices must cover the complement of X");

    auto project = [](const Point& v, const std::vector<std::size_t>& idx) {
        Point r(idx.size());
        for (std::size_t k = 0; k < idx.size(); ++k) r[k] = v[idx[k]];
        return r;
    };
    std::map<Point, std::set<Point>> fibers;
    for (std::size_t i = 0; i < Q.size(); ++i) {
        if (project(Q.domain()[i], C) != fixed) continue;
        Point pX = project(Q.domain()[i], X);
        for (const auto& q : Q.image(i)) fibers[project(q, X)].insert(pX);
    }
    if (fibers.empty()) throw DomainError("no grid point matches the fixed prices " + fixed.str());

    std::vector<FiniteCorrespondence::Entry> entries;
    for (auto& [q, ps] : fibers) entries.push_back({q, std::vector<Point>(ps.begin(), ps.end())});

    Verdict v{.property = "partial_inverse_sso_isotone"};
    for (auto it = fibers.begin(); it != fibers.end() && v.holds; ++it)
        for (auto jt = fibers.begin(); jt != fibers.end() && v.holds; ++jt) {
            if (!leq(it->first, jt->first)) continue;
            for (const auto& p : it->second) {
                for (const auto& pp : jt->second) {
                    auto [m, J] = lattice_ops(p, pp);
                    bool in_m = it->second.count(m) > 0, in_j = jt->second.count(J) > 0;
                    if (in_m && in_j) continue;
                    v.holds = false;
                    v.witness = Witness{.p = p, .p_prime = pp, .q = it->first, .q_prime = jt->first,
                                        .note = !in_m ? "meet missing from the lower fiber" : "join missing from the upper fiber"};
                    break;
                }
                if (!v.holds) break;
            }
        }
    return PartialInverse{X, fixed, FiniteCorrespondence(X.size(), std::move(entries)), std::move(v)};
}

EquivalenceReport equivalence_suite(const FiniteCorrespondence& Q, bool abort_on_inconsistency) {
    EquivalenceReport r;
    r.ugs = check_substitutes(Q, Substitutes::ugs).holds;
    r.nonreversing = check_monotonicity(Q, Monotonicity::nonreversing).holds;
    r.totally_isotone_inverse = check_inverse(Q, InverseProperty::totally_isotone).holds;
    r.strongly_nonreversing = check_monotonicity(Q, Monotonicity::strongly_nonreversing).holds;
    r.inverse_point_valued = check_inverse(Q, InverseProperty::point_valued).holds;
    r.inverse_point_valued_isotone = r.inverse_point_valued && check_inverse(Q, InverseProperty::sso_isotone).holds;
    r.label = label_for(r.ugs, r.nonreversing, Q.point_valued(), r.inverse_point_valued);
    const bool m_class = r.label == Label::m_function || r.label == Label::m_correspondence;
    if (r.ugs) {
        r.theorem1_consistent = r.nonreversing == r.totally_isotone_inverse;
        r.theorem2_consistent = r.strongly_nonreversing == r.inverse_point_valued_isotone &&
                                r.inverse_point_valued_isotone == m_class;
    } else {
        r.note = "ugs fails: the equivalences are not guaranteed on this instance";
    }
    if (abort_on_inconsistency && !(r.theorem1_consistent && r.theorem2_consistent))
        throw std::logic_error("equivalence suite inconsistency (implementation bug): ugs holds but nonreversing=" +
                               std::to_string(r.nonreversing) + " totally_isotone=" +
                               std::to_string(r.totally_isotone_inverse) + " strongly_nonreversing=" +
                               std::to_string(r.strongly_nonreversing) + " inverse_point_valued_isotone=" +
                               std::to_string(r.inverse_point_valued_isotone));
    return r;
}

Verdict check_more_rheinboldt(const FiniteCorrespondence& Q) {
    Verdict v = check_substitutes(Q, Substitutes::wgs_function);
    v.property = "more_rheinboldt_m_function";
    if (!v.holds) return v;
    for (std::size_t i = 0; i < Q.size(); ++i)
        for (std::size_t j = 0; j < Q.size(); ++j) {
            if (i == j) continue;
            if (leq(Q.image(i)[0], Q.image(j)[0]) && !leq(Q.domain()[i], Q.domain()[j])) {
                v.holds = false;
                v.witness = Witness{.p = Q.domain()[i], .p_prime = Q.domain()[j], .q = Q.image(i)[0],
                                    .q_prime = Q.image(j)[0], .note = "q(p) <= q(p') without p <= p'"};
                return v;
            }
        }
    return v;
}

SolutionSets solution_sets(const FiniteCorrespondence& Q, const Point& target) {
    if (target.size() != Q.dim()) throw InputError("target has wrong dimension");
    SolutionSets s;
    s.target = target;
    std::set<Point> sub, super, sol;
    for (std::size_t i = 0; i < Q.size(); ++i) {
        const auto& p = Q.domain()[i];
        bool lo = false, hi = false, eq = false;
        for (const auto& q : Q.image(i)) {
            lo = lo || leq(q, target);
            hi = hi || leq(target, q);
            eq = eq || q == target;
        }
        if (lo) sub.insert(p);
        if (hi) super.insert(p);
        if (eq) sol.insert(p);
    }
    s.subsolutions.assign(sub.begin(), sub.end());
    s.supersolutions.assign(super.begin(), super.end());
    s.solutions.assign(sol.begin(), sol.end());

    const bool ugs = check_substitutes(Q, Substitutes::ugs).holds;
    s.subsolutions_join_closed = {.property = "subsolutions_join_closed", .applicable = ugs};
    s.supersolutions_meet_closed = {.property = "supersolutions_meet_closed", .applicable = ugs};
    for (const auto& a : s.subsolutions)
        for (const auto& b : s.subsolutions)
            if (s.subsolutions_join_closed.holds && !sub.count(join(a, b))) {
                s.subsolutions_join_closed.holds = false;
                s.subsolutions_join_closed.witness = Witness{.p = a, .p_prime = b, .note = "join is not a subsolution"};
            }
    for (const auto& a : s.supersolutions)
        for (const auto& b : s.supersolutions)
            if (s.supersolutions_meet_closed.holds && !super.count(meet(a, b))) {
                s.supersolutions_meet_closed.holds = false;
                s.supersolutions_meet_closed.witness = Witness{.p = a, .p_prime = b, .note = "meet is not a supersolution"};
            }
    if (!ugs) {
        s.subsolutions_join_closed.note = s.supersolutions_meet_closed.note = "not applicable: ugs fails";
    }

    if (!s.subsolutions.empty()) {
        Point top = s.subsolutions.front();
        for (const auto& a : s.subsolutions) top = join(top, a);
        if (sub.count(top)) s.maximal_subsolution = top;
    }
    auto& c = s.maximal_subsolution_is_solution;
    c.property = "maximal_subsolution_is_solution";
    const bool m0 = ugs && check_monotonicity(Q, Monotonicity::nonreversing).holds;
    if (!m0) {
        c.applicable = false;
        c.note = "not applicable: not an M0 instance";
    } else if (s.solutions.empty() || !s.maximal_subsolution) {
        c.applicable = false;
        c.note = s.solutions.empty() ? "skipped: no solution exists" : "skipped: no maximal subsolution";
    } else {
        Point top_solution = s.solutions.front();
        for (const auto& a : s.solutions) top_solution = join(top_solution, a);
        c.holds = sol.count(*s.maximal_subsolution) > 0 && top_solution == *s.maximal_subsolution;
        if (!c.holds)
            c.witness = Witness{.p = *s.maximal_subsolution, .p_prime = top_solution,
                                .note = "maximal subsolution differs from the greatest solution"};
    }
    return s;
}

}  // namespace equistat
