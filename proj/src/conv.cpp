#include "equistat/conv.hpp"

#include "equistat/error.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace equistat {

void DiscreteProducer::validate() const {
    if (quantities.empty()) throw InputError("producer has an empty quantity set");
    if (cost.size() != quantities.size()) throw InputError("producer cost must be defined on every quantity");
    std::set<Point> seen;
    for (const auto& q : quantities) {
        if (q.size() != dim) throw InputError("producer quantity " + q.str() + " has wrong dimension");
        if (!seen.insert(q).second) throw InputError("duplicate producer quantity " + q.str());
    }
}

const Rat& GridFunction::at(const Point& p) const {
    auto it = std::find(grid.begin(), grid.end(), p);
    if (it == grid.end()) throw InputError("point " + p.str() + " not in grid");
    return values[static_cast<std::size_t>(it - grid.begin())];
}

FiniteCorrespondence argmax_correspondence(const DiscreteProducer& prod, const std::vector<Point>& grid) {
    prod.validate();
    std::vector<FiniteCorrespondence::Entry> e;
    e.reserve(grid.size());
    for (const auto& p : grid) {
        if (p.size() != prod.dim) throw InputError("grid point " + p.str() + " has wrong dimension");
        std::vector<Point> best;
        Rat top;
        for (std::size_t k = 0; k < prod.quantities.size(); ++k) {
            Rat v = prod.profit(k, p);
            if (best.empty() || top < v) {
                best.assign(1, prod.quantities[k]);
                top = v;
            } else if (v == top) {
                best.push_back(prod.quantities[k]);
            }
        }
        e.push_back({p, std::move(best)});
    }
    return FiniteCorrespondence(prod.dim, std::move(e));
}

GridFunction indirect_profit(const DiscreteProducer& prod, const std::vector<Point>& grid) {
    prod.validate();
    GridFunction f{grid, {}};
    for (const auto& p : grid) {
        if (p.size() != prod.dim) throw InputError("grid point " + p.str() + " has wrong dimension");
        Rat top = prod.profit(0, p);
        for (std::size_t k = 1; k < prod.quantities.size(); ++k) top = max(top, prod.profit(k, p));
        f.values.push_back(top);
    }
    return f;
}

Verdict check_submodular(const GridFunction& f) {
    if (f.values.size() != f.grid.size()) throw InputError("grid function is not total");
    auto closure = validate_grid(f.grid);
    if (!closure.holds) throw DomainError("grid is not a sublattice (" + closure.witness->note + ")");
    std::map<Point, Rat> val;
    for (std::size_t i = 0; i < f.grid.size(); ++i) val.emplace(f.grid[i], f.values[i]);
    Verdict v{.property = "submodular"};
    for (auto a = val.begin(); a != val.end(); ++a)
        for (auto b = std::next(a); b != val.end(); ++b) {
            auto [m, J] = lattice_ops(a->first, b->first);
            if (val.at(m) + val.at(J) <= a->second + b->second) continue;
            v.holds = false;
            v.witness = Witness{.p = a->first, .p_prime = b->first, .note = "f(meet) + f(join) > f(p) + f(p')"};
            return v;
        }
    return v;
}

SpiceReport spice_equivalence(const DiscreteProducer& prod, const std::vector<Point>& grid) {
    SpiceReport r;
    r.submodular = check_submodular(indirect_profit(prod, grid));
    auto Q = argmax_correspondence(prod, grid);
    r.ugs = check_substitutes(Q, Substitutes::ugs);
    r.nonreversing = check_monotonicity(Q, Monotonicity::nonreversing);
    r.agree = r.submodular.holds == r.ugs.holds;
    return r;
}

Verdict check_discrete_convexity(const DiscreteProducer& prod) {
    prod.validate();
    std::map<Point, Rat> cost;
    for (std::size_t k = 0; k < prod.quantities.size(); ++k) cost.emplace(prod.quantities[k], prod.cost[k]);
    Verdict v{.property = "discrete_midpoint_convexity"};
    const Rat half(1, 2);
    for (std::size_t a = 0; a < prod.quantities.size(); ++a)
        for (std::size_t b = a + 1; b < prod.quantities.size(); ++b) {
            Point mid = half * (prod.quantities[a] + prod.quantities[b]);
            auto it = cost.find(mid);
            if (it == cost.end() || it->second <= half * (prod.cost[a] + prod.cost[b])) continue;
            v.holds = false;
            v.witness = Witness{.q = prod.quantities[a], .q_prime = prod.quantities[b], .q_meet = mid,
                                .note = "cost at the midpoint exceeds the average"};
            return v;
        }
    return v;
}

Verdict check_no_complementarities(const DiscreteProducer& prod, const Point& p) {
    prod.validate();
    const std::size_t n = prod.dim;
    std::map<Point, std::size_t> index;
    for (std::size_t k = 0; k < prod.quantities.size(); ++k) index.emplace(prod.quantities[k], k);
    std::vector<std::vector<Rat>> levels(n);
    for (std::size_t z = 0; z < n; ++z) {
        for (const auto& q : prod.quantities) levels[z].push_back(q[z]);
        std::sort(levels[z].begin(), levels[z].end());
        levels[z].erase(std::unique(levels[z].begin(), levels[z].end()), levels[z].end());
    }
    auto between = [&](std::size_t z, const Rat& lo, const Rat& hi) {
        std::vector<Rat> out;
        for (const auto& x : levels[z])
            if (lo <= x && x <= hi) out.push_back(x);
        return out;
    };

    Verdict v{.property = "no_complementarities"};
    auto Q = argmax_correspondence(prod, {p});
    for (const auto& q : Q.image(0)) {
        for (std::size_t kp = 0; kp < prod.quantities.size(); ++kp) {
            const Point& qp = prod.quantities[kp];
            if (qp == q) continue;
            const Rat base = prod.profit(kp, p);
            std::vector<std::size_t> U, D;
            for (std::size_t z = 0; z < n; ++z) {
                if (q[z] < qp[z]) U.push_back(z);
                if (qp[z] < q[z]) D.push_back(z);
            }
            std::vector<std::vector<Rat>> down(U.size()), up(D.size());
            for (std::size_t k = 0; k < U.size(); ++k) down[k] = between(U[k], q[U[k]], qp[U[k]]);
            for (std::size_t k = 0; k < D.size(); ++k) up[k] = between(D[k], qp[D[k]], q[D[k]]);

            // odometer over choices of r on U (the delta_1 side)
            std::vector<std::size_t> di(U.size(), 0);
            for (bool more_d = true; more_d;) {
                Point r = qp;
                for (std::size_t k = 0; k < U.size(); ++k) r[U[k]] = down[k][di[k]];
                bool ok = false;
                std::vector<std::size_t> ui(D.size(), 0);
                for (bool more_u = true; more_u && !ok;) {
                    for (std::size_t k = 0; k < D.size(); ++k) r[D[k]] = up[k][ui[k]];
                    auto it = index.find(r);
                    ok = it != index.end() && base <= prod.profit(it->second, p);
                    more_u = false;
                    for (std::size_t k = 0; k < D.size(); ++k) {
                        if (++ui[k] < up[k].size()) {
                            more_u = true;
                            break;
                        }
                        ui[k] = 0;
                    }
                }
                if (!ok) {
                    Point d1(n);
                    for (std::size_t k = 0; k < U.size(); ++k) d1[U[k]] = qp[U[k]] - down[k][di[k]];
                    v.holds = false;
                    v.witness = Witness{.p = p, .q = q, .q_prime = qp, .delta = d1,
                                        .note = "no compensating delta_2 for this delta_1"};
                    return v;
                }
                more_d = false;
                for (std::size_t k = 0; k < U.size(); ++k) {
                    if (++di[k] < down[k].size()) {
                        more_d = true;
                        break;
                    }
                    di[k] = 0;
                }
            }
        }
    }
    return v;
}

// ---------------------------------------------------------------------------
// objective tables

void ObjectiveTable::validate() const {
    if (p_grid.empty() || q_grid.empty()) throw InputError("objective table needs nonempty grids");
    if (values.size() != p_grid.size() * q_grid.size()) throw InputError("objective table is not total");
}

FiniteCorrespondence argmax_table(const ObjectiveTable& tab) {
    tab.validate();
    std::vector<FiniteCorrespondence::Entry> e;
    for (std::size_t i = 0; i < tab.p_grid.size(); ++i) {
        std::vector<Point> best;
        const Rat* top = nullptr;
        for (std::size_t k = 0; k < tab.q_grid.size(); ++k) {
            const Rat& v = tab(i, k);
            if (!top || *top < v) {
                best.assign(1, tab.q_grid[k]);
                top = &v;
            } else if (v == *top) {
                best.push_back(tab.q_grid[k]);
            }
        }
        e.push_back({tab.p_grid[i], std::move(best)});
    }
    return FiniteCorrespondence(tab.p_grid.front().size(), std::move(e));
}

SingleCrossingReport check_single_crossing(const ObjectiveTable& tab) {
    tab.validate();
    SingleCrossingReport r;
    r.single_crossing.property = "single_crossing";
    const std::size_t np = tab.p_grid.size(), nq = tab.q_grid.size();
    for (std::size_t a = 0; a < np && r.single_crossing.holds; ++a)
        for (std::size_t b = 0; b < np && r.single_crossing.holds; ++b) {
            if (!leq(tab.p_grid[a], tab.p_grid[b])) continue;  // P = a, P' = b >= P
            for (std::size_t c = 0; c < nq && r.single_crossing.holds; ++c)
                for (std::size_t d = 0; d < nq; ++d) {
                    if (!leq(tab.q_grid[d], tab.q_grid[c])) continue;  // Q = c, Q' = d <= Q
                    Rat hi = tab(b, c) - tab(b, d);
                    Rat lo = tab(a, c) - tab(a, d);
                    if (hi.sign() > 0 || lo.sign() < 0) continue;
                    if (hi.sign() == 0 && lo.sign() == 0) continue;
                    r.single_crossing.holds = false;
                    r.single_crossing.witness =
                        Witness{.p = tab.p_grid[a], .p_prime = tab.p_grid[b], .q = tab.q_grid[c], .q_prime = tab.q_grid[d],
                                .note = "inequalities hold without equality"};
                    break;
                }
        }
    r.argmax_nonreversing = check_monotonicity(argmax_table(tab), Monotonicity::nonreversing);
    r.consistent = !r.single_crossing.holds || r.argmax_nonreversing.holds;
    return r;
}

namespace {

template <class Test>
Verdict table_pairs(const ObjectiveTable& tab, const std::string& name, Test&& test) {
    tab.validate();
    auto closure = validate_grid(tab.p_grid);
    if (!closure.holds) throw DomainError("p grid is not a sublattice (" + closure.witness->note + ")");
    std::map<Point, std::size_t> pidx;
    for (std::size_t i = 0; i < tab.p_grid.size(); ++i) pidx.emplace(tab.p_grid[i], i);
    Verdict v{.property = name};
    const std::size_t np = tab.p_grid.size(), nq = tab.q_grid.size();
    for (std::size_t qa = 0; qa < nq; ++qa)
        for (std::size_t qb = 0; qb < nq; ++qb) {
            if (!leq(tab.q_grid[qb], tab.q_grid[qa])) continue;  // q = qa >= q' = qb
            for (std::size_t i = 0; i < np; ++i)
                for (std::size_t j = 0; j < np; ++j) {
                    auto [m, J] = lattice_ops(tab.p_grid[i], tab.p_grid[j]);
                    const std::size_t mi = pidx.at(m), ji = pidx.at(J);
                    // up = g(p join p', q) - g(p', q); down = g(p, q') - g(p meet p', q')
                    Rat up = tab(ji, qa) - tab(j, qa);
                    Rat down = tab(i, qb) - tab(mi, qb);
                    if (int which = test(up, down)) {
                        v.holds = false;
                        v.witness = Witness{.p = tab.p_grid[i], .p_prime = tab.p_grid[j], .q = tab.q_grid[qa],
                                            .q_prime = tab.q_grid[qb], .coordinate = static_cast<std::size_t>(which)};
                        return v;
                    }
                }
        }
    return v;
}

}  // namespace

Verdict check_milgrom_shannon(const ObjectiveTable& tab) {
    auto v = table_pairs(tab, "milgrom_shannon", [](const Rat& up, const Rat& down) {
        if (down.sign() >= 0 && up.sign() < 0) return 1;
        if (up.sign() <= 0 && down.sign() > 0) return 2;
        return 0;
    });
    if (v.witness) v.witness->note = "implication " + std::to_string(*v.witness->coordinate) + " fails";
    return v;
}

Verdict check_topkis(const ObjectiveTable& tab) {
    auto v = table_pairs(tab, "topkis", [](const Rat& up, const Rat& down) { return up < down ? 1 : 0; });
    if (v.witness) v.witness->note = "increasing-differences inequality fails";
    return v;
}

// ---------------------------------------------------------------------------
// logit

void LogitModel::validate() const {
    if (goods == 0 || (normalized_price && goods < 2)) throw InputError("logit model needs goods");
    if (counts.empty()) throw InputError("logit model needs producer types");
    if (slope.size() != counts.size() || intercept.size() != counts.size())
        throw InputError("logit coefficient tables must match producer types");
    for (std::size_t x = 0; x < counts.size(); ++x) {
        if (counts[x].sign() <= 0) throw InputError("logit counts must be positive");
        if (slope[x].size() != goods || intercept[x].size() != goods)
            throw InputError("logit coefficient rows must cover every good");
        for (const auto& a : slope[x])
            if (a.sign() <= 0) throw InputError("logit profits must be strictly increasing");
    }
}

std::vector<double> logit_supply(const LogitModel& m, const std::vector<double>& p) {
    m.validate();
    const std::size_t free = m.free_goods();
    if (p.size() != free) throw InputError("logit price vector has wrong dimension");
    std::vector<double> q(free, 0.0), v(m.goods);
    for (std::size_t x = 0; x < m.counts.size(); ++x) {
        for (std::size_t z = 0; z < m.goods; ++z) {
            double pz = z < free ? p[z] : m.normalized_price->to_double();
            v[z] = m.slope[x][z].to_double() * pz + m.intercept[x][z].to_double();
        }
        const double top = *std::max_element(v.begin(), v.end());
        double denom = 0;
        for (double t : v) denom += std::exp(t - top);
        const double n = m.counts[x].to_double();
        for (std::size_t z = 0; z < free; ++z) q[z] += n * std::exp(v[z] - top) / denom;
    }
    return q;
}

NumericTaxonomy logit_taxonomy(const LogitModel& m, const std::vector<Point>& grid, double eps) {
    m.validate();
    auto closure = validate_grid(grid);
    if (!closure.holds) throw DomainError("logit grid is not a sublattice");
    const std::size_t g = grid.size(), n = m.free_goods();
    std::vector<std::vector<double>> q(g);
    double total = 0;
    for (const auto& c : m.counts) total += c.to_double();
    NumericTaxonomy t;
    for (std::size_t i = 0; i < g; ++i) {
        std::vector<double> p(n);
        for (std::size_t z = 0; z < n; ++z) p[z] = grid[i][z].to_double();
        q[i] = logit_supply(m, p);
        if (!m.normalized_price) {
            double s = 0;
            for (double x : q[i]) s += x;
            t.max_conservation_error = std::max(t.max_conservation_error, std::abs(s - total));
        }
    }
    auto close = [&](std::size_t i, std::size_t j) {
        for (std::size_t z = 0; z < n; ++z)
            if (std::abs(q[i][z] - q[j][z]) > eps) return false;
        return true;
    };
    t.ugs = t.nonreversing = t.inverse_point_valued = true;
    for (std::size_t i = 0; i < g; ++i)
        for (std::size_t j = 0; j < g; ++j) {
            if (i == j) continue;
            const bool le = leq(grid[i], grid[j]);
            if (le)
                for (std::size_t z = 0; z < n; ++z)
                    if (grid[i][z] == grid[j][z] && q[j][z] > q[i][z] + eps) t.ugs = false;
            if (leq(grid[j], grid[i])) {
                bool qle = true;
                for (std::size_t z = 0; z < n; ++z) qle = qle && q[i][z] <= q[j][z] + eps;
                if (qle && !close(i, j)) t.nonreversing = false;
            }
            if (i < j && close(i, j)) t.inverse_point_valued = false;
        }
    t.constant_aggregate_output = !m.normalized_price && t.max_conservation_error <= 1e-12;
    t.label = label_for(t.ugs, t.nonreversing, true, t.inverse_point_valued);
    return t;
}

}  // namespace equistat
