#include "equistat/suite.hpp"

#include "equistat/error.hpp"
#include "equistat/fixtures.hpp"
#include "equistat/latt.hpp"
#include "equistat/oracles.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace equistat {

// ---------------------------------------------------------------------------
// generators

namespace gen {

long uniform(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

std::vector<Rat> levels(long lo, long hi) {
    std::vector<Rat> v;
    for (long i = lo; i <= hi; ++i) v.emplace_back(i);
    return v;
}

namespace {

Rat random_rat(Rng& rng, long lo, long hi, long max_den) {
    const long d = uniform(rng, 1, max_den);
    return Rat(uniform(rng, lo * d, hi * d), d);
}

// Convex sequence f(0..L) with f(0) = 0 and nondecreasing rational increments.
std::vector<Rat> convex_sequence(Rng& rng, long L) {
    std::vector<Rat> inc;
    for (long i = 0; i < L; ++i) inc.push_back(random_rat(rng, -3, 4, 2));
    std::sort(inc.begin(), inc.end());
    std::vector<Rat> f{Rat(0)};
    for (const auto& d : inc) f.push_back(f.back() + d);
    return f;
}

std::size_t to_index(const Rat& r) { return static_cast<std::size_t>(r.raw().get_num().get_si()); }

}  // namespace

FiniteCorrespondence wgs_linear(Rng& rng, std::size_t dim) {
    std::vector<std::vector<Rat>> A(dim, std::vector<Rat>(dim));
    std::vector<Rat> b(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < dim; ++j) A[i][j] = i == j ? Rat(uniform(rng, 0, 5)) : Rat(uniform(rng, -3, 0));
        b[i] = Rat(uniform(rng, -2, 2));
    }
    const auto grid = product_grid(dim, levels(0, 2));
    return tabulate(dim, grid, [&](const Point& p) {
        Point q(dim);
        for (std::size_t i = 0; i < dim; ++i) {
            q[i] = b[i];
            for (std::size_t j = 0; j < dim; ++j) q[i] += A[i][j] * p[j];
        }
        return q;
    });
}

DiscreteProducer mnatural_producer(Rng& rng, std::size_t dim, long L) {
    DiscreteProducer prod;
    prod.dim = dim;
    prod.quantities = product_grid(dim, levels(0, L));
    std::vector<std::vector<Rat>> f;
    for (std::size_t z = 0; z < dim; ++z) f.push_back(convex_sequence(rng, L));
    const auto g = convex_sequence(rng, L * static_cast<long>(dim));
    for (const auto& q : prod.quantities) {
        Rat c = g[to_index(sum(q))];
        for (std::size_t z = 0; z < dim; ++z) c += f[z][to_index(q[z])];
        prod.cost.push_back(c);
    }
    return prod;
}

DiscreteProducer random_producer(Rng& rng, std::size_t dim, std::size_t max_points) {
    auto all = product_grid(dim, levels(0, 2));
    std::shuffle(all.begin(), all.end(), rng);
    const std::size_t k = static_cast<std::size_t>(uniform(rng, 2, static_cast<long>(std::min(max_points, all.size()))));
    DiscreteProducer prod;
    prod.dim = dim;
    prod.quantities.assign(all.begin(), all.begin() + static_cast<long>(k));
    std::sort(prod.quantities.begin(), prod.quantities.end());
    for (std::size_t i = 0; i < k; ++i) prod.cost.push_back(random_rat(rng, 0, 4, 3));
    return prod;
}

DiscreteProducer grid_producer(Rng& rng, std::size_t dim, long L) {
    DiscreteProducer prod;
    prod.dim = dim;
    prod.quantities = product_grid(dim, levels(0, L));
    for (std::size_t i = 0; i < prod.quantities.size(); ++i) prod.cost.push_back(random_rat(rng, 0, 4, 2));
    return prod;
}

namespace {

std::vector<std::pair<std::size_t, std::size_t>> random_pairs(Rng& rng, std::size_t nodes, std::size_t arcs) {
    std::vector<std::pair<std::size_t, std::size_t>> all;
    for (std::size_t x = 0; x < nodes; ++x)
        for (std::size_t y = 0; y < nodes; ++y)
            if (x != y) all.push_back({x, y});
    std::shuffle(all.begin(), all.end(), rng);
    all.resize(std::min(arcs, all.size()));
    return all;
}

ConnectionFunction random_tabulated(Rng& rng, long lo, long hi) {
    std::vector<std::pair<Rat, Rat>> t;
    Rat x(lo - 1), y(uniform(rng, lo - 3, lo));
    t.push_back({x, y});
    while (x <= Rat(hi + 1)) {
        x += Rat(uniform(rng, 1, 2));
        y += random_rat(rng, 1, 2, 2);
        t.push_back({x, y});
    }
    return ConnectionFunction::tabulated(std::move(t));
}

}  // namespace

Network random_network(Rng& rng, std::size_t nodes, std::size_t arcs, long lo, long hi, bool additive_only) {
    Network net;
    for (std::size_t z = 0; z < nodes; ++z) net.nodes.push_back("n" + std::to_string(z + 1));
    for (auto [x, y] : random_pairs(rng, nodes, arcs)) {
        const long kind = additive_only ? 0 : uniform(rng, 0, 2);
        ConnectionFunction g;
        if (kind == 0) {
            g = ConnectionFunction::additive(Rat(uniform(rng, -2, 2)));
        } else if (kind == 1) {
            static const Rat slopes[] = {Rat(1, 2), Rat(1), Rat(2)};
            g = ConnectionFunction::affine(slopes[uniform(rng, 0, 2)], Rat(uniform(rng, -2, 2)));
        } else {
            g = random_tabulated(rng, lo, hi);
        }
        net.arcs.push_back({x, y, g});
    }
    return net;
}

FlowProblem random_additive_problem(Rng& rng, std::size_t nodes, std::size_t arcs) {
    FlowProblem prob;
    for (std::size_t z = 0; z < nodes; ++z) prob.network.nodes.push_back("n" + std::to_string(z + 1));
    for (auto [x, y] : random_pairs(rng, nodes, arcs))
        prob.network.arcs.push_back({x, y, ConnectionFunction::additive(Rat(uniform(rng, 0, 9)))});
    prob.q.assign(nodes, Rat(0));
    // Total supply at most 3 keeps the exhaustive oracle small.
    long left = uniform(rng, 1, 3);
    while (left > 0) {
        const long amt = uniform(rng, 1, left);
        const auto s = static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(nodes) - 1));
        auto t = static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(nodes) - 2));
        if (t >= s) ++t;
        prob.q[s] -= Rat(amt);
        prob.q[t] += Rat(amt);
        left -= amt;
    }
    return prob;
}

NtuMarket random_ntu(Rng& rng, std::size_t men, std::size_t women) {
    NtuMarket m;
    m.alpha.assign(men, std::vector<Rat>(women));
    m.gamma.assign(men, std::vector<Rat>(women));
    m.alpha0.resize(men);
    m.gamma0.resize(women);
    for (std::size_t x = 0; x < men; ++x) {
        std::vector<long> r(women + 1);
        std::iota(r.begin(), r.end(), 0);
        std::shuffle(r.begin(), r.end(), rng);
        for (std::size_t y = 0; y < women; ++y) m.alpha[x][y] = Rat(r[y]);
        m.alpha0[x] = Rat(r[women]);
    }
    for (std::size_t y = 0; y < women; ++y) {
        std::vector<long> r(men + 1);
        std::iota(r.begin(), r.end(), 0);
        std::shuffle(r.begin(), r.end(), rng);
        for (std::size_t x = 0; x < men; ++x) m.gamma[x][y] = Rat(r[x]);
        m.gamma0[y] = Rat(r[men]);
    }
    m.validate();
    return m;
}

ItuMarket random_tu(Rng& rng, std::size_t workers, std::size_t firms, bool with_singles) {
    ItuMarket m;
    m.with_singles = with_singles;
    for (std::size_t x = 0; x < workers; ++x) m.n.push_back(with_singles ? Rat(uniform(rng, 1, 2)) : Rat(1));
    for (std::size_t y = 0; y < firms; ++y) m.m.push_back(with_singles ? Rat(uniform(rng, 1, 2)) : Rat(1));
    m.maps.assign(workers, {});
    for (std::size_t x = 0; x < workers; ++x)
        for (std::size_t y = 0; y < firms; ++y)
            m.maps[x].push_back(TransferMap::tu(Rat(uniform(rng, -3, 5)), Rat(uniform(rng, -3, 5))));
    m.validate();
    return m;
}

HedonicMarket random_hedonic(Rng& rng, std::size_t producers, std::size_t qualities, std::size_t consumers) {
    static const Rat slopes[] = {Rat(1, 2), Rat(1), Rat(2)};
    HedonicMarket m;
    m.qualities = qualities;
    for (std::size_t x = 0; x < producers; ++x) m.n.push_back(Rat(uniform(rng, 1, 2)));
    for (std::size_t y = 0; y < consumers; ++y) m.m.push_back(Rat(uniform(rng, 1, 2)));
    m.pi.assign(producers, {});
    for (auto& row : m.pi)
        for (std::size_t w = 0; w < qualities; ++w) row.push_back({slopes[uniform(rng, 0, 2)], Rat(uniform(rng, -4, 0))});
    m.s.assign(consumers, {});
    for (auto& row : m.s)
        for (std::size_t w = 0; w < qualities; ++w) row.push_back({Rat(uniform(rng, 0, 6)), slopes[uniform(rng, 0, 2)]});
    m.validate();
    return m;
}

}  // namespace gen

// ---------------------------------------------------------------------------
// criteria

namespace {

using gen::Rng;
using gen::uniform;

// Counts checks and keeps the first failure description.
struct Tally {
    std::size_t total = 0, failed = 0;
    std::string first;

    void check(bool ok, const std::string& what) {
        ++total;
        if (!ok) {
            if (failed++ == 0) first = what;
        }
    }
    bool ok() const { return failed == 0; }
    std::string summary(const std::string& noun) const {
        std::ostringstream os;
        os << total - failed << "/" << total << " " << noun;
        if (failed) os << "; first failure: " << first;
        return os.str();
    }
};

std::string yn(bool b) { return b ? "pass" : "fail"; }

Point ipt(std::initializer_list<long> c) {
    std::vector<Rat> v;
    for (long x : c) v.emplace_back(x);
    return Point(std::move(v));
}

bool has_failure(const Verdict& v, const std::function<bool(const Witness&)>& pred) {
    if (v.witness && pred(*v.witness)) return true;
    return std::any_of(v.failures.begin(), v.failures.end(), pred);
}

CheckOptions collect() { return CheckOptions{.collect_all = true}; }

bool same_pair(const Witness& w, const Point& a, const Point& b) {
    return w.p && w.p_prime && ((*w.p == a && *w.p_prime == b) || (*w.p == b && *w.p_prime == a));
}

// --- fixtures --------------------------------------------------------------

CriterionResult c1() {
    CriterionResult r{.id = 1, .name = "a3_kelso_crawford"};
    auto Q = to_correspondence(fixture("a3_kelso_crawford"));
    const Point p = ipt({1, 1, 2, 2}), pp = ipt({2, 2, 1, 1}), q0 = ipt({0, 1, 1, 0});
    auto kc = check_substitutes(Q, Substitutes::kelso_crawford);
    auto ugs = check_substitutes(Q, Substitutes::ugs, collect());
    const bool ugs_pair = has_failure(ugs, [&](const Witness& w) { return same_pair(w, p, pp); });
    auto ti = check_inverse(Q, InverseProperty::totally_isotone, collect());
    const bool ti_point = has_failure(ti, [&](const Witness& w) {
        return same_pair(w, p, pp) && w.q == q0 && w.q_prime == q0;
    });
    const bool not_in_meet = !Q.contains(meet(p, pp), q0) && Q.contains(p, q0) && Q.contains(pp, q0);
    r.pass = kc.holds && !ugs.holds && ugs_pair && !ti.holds && ti_point && not_in_meet;
    r.detail = "kelso_crawford=" + yn(kc.holds) + " ugs=" + yn(ugs.holds) +
               " ugs_witness_at_reference_pair=" + yn(ugs_pair) + " totally_isotone=" + yn(ti.holds) +
               " (0,1,1,0)_outside_Q(p^p')=" + yn(not_in_meet && ti_point);
    return r;
}

CriterionResult c2() {
    CriterionResult r{.id = 2, .name = "a2_sum_m0"};
    auto inst = fixture("a2_sum_m0");
    auto S = to_correspondence(inst);
    auto M = correspondence_from_json(inst.payload["components"][0]);
    auto MT = correspondence_from_json(inst.payload["components"][1]);
    const auto lm = classify(M).label, lmt = classify(MT).label;
    auto ugs = check_substitutes(S, Substitutes::ugs);
    auto ti = check_inverse(S, InverseProperty::totally_isotone);
    // The sum recomputed by aggregation must equal the stored table.
    auto agg = aggregate(M, MT, Rat(1), Rat(1));
    const bool sum_ok = agg.entries() == S.entries();
    r.pass = lm == Label::m_function && lmt == Label::m_function && ugs.holds && !ti.holds && ti.witness && sum_ok;
    r.detail = "M:" + to_string(lm) + " M^T:" + to_string(lmt) + " sum ugs=" + yn(ugs.holds) +
               " totally_isotone=" + yn(ti.holds);
    if (ti.witness) r.detail += " witness " + render_witness(*ti.witness);
    return r;
}

CriterionResult c3() {
    CriterionResult r{.id = 3, .name = "b1_simplex_argmax"};
    auto Q = to_correspondence(fixture("b1_simplex_argmax"));
    auto ugs = check_substitutes(Q, Substitutes::ugs);
    auto strong = check_substitutes(Q, Substitutes::ugs_strong_antecedent, collect());
    const Point p = ipt({1, 1}), q = ipt({1, 0}), qp = ipt({0, 1});
    const bool tuple = has_failure(strong, [&](const Witness& w) {
        return w.p == p && w.p_prime == p && w.q == q && w.q_prime == qp;
    });
    r.pass = ugs.holds && !strong.holds && tuple;
    r.detail = "ugs=" + yn(ugs.holds) + " ugs_strong_antecedent=" + yn(strong.holds) +
               " failing tuple p=p'=(1,1) q=(1,0) q'=(0,1) found=" + yn(tuple);
    return r;
}

CriterionResult c4() {
    CriterionResult r{.id = 4, .name = "b2_kettle"};
    auto Q = to_correspondence(fixture("b2_kettle"));
    auto ugs = check_substitutes(Q, Substitutes::ugs);
    auto nr = check_monotonicity(Q, Monotonicity::nonreversing);
    auto am = check_monotonicity(Q, Monotonicity::aggregate_monotonicity);
    auto wm = check_monotonicity(Q, Monotonicity::weighted_monotonicity);
    auto mto = check_monotonicity(Q, Monotonicity::monotone_total_output, collect());
    const Point a = ipt({2, 0, 0}), o = ipt({0, 0, 0}), k = ipt({2, 1, 1});
    const bool mto_pair = has_failure(mto, [&](const Witness& w) { return same_pair(w, a, o); });
    // k = (2,1,1) certifies both orderings of the pair.
    bool k_ok = true;
    for (auto [p, pp] : {std::pair{a, o}, std::pair{o, a}}) {
        const Point& q = Q.image_of(p).front();
        const Point& qp = Q.image_of(pp).front();
        const Point& qm = Q.image_of(meet(p, pp)).front();
        const Point& qj = Q.image_of(join(p, pp)).front();
        k_ok = k_ok && dot(k, q - qm) >= Rat(0) && dot(k, qj - qp) >= Rat(0);
    }
    r.pass = ugs.holds && nr.holds && am.holds && wm.holds && k_ok && !mto.holds && mto_pair;
    r.detail = "ugs=" + yn(ugs.holds) + " nonreversing=" + yn(nr.holds) + " aggregate_monotonicity=" + yn(am.holds) +
               " weighted_monotonicity=" + yn(wm.holds) + " k=(2,1,1)=" + yn(k_ok) +
               " monotone_total_output=" + yn(mto.holds) + " failing pair (2,0,0)/(0,0,0) found=" + yn(mto_pair) +
               " q(2,0,0)=" + Q.image_of(a).front().str();
    return r;
}

CriterionResult c5() {
    CriterionResult r{.id = 5, .name = "a4_polterovich_spivak_independence"};
    auto A = to_correspondence(fixture("a4_ps_not_ugs"));
    auto B = to_correspondence(fixture("a4_ugs_not_ps"));
    const bool a_ps = check_substitutes(A, Substitutes::polterovich_spivak).holds;
    const bool a_ugs = check_substitutes(A, Substitutes::ugs).holds;
    const bool b_ps = check_substitutes(B, Substitutes::polterovich_spivak).holds;
    const bool b_ugs = check_substitutes(B, Substitutes::ugs).holds;
    r.pass = a_ps && !a_ugs && !b_ps && b_ugs;
    r.detail = "ps_not_ugs: ps=" + yn(a_ps) + " ugs=" + yn(a_ugs) + "; ugs_not_ps: ps=" + yn(b_ps) + " ugs=" + yn(b_ugs);
    return r;
}

CriterionResult c6() {
    CriterionResult r{.id = 6, .name = "a6_monotone_comparative_statics"};
    auto T = to_correspondence(fixture("a6_topkis_not_ugs"));
    auto I = to_correspondence(fixture("a6_ugs_not_milgrom_shannon"));
    auto t_ugs = check_substitutes(T, Substitutes::ugs);
    auto t_sso = check_inverse(T, InverseProperty::sso_isotone);
    auto i_ugs = check_substitutes(I, Substitutes::ugs);
    auto i_nr = check_monotonicity(I, Monotonicity::nonreversing);
    r.pass = !t_ugs.holds && t_sso.holds && i_ugs.holds && i_nr.holds;
    r.detail = "topkis: ugs=" + yn(t_ugs.holds) + " inverse sso_isotone=" + yn(t_sso.holds) +
               "; involution: ugs=" + yn(i_ugs.holds) + " nonreversing=" + yn(i_nr.holds);
    if (!i_ugs.holds && i_ugs.witness) r.detail += " (ugs witness " + render_witness(*i_ugs.witness) + ")";
    return r;
}

// --- pool of ugs correspondences -------------------------------------------

struct Pool {
    std::vector<FiniteCorrespondence> items;
    std::map<std::string, std::size_t> sources;
    std::size_t rejected_flow = 0;  // sampled flow correspondences failing ugs
};

const Pool& ugs_pool(std::uint64_t seed) {
    static std::map<std::uint64_t, Pool> cache;
    auto it = cache.find(seed);
    if (it != cache.end()) return it->second;
    Pool pool;
    Rng rng(seed * 7919 + 7);
    std::size_t turn = 0;
    while (pool.items.size() < 210) {
        std::optional<FiniteCorrespondence> Q;
        std::string src;
        switch (turn++ % 4) {
            case 0: {
                const std::size_t dim = static_cast<std::size_t>(uniform(rng, 2, 3));
                auto prod = gen::mnatural_producer(rng, dim, dim == 2 ? uniform(rng, 1, 3) : 1);
                Q = argmax_correspondence(prod, product_grid(dim, gen::levels(0, 2)));
                src = "producer";
                break;
            }
            case 1: {
                auto prod = gen::random_producer(rng, 2, 6);
                Q = argmax_correspondence(prod, product_grid(2, gen::levels(0, 2)));
                src = "producer";
                break;
            }
            case 2: {
                const std::size_t n = static_cast<std::size_t>(uniform(rng, 2, 3));
                auto net = gen::random_network(rng, n, static_cast<std::size_t>(uniform(rng, 1, 4)), 0, 2);
                try {
                    Q = sample_equilibrium_correspondence(net, product_grid(n, gen::levels(0, 2)), 1).Q;
                } catch (const InputError&) {
                    continue;  // every grid price violates condition (ii)
                }
                src = "flow";
                break;
            }
            default:
                Q = gen::wgs_linear(rng, static_cast<std::size_t>(uniform(rng, 2, 3)));
                src = "wgs";
        }
        if (!check_substitutes(*Q, Substitutes::ugs).holds) {
            if (src == "flow") ++pool.rejected_flow;
            continue;
        }
        ++pool.sources[src];
        pool.items.push_back(std::move(*Q));
    }
    return cache.emplace(seed, std::move(pool)).first->second;
}

std::string pool_summary(const Pool& pool) {
    std::ostringstream os;
    os << pool.items.size() << " ugs instances (";
    bool first = true;
    for (const auto& [k, v] : pool.sources) {
        os << (first ? "" : ", ") << k << " " << v;
        first = false;
    }
    os << ")";
    return os.str();
}

CriterionResult c7(std::uint64_t seed) {
    CriterionResult r{.id = 7, .name = "nonreversing_iff_totally_isotone_inverse"};
    const Pool& pool = ugs_pool(seed);
    Tally t;
    std::size_t nr_true = 0;
    for (std::size_t i = 0; i < pool.items.size(); ++i) {
        const auto& Q = pool.items[i];
        const bool nr = check_monotonicity(Q, Monotonicity::nonreversing).holds;
        const bool ti = check_inverse(Q, InverseProperty::totally_isotone).holds;
        nr_true += nr;
        t.check(nr == ti, "instance " + std::to_string(i) + " nonreversing=" + yn(nr) + " totally_isotone=" + yn(ti));
    }
    r.pass = t.ok() && pool.items.size() >= 200;
    r.detail = t.summary("agree") + " on " + pool_summary(pool) + ", nonreversing in " + std::to_string(nr_true) +
               ", sampled flow correspondences rejected for failing ugs: " + std::to_string(pool.rejected_flow);
    return r;
}

CriterionResult c8(std::uint64_t seed) {
    CriterionResult r{.id = 8, .name = "strongly_nonreversing_iff_point_valued_inverse"};
    const Pool& pool = ugs_pool(seed);
    Tally t;
    std::size_t sn_true = 0;
    for (std::size_t i = 0; i < pool.items.size(); ++i) {
        const auto& Q = pool.items[i];
        const bool sn = check_monotonicity(Q, Monotonicity::strongly_nonreversing).holds;
        const bool inv = check_inverse(Q, InverseProperty::point_valued).holds &&
                         check_inverse(Q, InverseProperty::sso_isotone).holds;
        const Label l = classify(Q).label;
        const bool m = l == Label::m_function || l == Label::m_correspondence;
        sn_true += sn;
        t.check(sn == inv && inv == m, "instance " + std::to_string(i) + " strongly_nonreversing=" + yn(sn) +
                                           " inverse_point_valued_isotone=" + yn(inv) + " label=" + to_string(l));
    }
    r.pass = t.ok() && pool.items.size() >= 200;
    r.detail = t.summary("agree") + ", strongly nonreversing in " + std::to_string(sn_true);
    return r;
}

CriterionResult c9(std::uint64_t seed) {
    CriterionResult r{.id = 9, .name = "producer_submodularity_and_no_complementarities"};
    Rng rng(seed * 104729 + 9);
    Tally t3, t4;
    std::size_t ugs_true = 0, skipped = 0, widened3 = 0, widened4 = 0;
    // Disagreements are re-examined on a wider price grid to separate boundary effects from checker faults.
    auto wide = [](std::size_t dim) {
        std::vector<Rat> lv;
        const long den = dim == 2 ? 4 : 1;
        for (long k = -3 * den; k <= 5 * den; ++k) lv.emplace_back(k, den);
        return product_grid(dim, lv);
    };
    for (int i = 0; i < 120; ++i) {
        const std::size_t dim = static_cast<std::size_t>(uniform(rng, 2, 3));
        DiscreteProducer prod;
        switch (i % 3) {
            case 0: prod = gen::mnatural_producer(rng, dim, dim == 2 ? uniform(rng, 1, 3) : uniform(rng, 1, 1)); break;
            case 1: prod = gen::random_producer(rng, dim, 20); break;
            default: prod = gen::grid_producer(rng, dim, dim == 2 ? uniform(rng, 1, 2) : 1);
        }
        const auto grid = product_grid(dim, gen::levels(0, 2));
        auto rep = spice_equivalence(prod, grid);
        ugs_true += rep.ugs.holds;
        t3.check(rep.agree, "producer " + std::to_string(i) + " submodular=" + yn(rep.submodular.holds) +
                                " ugs=" + yn(rep.ugs.holds));
        if (!rep.agree) widened3 += spice_equivalence(prod, wide(dim)).agree;
        // No-complementarities on producers whose quantity set is a full grid.
        if (i % 3 == 1) continue;
        if (!check_discrete_convexity(prod).holds) {
            ++skipped;
            continue;
        }
        auto nc_all = [&](const std::vector<Point>& g) {
            return std::all_of(g.begin(), g.end(), [&](const Point& p) { return check_no_complementarities(prod, p).holds; });
        };
        const bool nc = nc_all(grid);
        t4.check(nc == rep.ugs.holds, "producer " + std::to_string(i) + " no_complementarities=" + yn(nc) +
                                          " ugs=" + yn(rep.ugs.holds));
        if (nc != rep.ugs.holds) {
            const auto w = wide(dim);
            widened4 += nc_all(w) == check_substitutes(argmax_correspondence(prod, w), Substitutes::ugs).holds;
        }
    }
    r.pass = t3.ok() && t4.ok() && t3.total >= 100;
    r.detail = "submodular vs ugs: " + t3.summary("agree") + " (ugs in " + std::to_string(ugs_true) + "; " +
               std::to_string(widened3) + "/" + std::to_string(t3.failed) + " disagreements agree on the wider grid [-3,5]^N); no_complementarities vs ugs: " +
               t4.summary("agree") + " (" + std::to_string(widened4) + "/" + std::to_string(t4.failed) +
               " agree on the wider grid), " + std::to_string(skipped) + " nonconvex skipped";
    return r;
}

CriterionResult c10(std::uint64_t seed) {
    CriterionResult r{.id = 10, .name = "min_cost_flow_vs_oracle"};
    Rng rng(seed * 15485863 + 10);
    Tally t;
    std::size_t infeasible = 0;
    for (int i = 0; t.total - infeasible < 50; ++i) {
        const std::size_t n = static_cast<std::size_t>(uniform(rng, 2, 6));
        auto prob = gen::random_additive_problem(rng, n, static_cast<std::size_t>(uniform(rng, 1, 10)));
        auto best = oracle::min_cost_integer_flow(prob);
        const std::string tag = "instance " + std::to_string(i);
        try {
            auto out = solve_additive(prob);
            const Rat cost = flow_cost(prob.network, out.mu);
            auto chk = verify_equilibrium(prob, out, Rat(0));
            t.check(best && cost == *best && chk.verdict.holds,
                    tag + " cost=" + cost.str() + " oracle=" + (best ? best->str() : "infeasible") +
                        " equilibrium=" + yn(chk.verdict.holds));
        } catch (const InfeasibleError&) {
            ++infeasible;
            t.check(!best, tag + " solver infeasible, oracle " + (best ? best->str() : "infeasible"));
        }
    }
    r.pass = t.ok() && t.total - infeasible >= 50;
    r.detail = t.summary("match") + " (" + std::to_string(infeasible) + " infeasible, agreed)";
    return r;
}

CriterionResult c11(std::uint64_t seed) {
    CriterionResult r{.id = 11, .name = "latest_departure"};
    Rng rng(seed * 32452843 + 11);
    Tally ta, tt;
    const Rat pd(100);
    while (ta.total < 50) {
        const std::size_t n = static_cast<std::size_t>(uniform(rng, 3, 7));
        Network net;
        std::vector<oracle::IntArc> ia;
        for (std::size_t z = 0; z < n; ++z) net.nodes.push_back("n" + std::to_string(z));
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t y = x + 1; y < n; ++y)
                if (uniform(rng, 0, 2) > 0) {
                    const long c = uniform(rng, 1, 9);
                    auto g = ConnectionFunction::additive(Rat(c));
                    g.strict_progress = true;
                    net.arcs.push_back({x, y, g});
                    ia.push_back({x, y, c});
                }
        auto dist = oracle::shortest_to(n, ia, n - 1);
        if (!dist[0]) continue;
        auto ld = solve_latest_departure(net, n - 1, pd, 0);
        bool ok = true;
        for (std::size_t z = 0; z < n; ++z)
            ok = ok && (dist[z].has_value() == ld.p[z].has_value()) && (!dist[z] || *ld.p[z] == pd - Rat(static_cast<long>(*dist[z])));
        Rat along = pd;
        for (auto it = ld.path.rbegin(); it != ld.path.rend(); ++it) along = eval_connection(net.arcs[*it].g, along);
        ok = ok && !ld.path.empty() && along == *ld.p[0];
        ta.check(ok, "additive dag " + std::to_string(ta.total) + " p_o=" + (ld.p[0] ? ld.p[0]->str() : "none") +
                         " oracle distance=" + std::to_string(*dist[0]));
    }
    double worst = 0;
    while (tt.total < 25) {
        const std::size_t n = static_cast<std::size_t>(uniform(rng, 4, 6));
        Network net;
        std::vector<oracle::TableArc> ta_arcs;
        for (std::size_t z = 0; z < n; ++z) net.nodes.push_back("n" + std::to_string(z));
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t y = x + 1; y < n; ++y)
                if (uniform(rng, 0, 2) > 0) {
                    // Breakpoints 10 apart with delays in [1, 5] keep both columns increasing and G(p) < p.
                    std::vector<std::pair<Rat, Rat>> tab;
                    std::vector<std::pair<double, double>> dtab;
                    for (long xb = 0; xb <= 120; xb += 10) {
                        const Rat delay(uniform(rng, 2, 10), 2);
                        tab.push_back({Rat(xb), Rat(xb) - delay});
                        dtab.push_back({double(xb), (Rat(xb) - delay).to_double()});
                    }
                    auto g = ConnectionFunction::tabulated(tab);
                    g.strict_progress = true;
                    net.arcs.push_back({x, y, g});
                    ta_arcs.push_back({x, y, dtab});
                }
        auto best = oracle::latest_departure_by_paths(n, ta_arcs, 0, n - 1, pd.to_double());
        if (!best) continue;
        auto ld = solve_latest_departure(net, n - 1, pd, 0);
        const double got = ld.p[0] ? ld.p[0]->to_double() : -1e300;
        worst = std::max(worst, std::abs(got - *best));
        std::ostringstream os;
        os << "tabulated dag " << tt.total << " p_o=" << got << " oracle=" << *best;
        tt.check(std::abs(got - *best) <= kTabulatedDepartureTol, os.str());
    }
    r.pass = ta.ok() && tt.ok();
    std::ostringstream os;
    os << "additive: " << ta.summary("exact") << "; tabulated: " << tt.summary("within 1e-9") << " (max error "
       << worst << ")";
    r.detail = os.str();
    return r;
}

CriterionResult c12(std::uint64_t seed) {
    CriterionResult r{.id = 12, .name = "sampled_flow_ugs"};
    Rng rng(seed * 49979687 + 12);
    Tally t;
    std::size_t filtered = 0, points = 0;
    while (t.total < 100) {
        const std::size_t n = static_cast<std::size_t>(uniform(rng, 2, 5));
        const std::size_t max_arcs = std::min<std::size_t>(8, n * (n - 1));
        auto net = gen::random_network(rng, n, static_cast<std::size_t>(uniform(rng, 1, static_cast<long>(max_arcs))), 0, 3);
        const long L = n >= 5 ? 3 : 4;
        const unsigned cap = n <= 3 ? 2 : 1;
        std::optional<SampledCorrespondence> s;
        try {
            s = sample_equilibrium_correspondence(net, product_grid(n, gen::levels(0, L - 1)), cap);
        } catch (const InputError&) {
            continue;  // every grid price violates condition (ii)
        }
        filtered += s->filtered.size();
        points += s->Q.size();
        auto ugs = check_substitutes(s->Q, Substitutes::ugs);
        auto fib = check_inverse(s->Q, InverseProperty::sublattice_fibers);
        std::string what = "network " + std::to_string(t.total) + " ugs=" + yn(ugs.holds) + " sublattice_fibers=" + yn(fib.holds);
        if (!ugs.holds && ugs.witness) what += " " + render_witness(*ugs.witness);
        t.check(ugs.holds && fib.holds, what);
    }
    r.pass = t.ok();
    r.detail = t.summary("certified") + " (" + std::to_string(points) + " retained prices, " + std::to_string(filtered) +
               " filtered)";
    return r;
}

// --- markets ----------------------------------------------------------------

std::vector<Point> sub_grid(Rng& rng, const NtuMarket& m, std::size_t max_points) {
    auto lv = ntu_levels(m);
    auto size = [&] {
        std::size_t s = 1;
        for (const auto& l : lv) s *= l.size();
        return s;
    };
    while (size() > max_points) {
        auto big = std::max_element(lv.begin(), lv.end(), [](const auto& a, const auto& b) { return a.size() < b.size(); });
        big->erase(big->begin() + uniform(rng, 0, static_cast<long>(big->size()) - 1));
    }
    return product_grid(lv);
}

CriterionResult c13(std::uint64_t seed) {
    CriterionResult r{.id = 13, .name = "ntu_stable_matchings"};
    Rng rng(seed * 86028121 + 13);
    Tally tz, tr, tf, tg, tm, tl;
    std::size_t stable_total = 0;
    for (int i = 0; i < 100; ++i) {
        auto m = gen::random_ntu(rng, static_cast<std::size_t>(uniform(rng, 1, 5)), static_cast<std::size_t>(uniform(rng, 1, 5)));
        const std::string tag = "market " + std::to_string(i);
        std::set<Point> brute;
        for (const auto& mu : oracle::ntu_stable_matchings(m)) brute.insert(Point(oracle::ntu_women_payoffs(m, mu)));
        stable_total += brute.size();
        std::set<Point> zeros, fixed;
        bool all_stable = true;
        for (const auto& o : ntu_solve(m)) {
            zeros.insert(o.v);
            all_stable = all_stable && o.stable;
            if (o.stable && ntu_payoffs_v(m, o.match) == o.v) fixed.insert(o.v);
        }
        tz.check(zeros == brute, tag + ": " + std::to_string(zeros.size()) + " zeros vs " +
                                     std::to_string(brute.size()) + " stable payoff vectors");
        tr.check(all_stable, tag + ": a zero reconstructs an unstable matching");
        // Zeros whose reconstruction realizes the same payoffs.
        tf.check(fixed == brute, tag + ": " + std::to_string(fixed.size()) + " self-consistent zeros vs " +
                                     std::to_string(brute.size()) + " stable payoff vectors");
        Point lo = *brute.begin(), hi = *brute.begin();
        for (const auto& v : brute) {
            lo = meet(lo, v);
            hi = join(hi, v);
        }
        const Point vm = ntu_payoffs_v(m, gale_shapley(m, Side::men));
        const Point vw = ntu_payoffs_v(m, gale_shapley(m, Side::women));
        tg.check(vm == lo && vw == hi, tag + ": men-proposing " + vm.str() + " vs min " + lo.str() +
                                           ", women-proposing " + vw.str() + " vs max " + hi.str());
        auto m0 = ntu_m0_check(m, sub_grid(rng, m, 256));
        tm.check(m0.holds, tag + ": " + m0.note);
        auto lat = ntu_lattice_report(m, std::vector<Point>(brute.begin(), brute.end()));
        tl.check(lat.closure.holds, tag + ": stable payoffs not closed under meet and join");
    }
    r.pass = tz.ok() && tr.ok() && tg.ok() && tm.ok() && tl.ok();
    r.detail = "zero set = stable set: " + tz.summary("markets") + "; reconstructions stable: " + tr.summary("markets") +
               "; self-consistent zeros = stable set: " + tf.summary("markets") + "; gale-shapley extremes: " + tg.summary("markets") +
               "; m0 check: " + tm.summary("markets") + "; lattice: " + tl.summary("markets") + " (" +
               std::to_string(stable_total) + " stable payoff vectors)";
    return r;
}

// Firm payoffs v extend to an equilibrium iff the smallest compatible worker payoffs do.
bool tu_firm_payoffs_member(const ItuMarket& m, const FlowProblem& prob, const Point& v) {
    std::vector<Rat> p;
    for (std::size_t x = 0; x < m.workers(); ++x) {
        Rat u(0);
        for (std::size_t y = 0; y < m.firms(); ++y) u = max(u, m.maps[x][y].alpha + m.maps[x][y].gamma - v[y]);
        p.push_back(u);
    }
    for (std::size_t y = 0; y < m.firms(); ++y) p.push_back(-v[y]);
    p.push_back(Rat(0));
    return in_equilibrium_set(prob, p).has_value();
}

std::vector<Point> firm_payoffs(const ItuMarket& m, const std::vector<FlowOutcome>& vertices) {
    std::set<Point> out;
    for (const auto& o : vertices) {
        Point v(m.firms());
        for (std::size_t y = 0; y < m.firms(); ++y) v[y] = -o.p[m.workers() + y];
        out.insert(v);
    }
    return {out.begin(), out.end()};
}

CriterionResult c14(std::uint64_t seed) {
    CriterionResult r{.id = 14, .name = "tu_matching"};
    Rng rng(seed * 122949829 + 14);
    Tally ts, tw, tl, tr;
    std::size_t vertices = 0;
    for (int i = 0; i < 60; ++i) {
        const bool singles = i % 3 != 0;
        const std::size_t X = static_cast<std::size_t>(uniform(rng, 1, 4));
        const std::size_t Y = singles ? static_cast<std::size_t>(uniform(rng, 1, 4)) : X;
        auto m = gen::random_tu(rng, X, Y, singles);
        const std::string tag = "market " + std::to_string(i);
        auto sol = solve_itu(m);
        auto st = check_stability_itu(m, sol.matching);
        ts.check(st.holds, tag + " unstable: " + render_verdict(st));
        const Rat got = total_surplus_tu(m, sol.matching), best = oracle::tu_assignment_optimum(m);
        tw.check(got == best, tag + " surplus " + got.str() + " vs optimum " + best.str());
        auto prob = itu_to_flow(m);
        auto vs = itu_equilibrium_vertices(m);
        vertices += vs.size();
        std::vector<Point> prices;
        for (const auto& o : vs) prices.push_back(to_point(o.p));
        auto lat = equilibrium_lattice_report(prob, prices);
        tl.check(lat.closure.holds, tag + " equilibrium prices not closed under meet and join");
        if (!singles) continue;
        // One more firm of a random type.
        ItuMarket more = m;
        const auto y = static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(Y) - 1));
        more.m[y] += Rat(1);
        auto prob_more = itu_to_flow(more);
        auto before = firm_payoffs(m, vs), after = firm_payoffs(more, itu_equilibrium_vertices(more));
        auto leq_v = strong_set_leq(after, before,
                                    [&](const Point& v) { return tu_firm_payoffs_member(more, prob_more, v); },
                                    [&](const Point& v) { return tu_firm_payoffs_member(m, prob, v); });
        tr.check(leq_v.holds, tag + " firm payoffs not lower after entry of a type " + std::to_string(y + 1) + " firm");
    }
    r.pass = ts.ok() && tw.ok() && tl.ok() && tr.ok() && ts.total >= 50;
    r.detail = "stability: " + ts.summary("markets") + "; surplus = assignment optimum: " + tw.summary("markets") +
               "; lattice: " + tl.summary("markets") + " (" + std::to_string(vertices) +
               " vertices); firm entry lowers firm payoffs (sampled pairs): " + tr.summary("markets");
    return r;
}

CriterionResult c15(std::uint64_t seed) {
    CriterionResult r{.id = 15, .name = "hedonic_equilibrium"};
    Rng rng(seed * 179424673 + 15);
    Tally tv, tl;
    std::size_t vertices = 0;
    for (int i = 0; i < 30; ++i) {
        auto m = gen::random_hedonic(rng, static_cast<std::size_t>(uniform(rng, 1, 3)),
                                     static_cast<std::size_t>(uniform(rng, 1, 3)), static_cast<std::size_t>(uniform(rng, 1, 3)));
        const std::string tag = "market " + std::to_string(i);
        auto sol = hedonic_solve(m, true, 64);
        if (!sol.outcome) {
            tv.check(false, tag + " inconclusive: " + sol.report);
            continue;
        }
        auto v = verify_hedonic(m, sol.outcome->price, sol.outcome->alloc, kHedonicEps);
        tv.check(v.holds, tag + ": " + render_verdict(v));
        // Every vertex maps back to a hedonic equilibrium.
        bool all = true;
        std::vector<Point> prices;
        for (const auto& o : sol.vertices) {
            auto h = hedonic_from_flow(m, o);
            all = all && verify_hedonic(m, h.price, h.alloc, kHedonicEps).holds;
            prices.push_back(to_point(o.p));
        }
        vertices += prices.size();
        tv.check(all, tag + ": some equilibrium vertex fails the hedonic conditions");
        auto lat = equilibrium_lattice_report(hedonic_to_flow(m), prices);
        tl.check(lat.closure.holds, tag + ": equilibrium prices not closed under meet and join");
    }
    r.pass = tv.ok() && tl.ok();
    r.detail = "verify_hedonic: " + tv.summary("checks") + "; lattice: " + tl.summary("markets") + " (" +
               std::to_string(vertices) + " vertices)";
    return r;
}

CriterionResult c16(std::uint64_t seed) {
    CriterionResult r{.id = 16, .name = "subsolution_structure"};
    const Pool& pool = ugs_pool(seed);
    Rng rng(seed * 275604541 + 16);
    Tally tc, tm;
    for (std::size_t i = 0; i < pool.items.size(); ++i) {
        const auto& Q = pool.items[i];
        const auto& img = Q.image(static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(Q.size()) - 1)));
        const Point targets[] = {zeros(Q.dim()), img[static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(img.size()) - 1))]};
        for (const auto& target : targets) {
            auto s = solution_sets(Q, target);
            const std::string tag = "instance " + std::to_string(i) + " target " + target.str();
            tc.check(s.subsolutions_join_closed.holds && s.supersolutions_meet_closed.holds,
                     tag + " closure: sub=" + yn(s.subsolutions_join_closed.holds) +
                         " super=" + yn(s.supersolutions_meet_closed.holds));
            if (s.maximal_subsolution_is_solution.applicable)
                tm.check(s.maximal_subsolution_is_solution.holds,
                         tag + " " + render_verdict(s.maximal_subsolution_is_solution));
        }
    }
    r.pass = tc.ok() && tm.ok();
    r.detail = "closure: " + tc.summary("cases") + "; maximal subsolution = solution on M0 instances: " + tm.summary("cases");
    return r;
}

CriterionResult c17() {
    CriterionResult r{.id = 17, .name = "logit"};
    LogitModel m;
    m.goods = 3;
    m.counts = {Rat(2), Rat(3)};
    m.slope = {{Rat(1), Rat(1), Rat(1)}, {Rat(1), Rat(1), Rat(1)}};
    m.intercept = {{Rat(0), Rat(1), Rat(-1)}, {Rat(1, 2), Rat(0), Rat(2)}};
    auto un = logit_taxonomy(m, product_grid(3, gen::levels(0, 2)), kLogitTol);
    LogitModel norm = m;
    norm.normalized_price = Rat(0);
    auto nt = logit_taxonomy(norm, product_grid(2, gen::levels(0, 2)), kLogitTol);
    r.pass = un.label == Label::m0_function && nt.label == Label::m_function &&
             un.max_conservation_error <= kConservationTol;
    std::ostringstream os;
    os << "unnormalized: " << to_string(un.label) << " (conservation error " << un.max_conservation_error
       << "); normalized: " << to_string(nt.label);
    r.detail = os.str();
    return r;
}

}  // namespace

CriterionResult run_criterion(int id, std::uint64_t seed) {
    if (id < 1 || id > kCriteria) throw InputError("no acceptance criterion " + std::to_string(id));
    static const std::function<CriterionResult(std::uint64_t)> table[] = {
        [](std::uint64_t) { return c1(); }, [](std::uint64_t) { return c2(); }, [](std::uint64_t) { return c3(); },
        [](std::uint64_t) { return c4(); }, [](std::uint64_t) { return c5(); }, [](std::uint64_t) { return c6(); },
        c7, c8, c9, c10, c11, c12, c13, c14, c15, c16, [](std::uint64_t) { return c17(); },
    };
    const auto t0 = std::chrono::steady_clock::now();
    CriterionResult r;
    try {
        r = table[id - 1](seed);
    } catch (const std::exception& e) {
        r = CriterionResult{.id = id, .name = "error", .pass = false, .detail = std::string("exception: ") + e.what()};
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

std::vector<CriterionResult> run_acceptance(std::uint64_t seed, const std::vector<int>& only) {
    std::vector<CriterionResult> out;
    for (int id = 1; id <= kCriteria; ++id)
        if (only.empty() || std::find(only.begin(), only.end(), id) != only.end()) out.push_back(run_criterion(id, seed));
    return out;
}

std::string format_result(const CriterionResult& r) {
    std::ostringstream os;
    os << (r.pass ? "PASS" : "FAIL") << " [" << std::setw(2) << std::setfill('0') << r.id << "] " << r.name << ": "
       << r.detail << " (" << std::fixed << std::setprecision(2) << r.seconds << " s)";
    return os.str();
}

}  // namespace equistat
