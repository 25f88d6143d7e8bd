#include "equistat/markets.hpp"

#include "equistat/error.hpp"

#include <algorithm>
#include <set>

namespace equistat {

namespace {

// Piecewise-linear evaluation by the first coordinate, which increases strictly.
Rat pl_eval(const std::vector<std::pair<Rat, Rat>>& t, const Rat& x) {
    if (x < t.front().first || t.back().first < x)
        throw InputError("tabulated map queried at " + x.str() + " outside its wage range");
    std::size_t hi = 1;
    while (t[hi].first < x) ++hi;
    const auto& a = t[hi - 1];
    const auto& b = t[hi];
    return a.second + (b.second - a.second) * (x - a.first) / (b.first - a.first);
}

// Inverse through a strictly monotone second coordinate.
Rat pl_inverse(const std::vector<std::pair<Rat, Rat>>& t, const Rat& y) {
    for (std::size_t i = 1; i < t.size(); ++i) {
        const auto& a = t[i - 1];
        const auto& b = t[i];
        if (min(a.second, b.second) <= y && y <= max(a.second, b.second))
            return a.first + (b.first - a.first) * (y - a.second) / (b.second - a.second);
    }
    throw InputError("tabulated map cannot be inverted at " + y.str());
}

void require_monotone(const std::vector<std::pair<Rat, Rat>>& t, bool increasing, const char* what) {
    if (t.size() < 2) throw InputError(std::string(what) + " needs at least two breakpoints");
    for (std::size_t i = 1; i < t.size(); ++i) {
        if (!(t[i - 1].first < t[i].first)) throw InputError(std::string(what) + " wages must increase strictly");
        if (increasing ? !(t[i - 1].second < t[i].second) : !(t[i].second < t[i - 1].second))
            throw InputError(std::string(what) + " must be strictly monotone");
    }
}

void require_positive(const std::vector<Rat>& v, const char* what) {
    for (const auto& x : v)
        if (x.sign() <= 0) throw InputError(std::string(what) + " must be positive");
}

Rat sum_of(const std::vector<Rat>& v) {
    Rat s;
    for (const auto& x : v) s += x;
    return s;
}

std::string idx(const char* prefix, std::size_t i) { return prefix + std::to_string(i + 1); }

}  // namespace

// ---------------------------------------------------------------------------
// transfer maps

TransferMap TransferMap::tu(Rat alpha, Rat gamma) {
    TransferMap t;
    t.kind = Kind::tu;
    t.alpha = std::move(alpha);
    t.gamma = std::move(gamma);
    return t;
}

void TransferMap::validate() const {
    switch (kind) {
        case Kind::tu: return;
        case Kind::affine:
            if (au.sign() <= 0 || av.sign() <= 0) throw InputError("affine transfer slopes must be positive");
            return;
        case Kind::tabulated:
            require_monotone(u_table, true, "worker utility table");
            require_monotone(v_table, false, "firm utility table");
            if (max(u_table.front().first, v_table.front().first) >= min(u_table.back().first, v_table.back().first))
                throw InputError("worker and firm utility tables share no wage interval");
            return;
    }
}

Rat TransferMap::U(const Rat& w) const {
    switch (kind) {
        case Kind::tu: return alpha + w;
        case Kind::affine: return au * w + bu;
        case Kind::tabulated: return pl_eval(u_table, w);
    }
    return w;
}

Rat TransferMap::V(const Rat& w) const {
    switch (kind) {
        case Kind::tu: return gamma - w;
        case Kind::affine: return bv - av * w;
        case Kind::tabulated: return pl_eval(v_table, w);
    }
    return w;
}

Rat TransferMap::U_inv(const Rat& u) const {
    switch (kind) {
        case Kind::tu: return u - alpha;
        case Kind::affine: return (u - bu) / au;
        case Kind::tabulated: return pl_inverse(u_table, u);
    }
    return u;
}

Rat TransferMap::V_inv(const Rat& v) const {
    switch (kind) {
        case Kind::tu: return gamma - v;
        case Kind::affine: return (bv - v) / av;
        case Kind::tabulated: return pl_inverse(v_table, v);
    }
    return v;
}

ConnectionFunction TransferMap::connection() const {
    validate();
    switch (kind) {
        case Kind::tu: return ConnectionFunction::additive(-(alpha + gamma));
        case Kind::affine: return ConnectionFunction::affine(au / av, au * bv / av + bu);
        case Kind::tabulated: {
            const Rat lo = max(u_table.front().first, v_table.front().first);
            const Rat hi = min(u_table.back().first, v_table.back().first);
            std::set<Rat> ws{lo, hi};
            for (const auto& b : u_table)
                if (lo < b.first && b.first < hi) ws.insert(b.first);
            for (const auto& b : v_table)
                if (lo < b.first && b.first < hi) ws.insert(b.first);
            std::vector<std::pair<Rat, Rat>> g;
            for (const auto& w : ws) g.emplace_back(-V(w), U(w));
            return ConnectionFunction::tabulated(std::move(g));
        }
    }
    return {};
}

// ---------------------------------------------------------------------------
// ITU markets

void ItuMarket::validate() const {
    if (n.empty() || m.empty()) throw InputError("market needs worker and firm types");
    require_positive(n, "worker counts");
    require_positive(m, "firm counts");
    if (maps.size() != n.size()) throw InputError("transfer maps must cover every worker type");
    for (const auto& row : maps) {
        if (row.size() != m.size()) throw InputError("transfer maps must cover every firm type");
        for (const auto& t : row) t.validate();
    }
    if (!with_singles && sum_of(n) != sum_of(m))
        throw InputError("without singles the numbers of workers and firms must agree");
}

bool ItuMarket::transferable() const {
    for (const auto& row : maps)
        for (const auto& t : row)
            if (!t.connection().is_additive()) return false;
    return true;
}

FlowProblem itu_to_flow(const ItuMarket& m) {
    m.validate();
    const std::size_t X = m.workers(), Y = m.firms();
    FlowProblem prob;
    Network& net = prob.network;
    for (std::size_t x = 0; x < X; ++x) net.nodes.push_back(idx("x", x));
    for (std::size_t y = 0; y < Y; ++y) net.nodes.push_back(idx("y", y));
    if (m.with_singles) net.nodes.push_back("0");
    for (std::size_t x = 0; x < X; ++x)
        for (std::size_t y = 0; y < Y; ++y) net.arcs.push_back({x, X + y, m.maps[x][y].connection()});
    if (m.with_singles) {
        const std::size_t o = X + Y;
        for (std::size_t x = 0; x < X; ++x) net.arcs.push_back({x, o, ConnectionFunction::additive(Rat(0))});
        for (std::size_t y = 0; y < Y; ++y) net.arcs.push_back({o, X + y, ConnectionFunction::additive(Rat(0))});
    }
    for (std::size_t x = 0; x < X; ++x) prob.q.push_back(-m.n[x]);
    for (std::size_t y = 0; y < Y; ++y) prob.q.push_back(m.m[y]);
    if (m.with_singles) prob.q.push_back(sum_of(m.n) - sum_of(m.m));
    return prob;
}

Matching flow_to_matching(const ItuMarket& m, const FlowOutcome& out) {
    const std::size_t X = m.workers(), Y = m.firms();
    const FlowProblem prob = itu_to_flow(m);
    if (out.mu.size() != prob.network.arcs.size() || out.p.size() != prob.network.size())
        throw InputError("outcome does not match the market's network");
    Matching r;
    r.mu.assign(X, std::vector<Rat>(Y));
    r.w.assign(X, std::vector<std::optional<Rat>>(Y));
    r.mu_x0.assign(X, Rat(0));
    r.mu_0y.assign(Y, Rat(0));
    for (std::size_t x = 0; x < X; ++x)
        for (std::size_t y = 0; y < Y; ++y) {
            const Rat& f = out.mu[x * Y + y];
            r.mu[x][y] = f;
            if (f.sign() <= 0) continue;
            const TransferMap& t = m.maps[x][y];
            Rat lo = t.V_inv(-out.p[X + y]);
            Rat hi = t.U_inv(out.p[x]);
            if (hi < lo)
                throw InputError("empty wage interval on matched pair " + idx("x", x) + idx("y", y));
            r.w[x][y] = (lo + hi) / Rat(2);
        }
    if (m.with_singles) {
        for (std::size_t x = 0; x < X; ++x) r.mu_x0[x] = out.mu[X * Y + x];
        for (std::size_t y = 0; y < Y; ++y) r.mu_0y[y] = out.mu[X * Y + X + y];
    }
    return r;
}

namespace {

// Some wage makes both sides strictly better off than (u, v).
bool blocks(const TransferMap& t, const Rat& u, const Rat& v) {
    if (t.kind != TransferMap::Kind::tabulated) return u < eval_connection(t.connection(), -v);
    const Rat lo = max(t.u_table.front().first, t.v_table.front().first);
    const Rat hi = min(t.u_table.back().first, t.v_table.back().first);
    std::set<Rat> cand{lo, hi};
    for (const auto& b : t.u_table)
        if (lo <= b.first && b.first <= hi) cand.insert(b.first);
    for (const auto& b : t.v_table)
        if (lo <= b.first && b.first <= hi) cand.insert(b.first);
    for (int side = 0; side < 2; ++side) {
        try {
            Rat w = side == 0 ? t.U_inv(u) : t.V_inv(v);
            if (lo <= w && w <= hi) cand.insert(w);
        } catch (const InputError&) {
        }
    }
    std::vector<Rat> c(cand.begin(), cand.end());
    for (std::size_t i = 0; i < c.size(); ++i) {
        std::vector<Rat> probe{c[i]};
        if (i + 1 < c.size()) probe.push_back((c[i] + c[i + 1]) / Rat(2));
        for (const auto& w : probe)
            if (u < t.U(w) && v < t.V(w)) return true;
    }
    return false;
}

}  // namespace

Verdict check_stability_itu(const ItuMarket& m, const Matching& match) {
    m.validate();
    const std::size_t X = m.workers(), Y = m.firms();
    Verdict v{.property = "itu_stability"};
    auto fail = [&](std::string note) {
        v.holds = false;
        v.witness = Witness{.note = std::move(note)};
        return v;
    };
    if (match.mu.size() != X || match.mu_x0.size() != X || match.mu_0y.size() != Y || match.w.size() != X)
        return fail("matching dimensions do not match the market");
    for (std::size_t x = 0; x < X; ++x) {
        if (match.mu[x].size() != Y || match.w[x].size() != Y) return fail("matching dimensions do not match the market");
        Rat s = match.mu_x0[x];
        if (s.sign() < 0 || (!m.with_singles && s.sign() != 0)) return fail("invalid reservation flow for " + idx("x", x));
        for (std::size_t y = 0; y < Y; ++y) {
            if (match.mu[x][y].sign() < 0) return fail("negative pair flow");
            s += match.mu[x][y];
        }
        if (s != m.n[x]) return fail("feasibility fails for worker type " + idx("x", x));
    }
    for (std::size_t y = 0; y < Y; ++y) {
        Rat s = match.mu_0y[y];
        if (s.sign() < 0 || (!m.with_singles && s.sign() != 0)) return fail("invalid reservation flow for " + idx("y", y));
        for (std::size_t x = 0; x < X; ++x) s += match.mu[x][y];
        if (s != m.m[y]) return fail("feasibility fails for firm type " + idx("y", y));
    }

    std::vector<std::optional<Rat>> u(X), w(Y);
    auto settle = [](std::optional<Rat>& slot, const Rat& val) {
        if (slot && *slot != val) return false;
        slot = val;
        return true;
    };
    for (std::size_t x = 0; x < X; ++x)
        if (match.mu_x0[x].sign() > 0) u[x] = Rat(0);
    for (std::size_t y = 0; y < Y; ++y)
        if (match.mu_0y[y].sign() > 0) w[y] = Rat(0);
    for (std::size_t x = 0; x < X; ++x)
        for (std::size_t y = 0; y < Y; ++y) {
            if (match.mu[x][y].sign() == 0) continue;
            if (!match.w[x][y]) return fail("matched pair " + idx("x", x) + idx("y", y) + " has no wage");
            const Rat& wage = *match.w[x][y];
            if (!settle(u[x], m.maps[x][y].U(wage)))
                return fail("worker type " + idx("x", x) + " is not indifferent across its matches");
            if (!settle(w[y], m.maps[x][y].V(wage)))
                return fail("firm type " + idx("y", y) + " is not indifferent across its matches");
        }
    if (m.with_singles) {
        for (std::size_t x = 0; x < X; ++x)
            if (u[x]->sign() < 0) return fail("worker type " + idx("x", x) + " is below its reservation utility");
        for (std::size_t y = 0; y < Y; ++y)
            if (w[y]->sign() < 0) return fail("firm type " + idx("y", y) + " is below its reservation utility");
    }
    for (std::size_t x = 0; x < X; ++x)
        for (std::size_t y = 0; y < Y; ++y)
            if (blocks(m.maps[x][y], *u[x], *w[y])) {
                v.holds = false;
                v.witness = Witness{.coordinate = x, .subset = std::vector<std::size_t>{x, y},
                                    .note = "blocking pair " + idx("x", x) + idx("y", y)};
                return v;
            }
    return v;
}

Rat total_surplus_tu(const ItuMarket& m, const Matching& match) {
    Rat s;
    for (std::size_t x = 0; x < m.workers(); ++x)
        for (std::size_t y = 0; y < m.firms(); ++y) {
            const TransferMap& t = m.maps[x][y];
            if (t.kind != TransferMap::Kind::tu) throw InputError("total surplus needs transferable utility");
            s += match.mu[x][y] * (t.alpha + t.gamma);
        }
    return s;
}

namespace {

std::size_t itu_anchor(const ItuMarket& m) { return m.with_singles ? m.workers() + m.firms() : 0; }

void shift_prices(std::vector<Rat>& p, std::size_t anchor) {
    const Rat base = p[anchor];
    for (auto& x : p) x -= base;
}

}  // namespace

ItuSolution solve_itu(const ItuMarket& m) {
    FlowProblem prob = itu_to_flow(m);
    const std::size_t anchor = itu_anchor(m);
    ItuSolution s;
    if (m.transferable()) {
        s.outcome = solve_additive(prob);
        shift_prices(s.outcome.p, anchor);
    } else {
        auto r = solve_general(prob, GeneralOptions{.anchor = anchor});
        if (!r.outcome) throw Inconclusive(r.report);
        s.outcome = *r.outcome;
    }
    s.matching = flow_to_matching(m, s.outcome);
    for (std::size_t x = 0; x < m.workers(); ++x) s.u.push_back(s.outcome.p[x]);
    for (std::size_t y = 0; y < m.firms(); ++y) s.v.push_back(-s.outcome.p[m.workers() + y]);
    return s;
}

std::vector<FlowOutcome> itu_equilibrium_vertices(const ItuMarket& m, std::size_t max_solutions) {
    FlowProblem prob = itu_to_flow(m);
    auto r = solve_general(prob, GeneralOptions{.anchor = itu_anchor(m), .enumerate_all = true,
                                                .max_solutions = max_solutions});
    if (r.all.empty()) throw Inconclusive(r.report);
    return r.all;
}

// ---------------------------------------------------------------------------
// NTU markets

void NtuMarket::validate() const {
    const std::size_t X = alpha.size(), Y = gamma0.size();
    if (X == 0 || Y == 0) throw InputError("market needs men and women");
    if (gamma.size() != X || alpha0.size() != X) throw InputError("utility tables must cover every man");
    for (std::size_t x = 0; x < X; ++x)
        if (alpha[x].size() != Y || gamma[x].size() != Y) throw InputError("utility tables must cover every woman");
    for (std::size_t x = 0; x < X; ++x) {
        std::set<Rat> seen{alpha0[x]};
        for (std::size_t y = 0; y < Y; ++y)
            if (!seen.insert(alpha[x][y]).second)
                throw InputError("strict preferences violated: man " + idx("x", x) + " has tied options");
    }
    for (std::size_t y = 0; y < Y; ++y) {
        std::set<Rat> seen{gamma0[y]};
        for (std::size_t x = 0; x < X; ++x)
            if (!seen.insert(gamma[x][y]).second)
                throw InputError("strict preferences violated: woman " + idx("y", y) + " has tied options");
    }
}

std::optional<std::size_t> ntu_choice(const NtuMarket& m, std::size_t x, const Point& v) {
    std::optional<std::size_t> best;
    const Rat* top = &m.alpha0[x];
    for (std::size_t y = 0; y < m.women(); ++y)
        if (v[y] <= m.gamma[x][y] && *top < m.alpha[x][y]) {
            best = y;
            top = &m.alpha[x][y];
        }
    return best;
}

std::vector<long> ntu_excess_supply(const NtuMarket& m, const Point& v) {
    m.validate();
    if (v.size() != m.women()) throw InputError("payoff vector must cover every woman");
    std::vector<long> q(m.women(), 1);
    for (std::size_t x = 0; x < m.men(); ++x)
        if (auto y = ntu_choice(m, x, v)) --q[*y];
    for (std::size_t y = 0; y < m.women(); ++y)
        if (v[y] <= m.gamma0[y]) --q[y];
    return q;
}

namespace {

Matching empty_matching(std::size_t X, std::size_t Y) {
    Matching r;
    r.mu.assign(X, std::vector<Rat>(Y));
    r.w.assign(X, std::vector<std::optional<Rat>>(Y));
    r.mu_x0.assign(X, Rat(0));
    r.mu_0y.assign(Y, Rat(0));
    return r;
}

}  // namespace

Matching ntu_reconstruct(const NtuMarket& m, const Point& v) {
    Matching r = empty_matching(m.men(), m.women());
    for (std::size_t x = 0; x < m.men(); ++x) {
        if (auto y = ntu_choice(m, x, v))
            r.mu[x][*y] = Rat(1);
        else
            r.mu_x0[x] = Rat(1);
    }
    for (std::size_t y = 0; y < m.women(); ++y)
        if (v[y] <= m.gamma0[y]) r.mu_0y[y] = Rat(1);
    return r;
}

Verdict check_feasibility_ntu(const NtuMarket& m, const Matching& match) {
    Verdict v{.property = "ntu_feasibility"};
    auto fail = [&](std::string note) {
        v.holds = false;
        v.witness = Witness{.note = std::move(note)};
        return v;
    };
    const std::size_t X = m.men(), Y = m.women();
    if (match.mu.size() != X || match.mu_x0.size() != X || match.mu_0y.size() != Y)
        return fail("matching dimensions do not match the market");
    auto binary = [](const Rat& r) { return r == Rat(0) || r == Rat(1); };
    for (std::size_t x = 0; x < X; ++x) {
        if (match.mu[x].size() != Y) return fail("matching dimensions do not match the market");
        Rat s = match.mu_x0[x];
        if (!binary(s)) return fail("flows must be 0 or 1");
        for (std::size_t y = 0; y < Y; ++y) {
            if (!binary(match.mu[x][y])) return fail("flows must be 0 or 1");
            s += match.mu[x][y];
        }
        if (s != Rat(1)) return fail("man " + idx("x", x) + " does not have exactly one partner or single status");
    }
    for (std::size_t y = 0; y < Y; ++y) {
        Rat s = match.mu_0y[y];
        if (!binary(s)) return fail("flows must be 0 or 1");
        for (std::size_t x = 0; x < X; ++x) s += match.mu[x][y];
        if (s != Rat(1)) return fail("woman " + idx("y", y) + " does not have exactly one partner or single status");
    }
    return v;
}

Point ntu_payoffs_u(const NtuMarket& m, const Matching& match) {
    Point u(m.men());
    for (std::size_t x = 0; x < m.men(); ++x) {
        u[x] = match.mu_x0[x] * m.alpha0[x];
        for (std::size_t y = 0; y < m.women(); ++y) u[x] += match.mu[x][y] * m.alpha[x][y];
    }
    return u;
}

Point ntu_payoffs_v(const NtuMarket& m, const Matching& match) {
    Point v(m.women());
    for (std::size_t y = 0; y < m.women(); ++y) {
        v[y] = match.mu_0y[y] * m.gamma0[y];
        for (std::size_t x = 0; x < m.men(); ++x) v[y] += match.mu[x][y] * m.gamma[x][y];
    }
    return v;
}

Verdict check_stability_ntu(const NtuMarket& m, const Matching& match) {
    m.validate();
    Verdict v = check_feasibility_ntu(m, match);
    v.property = "ntu_stability";
    if (!v.holds) return v;
    const Point u = ntu_payoffs_u(m, match), w = ntu_payoffs_v(m, match);
    for (std::size_t x = 0; x < m.men(); ++x)
        if (u[x] < m.alpha0[x]) {
            v.holds = false;
            v.witness = Witness{.note = "man " + idx("x", x) + " prefers being single"};
            return v;
        }
    for (std::size_t y = 0; y < m.women(); ++y)
        if (w[y] < m.gamma0[y]) {
            v.holds = false;
            v.witness = Witness{.note = "woman " + idx("y", y) + " prefers being single"};
            return v;
        }
    for (std::size_t x = 0; x < m.men(); ++x)
        for (std::size_t y = 0; y < m.women(); ++y)
            if (u[x] < m.alpha[x][y] && w[y] < m.gamma[x][y]) {
                v.holds = false;
                v.witness = Witness{.subset = std::vector<std::size_t>{x, y},
                                    .note = "blocking pair " + idx("x", x) + idx("y", y)};
                return v;
            }
    return v;
}

std::vector<std::vector<Rat>> ntu_levels(const NtuMarket& m) {
    m.validate();
    std::vector<std::vector<Rat>> lv(m.women());
    for (std::size_t y = 0; y < m.women(); ++y) {
        std::set<Rat> s{m.gamma0[y]};
        for (std::size_t x = 0; x < m.men(); ++x) s.insert(m.gamma[x][y]);
        lv[y].assign(s.begin(), s.end());
    }
    return lv;
}

std::vector<Point> ntu_candidate_grid(const NtuMarket& m) { return product_grid(ntu_levels(m)); }

std::vector<NtuOutcome> ntu_solve(const NtuMarket& m) {
    std::vector<NtuOutcome> out;
    for (const auto& v : ntu_candidate_grid(m)) {
        auto q = ntu_excess_supply(m, v);
        if (std::any_of(q.begin(), q.end(), [](long z) { return z != 0; })) continue;
        NtuOutcome o{v, ntu_reconstruct(m, v)};
        o.stable = check_stability_ntu(m, o.match).holds;
        out.push_back(std::move(o));
    }
    return out;
}

Matching gale_shapley(const NtuMarket& m, Side proposing) {
    m.validate();
    const bool men = proposing == Side::men;
    const std::size_t P = men ? m.men() : m.women(), R = men ? m.women() : m.men();
    // Utilities seen from the proposing side (a) and the receiving side (b).
    auto a = [&](std::size_t i, std::size_t j) -> const Rat& { return men ? m.alpha[i][j] : m.gamma[j][i]; };
    auto b = [&](std::size_t i, std::size_t j) -> const Rat& { return men ? m.gamma[i][j] : m.alpha[j][i]; };
    auto a0 = [&](std::size_t i) -> const Rat& { return men ? m.alpha0[i] : m.gamma0[i]; };
    auto b0 = [&](std::size_t j) -> const Rat& { return men ? m.gamma0[j] : m.alpha0[j]; };

    std::vector<std::vector<std::size_t>> prefs(P);
    for (std::size_t i = 0; i < P; ++i) {
        for (std::size_t j = 0; j < R; ++j)
            if (a0(i) < a(i, j)) prefs[i].push_back(j);
        std::sort(prefs[i].begin(), prefs[i].end(), [&](std::size_t j, std::size_t k) { return a(i, k) < a(i, j); });
    }
    std::vector<std::size_t> next(P, 0);
    std::vector<std::optional<std::size_t>> held(R);
    std::vector<std::size_t> free;
    for (std::size_t i = P; i-- > 0;) free.push_back(i);
    while (!free.empty()) {
        const std::size_t i = free.back();
        free.pop_back();
        if (next[i] >= prefs[i].size()) continue;
        const std::size_t j = prefs[i][next[i]++];
        if (!(b0(j) < b(i, j))) {
            free.push_back(i);
        } else if (!held[j]) {
            held[j] = i;
        } else if (b(*held[j], j) < b(i, j)) {
            free.push_back(*held[j]);
            held[j] = i;
        } else {
            free.push_back(i);
        }
    }
    Matching r = empty_matching(m.men(), m.women());
    std::vector<char> p_matched(P, 0);
    for (std::size_t j = 0; j < R; ++j) {
        if (!held[j]) continue;
        p_matched[*held[j]] = 1;
        const std::size_t x = men ? *held[j] : j, y = men ? j : *held[j];
        r.mu[x][y] = Rat(1);
    }
    for (std::size_t x = 0; x < m.men(); ++x) {
        Rat s;
        for (std::size_t y = 0; y < m.women(); ++y) s += r.mu[x][y];
        r.mu_x0[x] = Rat(1) - s;
    }
    for (std::size_t y = 0; y < m.women(); ++y) {
        Rat s;
        for (std::size_t x = 0; x < m.men(); ++x) s += r.mu[x][y];
        r.mu_0y[y] = Rat(1) - s;
    }
    return r;
}

FiniteCorrespondence ntu_tabulate(const NtuMarket& m, const std::vector<Point>& grid) {
    return tabulate(m.women(), grid, [&](const Point& v) {
        auto q = ntu_excess_supply(m, v);
        Point p(q.size());
        for (std::size_t y = 0; y < q.size(); ++y) p[y] = Rat(q[y]);
        return p;
    });
}

Verdict ntu_m0_check(const NtuMarket& m, const std::vector<Point>& grid) {
    auto Q = ntu_tabulate(m, grid);
    require_sublattice(Q);
    Verdict v{.property = "ntu_m0"};
    auto wgs = check_substitutes(Q, Substitutes::wgs_function);
    auto mto = check_monotonicity(Q, Monotonicity::monotone_total_output);
    auto label = classify(Q).label;
    const bool label_ok = label == Label::m0_function || label == Label::m_function;
    v.holds = wgs.holds && mto.holds && label_ok;
    v.note = "wgs_function=" + std::string(wgs.holds ? "pass" : "fail") +
             " monotone_total_output=" + (mto.holds ? "pass" : "fail") + " label=" + to_string(label);
    if (!wgs.holds)
        v.witness = wgs.witness;
    else if (!mto.holds)
        v.witness = mto.witness;
    return v;
}

LatticeReport ntu_lattice_report(const NtuMarket& m, const std::vector<Point>& stable_v) {
    auto member = [&](const Point& v) {
        auto q = ntu_excess_supply(m, v);
        if (std::any_of(q.begin(), q.end(), [](long z) { return z != 0; })) return false;
        Matching mu = ntu_reconstruct(m, v);
        return check_stability_ntu(m, mu).holds && ntu_payoffs_v(m, mu) == v;
    };
    return lattice_closure(stable_v, member, "stable_payoff_lattice");
}

// ---------------------------------------------------------------------------
// hedonic markets

void HedonicMarket::validate() const {
    if (n.empty() || m.empty() || qualities == 0) throw InputError("market needs producers, consumers and qualities");
    require_positive(n, "producer counts");
    require_positive(m, "consumer counts");
    if (pi.size() != n.size() || s.size() != m.size()) throw InputError("profit and surplus maps must cover every type");
    for (const auto& row : pi) {
        if (row.size() != qualities) throw InputError("profit maps must cover every quality");
        for (const auto& [a, b] : row)
            if (a.sign() <= 0) throw InputError("profit must increase strictly in the price");
    }
    for (const auto& row : s) {
        if (row.size() != qualities) throw InputError("surplus maps must cover every quality");
        for (const auto& [d, e] : row)
            if (e.sign() <= 0) throw InputError("surplus must decrease strictly in the price");
    }
}

Rat HedonicMarket::profit(std::size_t x, std::size_t w, const Rat& p) const { return pi[x][w].first * p + pi[x][w].second; }
Rat HedonicMarket::surplus(std::size_t y, std::size_t w, const Rat& p) const { return s[y][w].first - s[y][w].second * p; }

FlowProblem hedonic_to_flow(const HedonicMarket& m) {
    m.validate();
    const std::size_t X = m.n.size(), W = m.qualities, Y = m.m.size(), o = X + W + Y;
    FlowProblem prob;
    Network& net = prob.network;
    for (std::size_t x = 0; x < X; ++x) net.nodes.push_back(idx("x", x));
    for (std::size_t w = 0; w < W; ++w) net.nodes.push_back(idx("w", w));
    for (std::size_t y = 0; y < Y; ++y) net.nodes.push_back(idx("y", y));
    net.nodes.push_back("0");
    auto affine = [](const Rat& a, const Rat& b) {
        return a == Rat(1) ? ConnectionFunction::additive(-b) : ConnectionFunction::affine(a, b);
    };
    for (std::size_t x = 0; x < X; ++x) {
        for (std::size_t w = 0; w < W; ++w) net.arcs.push_back({x, X + w, affine(m.pi[x][w].first, m.pi[x][w].second)});
        net.arcs.push_back({x, o, ConnectionFunction::additive(Rat(0))});
    }
    for (std::size_t w = 0; w < W; ++w)
        for (std::size_t y = 0; y < Y; ++y) {
            // s^{-1}(-p_y) = (d + p_y) / e
            const auto& [d, e] = m.s[y][w];
            net.arcs.push_back({X + w, X + W + y, affine(Rat(1) / e, d / e)});
        }
    for (std::size_t y = 0; y < Y; ++y) net.arcs.push_back({o, X + W + y, ConnectionFunction::additive(Rat(0))});
    for (std::size_t x = 0; x < X; ++x) prob.q.push_back(-m.n[x]);
    for (std::size_t w = 0; w < W; ++w) prob.q.push_back(Rat(0));
    for (std::size_t y = 0; y < Y; ++y) prob.q.push_back(m.m[y]);
    prob.q.push_back(sum_of(m.n) - sum_of(m.m));
    return prob;
}

namespace {

std::pair<std::vector<Rat>, std::vector<Rat>> indirect_utilities(const HedonicMarket& m, const std::vector<Rat>& price) {
    std::vector<Rat> u(m.n.size()), v(m.m.size());
    for (std::size_t x = 0; x < u.size(); ++x)
        for (std::size_t w = 0; w < m.qualities; ++w) u[x] = max(u[x], m.profit(x, w, price[w]));
    for (std::size_t y = 0; y < v.size(); ++y)
        for (std::size_t w = 0; w < m.qualities; ++w) v[y] = max(v[y], m.surplus(y, w, price[w]));
    return {u, v};
}

}  // namespace

HedonicOutcome hedonic_from_flow(const HedonicMarket& m, const FlowOutcome& out) {
    const std::size_t X = m.n.size(), W = m.qualities, Y = m.m.size();
    const FlowProblem prob = hedonic_to_flow(m);
    if (out.mu.size() != prob.network.arcs.size() || out.p.size() != prob.network.size())
        throw InputError("outcome does not match the market's network");
    HedonicOutcome h;
    h.price.assign(out.p.begin() + static_cast<long>(X), out.p.begin() + static_cast<long>(X + W));
    h.alloc.mu_xw.assign(X, std::vector<Rat>(W));
    h.alloc.mu_x0.assign(X, Rat(0));
    h.alloc.mu_wy.assign(W, std::vector<Rat>(Y));
    h.alloc.mu_0y.assign(Y, Rat(0));
    std::size_t a = 0;
    for (std::size_t x = 0; x < X; ++x) {
        for (std::size_t w = 0; w < W; ++w) h.alloc.mu_xw[x][w] = out.mu[a++];
        h.alloc.mu_x0[x] = out.mu[a++];
    }
    for (std::size_t w = 0; w < W; ++w)
        for (std::size_t y = 0; y < Y; ++y) h.alloc.mu_wy[w][y] = out.mu[a++];
    for (std::size_t y = 0; y < Y; ++y) h.alloc.mu_0y[y] = out.mu[a++];
    std::tie(h.u, h.v) = indirect_utilities(m, h.price);
    return h;
}

std::vector<Rat> hedonic_node_prices(const HedonicMarket& m, const HedonicOutcome& h) {
    std::vector<Rat> p(h.u);
    p.insert(p.end(), h.price.begin(), h.price.end());
    for (const auto& x : h.v) p.push_back(-x);
    p.push_back(Rat(0));
    (void)m;
    return p;
}

Verdict verify_hedonic(const HedonicMarket& m, const std::vector<Rat>& price, const HedonicAllocation& alloc,
                       const Rat& eps) {
    m.validate();
    const std::size_t X = m.n.size(), W = m.qualities, Y = m.m.size();
    Verdict v{.property = "hedonic_equilibrium"};
    std::vector<std::string> bad;
    if (price.size() != W || alloc.mu_xw.size() != X || alloc.mu_x0.size() != X || alloc.mu_wy.size() != W ||
        alloc.mu_0y.size() != Y)
        throw InputError("hedonic outcome dimensions do not match the market");
    auto [u, vv] = indirect_utilities(m, price);
    auto close = [&](const Rat& a, const Rat& b) { return abs(a - b) <= eps; };
    auto positive = [&](const Rat& f) { return f.sign() > 0; };
    for (std::size_t x = 0; x < X; ++x) {
        Rat s = alloc.mu_x0[x];
        for (std::size_t w = 0; w < W; ++w) s += alloc.mu_xw[x][w];
        if (!close(s, m.n[x])) bad.push_back("producer feasibility fails for " + idx("x", x));
        if (positive(alloc.mu_x0[x]) && !close(u[x], Rat(0))) bad.push_back("inactive producer " + idx("x", x) + " earns a positive profit elsewhere");
        for (std::size_t w = 0; w < W; ++w) {
            if (alloc.mu_xw[x][w].sign() < 0) bad.push_back("negative production flow");
            if (positive(alloc.mu_xw[x][w]) && !close(u[x], m.profit(x, w, price[w])))
                bad.push_back("producer " + idx("x", x) + " supplies a suboptimal quality " + idx("w", w));
        }
    }
    for (std::size_t y = 0; y < Y; ++y) {
        Rat s = alloc.mu_0y[y];
        for (std::size_t w = 0; w < W; ++w) s += alloc.mu_wy[w][y];
        if (!close(s, m.m[y])) bad.push_back("consumer feasibility fails for " + idx("y", y));
        if (positive(alloc.mu_0y[y]) && !close(vv[y], Rat(0))) bad.push_back("inactive consumer " + idx("y", y) + " has a positive surplus elsewhere");
        for (std::size_t w = 0; w < W; ++w) {
            if (alloc.mu_wy[w][y].sign() < 0) bad.push_back("negative consumption flow");
            if (positive(alloc.mu_wy[w][y]) && !close(vv[y], m.surplus(y, w, price[w])))
                bad.push_back("consumer " + idx("y", y) + " buys a suboptimal quality " + idx("w", w));
        }
    }
    for (std::size_t w = 0; w < W; ++w) {
        Rat q;
        for (std::size_t x = 0; x < X; ++x) q += alloc.mu_xw[x][w];
        for (std::size_t y = 0; y < Y; ++y) q -= alloc.mu_wy[w][y];
        if (!close(q, Rat(0))) bad.push_back("market for quality " + idx("w", w) + " does not balance");
    }
    v.holds = bad.empty();
    if (!v.holds) v.witness = Witness{.p = Point(price), .note = bad.front()};
    return v;
}

HedonicSolution hedonic_solve(const HedonicMarket& m, bool enumerate_all, std::size_t max_solutions) {
    FlowProblem prob = hedonic_to_flow(m);
    const std::size_t anchor = prob.network.size() - 1;
    HedonicSolution s;
    bool additive = std::all_of(prob.network.arcs.begin(), prob.network.arcs.end(),
                                [](const Arc& a) { return a.g.is_additive(); });
    if (additive && !enumerate_all) {
        FlowOutcome out = solve_additive(prob);
        shift_prices(out.p, anchor);
        s.outcome = hedonic_from_flow(m, out);
        s.vertices.push_back(out);
        s.report = "solved as a min-cost flow";
        return s;
    }
    auto r = solve_general(prob, GeneralOptions{.anchor = anchor, .enumerate_all = enumerate_all,
                                                .max_solutions = max_solutions});
    s.report = r.report;
    if (r.outcome) s.outcome = hedonic_from_flow(m, *r.outcome);
    s.vertices = enumerate_all ? r.all : std::vector<FlowOutcome>(r.outcome ? 1 : 0, r.outcome.value_or(FlowOutcome{}));
    return s;
}

LatticeReport equilibrium_lattice_report(const FlowProblem& prob, const std::vector<Point>& prices) {
    return lattice_closure(prices, [&](const Point& p) { return in_equilibrium_set(prob, p.coords()).has_value(); },
                           "equilibrium_lattice");
}

}  // namespace equistat
