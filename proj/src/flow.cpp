#include "equistat/flow.hpp"

#include "equistat/error.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace equistat {

// ---------------------------------------------------------------------------
// connection functions

ConnectionFunction ConnectionFunction::additive(Rat c) {
    ConnectionFunction g;
    g.kind = Kind::additive;
    g.c = std::move(c);
    return g;
}

ConnectionFunction ConnectionFunction::affine(Rat a, Rat b) {
    ConnectionFunction g;
    g.kind = Kind::affine;
    g.a = std::move(a);
    g.b = std::move(b);
    g.validate();
    return g;
}

ConnectionFunction ConnectionFunction::tabulated(std::vector<std::pair<Rat, Rat>> breakpoints) {
    ConnectionFunction g;
    g.kind = Kind::tabulated;
    g.table = std::move(breakpoints);
    g.validate();
    return g;
}

void ConnectionFunction::validate() const {
    switch (kind) {
        case Kind::additive: return;
        case Kind::affine:
            if (a.sign() <= 0) throw InputError("affine connection needs a positive slope");
            return;
        case Kind::tabulated:
            if (table.size() < 2) throw InputError("tabulated connection needs at least two breakpoints");
            for (std::size_t i = 1; i < table.size(); ++i)
                if (!(table[i - 1].first < table[i].first) || !(table[i - 1].second < table[i].second))
                    throw InputError("tabulated connection breakpoints must increase strictly in both coordinates");
            return;
    }
}

std::string to_string(ConnectionFunction::Kind k) {
    switch (k) {
        case ConnectionFunction::Kind::additive: return "additive";
        case ConnectionFunction::Kind::affine: return "affine";
        case ConnectionFunction::Kind::tabulated: return "tabulated";
    }
    return "?";
}

namespace {

// Piecewise-linear interpolation; coordinate `in` is the argument, `out` the value.
Rat interpolate(const std::vector<std::pair<Rat, Rat>>& t, const Rat& x, bool inverse) {
    auto in = [&](std::size_t i) -> const Rat& { return inverse ? t[i].second : t[i].first; };
    auto out = [&](std::size_t i) -> const Rat& { return inverse ? t[i].first : t[i].second; };
    if (x < in(0) || in(t.size() - 1) < x)
        throw InputError("tabulated connection queried at " + x.str() + " outside [" + in(0).str() + ", " +
                         in(t.size() - 1).str() + "]");
    std::size_t hi = 1;
    while (in(hi) < x) ++hi;
    const std::size_t lo = hi - 1;
    return out(lo) + (out(hi) - out(lo)) * (x - in(lo)) / (in(hi) - in(lo));
}

}  // namespace

Rat eval_connection(const ConnectionFunction& g, const Rat& p_y) {
    Rat v;
    switch (g.kind) {
        case ConnectionFunction::Kind::additive: v = p_y - g.c; break;
        case ConnectionFunction::Kind::affine: v = g.a * p_y + g.b; break;
        case ConnectionFunction::Kind::tabulated: v = interpolate(g.table, p_y, false); break;
    }
    if (g.strict_progress && !(v < p_y))
        throw InputError("connection makes no progress at " + p_y.str() + " (value " + v.str() + ")");
    return v;
}

Rat inverse_eval(const ConnectionFunction& g, const Rat& p_x) {
    switch (g.kind) {
        case ConnectionFunction::Kind::additive: return p_x + g.c;
        case ConnectionFunction::Kind::affine: return (p_x - g.b) / g.a;
        case ConnectionFunction::Kind::tabulated: return interpolate(g.table, p_x, true);
    }
    return p_x;
}

std::optional<std::pair<Rat, Rat>> connection_domain(const ConnectionFunction& g) {
    if (g.kind != ConnectionFunction::Kind::tabulated) return std::nullopt;
    return std::make_pair(g.table.front().first, g.table.back().first);
}

std::optional<std::pair<Rat, Rat>> connection_range(const ConnectionFunction& g) {
    if (g.kind != ConnectionFunction::Kind::tabulated) return std::nullopt;
    return std::make_pair(g.table.front().second, g.table.back().second);
}

// ---------------------------------------------------------------------------
// network

std::size_t Network::index_of(const std::string& name) const {
    auto it = std::find(nodes.begin(), nodes.end(), name);
    if (it == nodes.end()) throw InputError("unknown node '" + name + "'");
    return static_cast<std::size_t>(it - nodes.begin());
}

void Network::validate() const {
    if (nodes.empty()) throw InputError("network has no nodes");
    std::set<std::string> seen;
    for (const auto& n : nodes)
        if (!seen.insert(n).second) throw InputError("duplicate node '" + n + "'");
    std::set<std::pair<std::size_t, std::size_t>> pairs;
    for (const auto& a : arcs) {
        if (a.from >= nodes.size() || a.to >= nodes.size()) throw InputError("arc endpoint is not a node");
        if (a.from == a.to) throw InputError("self-loop at node '" + nodes[a.from] + "'");
        if (!pairs.insert({a.from, a.to}).second)
            throw InputError("duplicate arc " + nodes[a.from] + "->" + nodes[a.to]);
        a.g.validate();
    }
}

void FlowProblem::validate() const {
    network.validate();
    if (q.size() != network.size()) throw InputError("exiting flow vector must cover every node");
}

std::vector<std::vector<int>> incidence(const Network& net) {
    std::vector<std::vector<int>> m(net.arcs.size(), std::vector<int>(net.size(), 0));
    for (std::size_t a = 0; a < net.arcs.size(); ++a) {
        m[a][net.arcs[a].from] = -1;
        m[a][net.arcs[a].to] = 1;
    }
    return m;
}

std::vector<Rat> divergence(const Network& net, const std::vector<Rat>& mu) {
    if (mu.size() != net.arcs.size()) throw InputError("flow vector must cover every arc");
    std::vector<Rat> q(net.size());
    for (std::size_t a = 0; a < mu.size(); ++a) {
        q[net.arcs[a].from] -= mu[a];
        q[net.arcs[a].to] += mu[a];
    }
    return q;
}

Point to_point(const std::vector<Rat>& v) { return Point(v); }

namespace {

std::string arc_name(const Network& net, std::size_t a) {
    return net.nodes[net.arcs[a].from] + "->" + net.nodes[net.arcs[a].to];
}

void require_balanced(const std::vector<Rat>& q) {
    Rat s;
    for (const auto& x : q) s += x;
    if (s.sign() != 0) throw InputError("exiting flows must sum to zero (sum is " + s.str() + ")");
}

}  // namespace

EquilibriumCheck verify_equilibrium(const FlowProblem& prob, const FlowOutcome& out, const Rat& eps) {
    prob.validate();
    const Network& net = prob.network;
    if (eps.sign() < 0) throw InputError("tolerance must be nonnegative");
    if (out.p.size() != net.size() || out.q.size() != net.size() || out.mu.size() != net.arcs.size())
        throw InputError("outcome dimensions do not match the network");
    for (std::size_t a = 0; a < out.mu.size(); ++a)
        if (out.mu[a].sign() < 0) throw InputError("negative flow on arc " + arc_name(net, a));

    EquilibriumCheck r;
    r.verdict.property = "equilibrium_flow";
    auto div = divergence(net, out.mu);
    for (std::size_t z = 0; z < net.size(); ++z) {
        Rat res = abs(div[z] - out.q[z]);
        r.balance_residual = max(r.balance_residual, res);
        if (eps < res) r.violations.push_back("mass balance at " + net.nodes[z] + " off by " + res.str());
        Rat qres = abs(out.q[z] - prob.q[z]);
        if (eps < qres) r.violations.push_back("exiting flow at " + net.nodes[z] + " differs from the problem");
    }
    for (std::size_t a = 0; a < net.arcs.size(); ++a) {
        const Arc& arc = net.arcs[a];
        Rat rent = eval_connection(arc.g, out.p[arc.to]) - out.p[arc.from];
        if (rent.sign() > 0) r.rent_residual = max(r.rent_residual, rent);
        if (eps < rent) r.violations.push_back("positive rent " + rent.str() + " on " + arc_name(net, a));
        Rat slack = out.mu[a] * -rent;
        r.slackness_residual = max(r.slackness_residual, slack);
        if (eps < slack) r.violations.push_back("flow on slack arc " + arc_name(net, a));
    }
    r.verdict.holds = r.violations.empty();
    if (!r.verdict.holds) r.verdict.witness = Witness{.p = to_point(out.p), .q = to_point(out.q), .note = r.violations.front()};
    return r;
}

// ---------------------------------------------------------------------------
// additive solver

Rat flow_cost(const Network& net, const std::vector<Rat>& mu) {
    Rat s;
    for (std::size_t a = 0; a < net.arcs.size(); ++a) s += mu[a] * net.arcs[a].g.additive_cost();
    return s;
}

namespace {

struct Residual {
    struct Edge {
        std::size_t to, rev;
        Rat cap;
        bool infinite;
        Rat cost;
        long arc;  // -1 for auxiliary edges
        Rat flow;
    };
    std::vector<std::vector<Edge>> g;

    explicit Residual(std::size_t n) : g(n) {}

    void add(std::size_t u, std::size_t v, Rat cap, bool inf, Rat cost, long arc) {
        g[u].push_back({v, g[v].size(), cap, inf, cost, arc, Rat(0)});
        g[v].push_back({u, g[u].size() - 1, Rat(0), false, -cost, -1, Rat(0)});
    }
    bool open(const Edge& e) const { return e.infinite || e.cap.sign() > 0; }
    void push(Edge& e, const Rat& f) {
        if (!e.infinite) e.cap -= f;
        e.flow += f;
        Edge& r = g[e.to][e.rev];
        r.cap += f;
        r.flow -= f;
    }
};

}  // namespace

FlowOutcome solve_additive(const FlowProblem& prob) {
    prob.validate();
    const Network& net = prob.network;
    for (const auto& a : net.arcs)
        if (!a.g.is_additive()) throw InputError("additive solver needs slope-one connections");
    require_balanced(prob.q);
    const std::size_t n = net.size(), S = n, T = n + 1, V = n + 2;
    Residual R(V);
    for (std::size_t a = 0; a < net.arcs.size(); ++a)
        R.add(net.arcs[a].from, net.arcs[a].to, Rat(0), true, net.arcs[a].g.additive_cost(), static_cast<long>(a));
    Rat demand;
    for (std::size_t z = 0; z < n; ++z) {
        if (prob.q[z].sign() < 0) R.add(S, z, -prob.q[z], false, Rat(0), -1);
        if (prob.q[z].sign() > 0) {
            R.add(z, T, prob.q[z], false, Rat(0), -1);
            demand += prob.q[z];
        }
    }

    // Bellman-Ford from a virtual root at distance zero to every vertex.
    std::vector<Rat> pi(V);
    for (std::size_t round = 0;; ++round) {
        bool changed = false;
        for (std::size_t u = 0; u < V; ++u)
            for (const auto& e : R.g[u])
                if (R.open(e) && pi[u] + e.cost < pi[e.to]) {
                    pi[e.to] = pi[u] + e.cost;
                    changed = true;
                }
        if (!changed) break;
        if (round >= V) throw InputError("network has a negative-cost cycle");
    }

    Rat shipped;
    while (shipped < demand) {
        std::vector<std::optional<Rat>> dist(V);
        std::vector<std::pair<std::size_t, std::size_t>> prev(V, {V, 0});
        std::vector<char> done(V, 0);
        dist[S] = Rat(0);
        for (;;) {
            std::size_t u = V;
            for (std::size_t v = 0; v < V; ++v)
                if (!done[v] && dist[v] && (u == V || *dist[v] < *dist[u])) u = v;
            if (u == V) break;
            done[u] = 1;
            for (std::size_t k = 0; k < R.g[u].size(); ++k) {
                const auto& e = R.g[u][k];
                if (!R.open(e) || done[e.to]) continue;
                Rat nd = *dist[u] + e.cost + pi[u] - pi[e.to];
                if (!dist[e.to] || nd < *dist[e.to]) {
                    dist[e.to] = nd;
                    prev[e.to] = {u, k};
                }
            }
        }
        if (!dist[T]) throw InfeasibleError("no nonnegative flow satisfies the mass balance");
        const Rat D = *dist[T];
        for (std::size_t v = 0; v < V; ++v) pi[v] += dist[v] ? min(*dist[v], D) : D;

        std::optional<Rat> bottleneck;
        for (std::size_t v = T; v != S; v = prev[v].first) {
            const auto& e = R.g[prev[v].first][prev[v].second];
            if (!e.infinite && (!bottleneck || e.cap < *bottleneck)) bottleneck = e.cap;
        }
        Rat f = min(*bottleneck, demand - shipped);
        for (std::size_t v = T; v != S; v = prev[v].first) R.push(R.g[prev[v].first][prev[v].second], f);
        shipped += f;
    }

    FlowOutcome out;
    out.q = prob.q;
    out.mu.assign(net.arcs.size(), Rat(0));
    for (std::size_t u = 0; u < n; ++u)
        for (const auto& e : R.g[u])
            if (e.arc >= 0) out.mu[static_cast<std::size_t>(e.arc)] = e.flow;
    // Reduced costs are nonnegative, so p_y - p_x <= c on every arc with equality where flow runs.
    out.p.assign(pi.begin(), pi.begin() + static_cast<long>(n));
    return out;
}

// ---------------------------------------------------------------------------
// latest departure

LatestDeparture solve_latest_departure(const Network& net, std::size_t destination, const Rat& p_d,
                                       std::optional<std::size_t> origin) {
    net.validate();
    const std::size_t n = net.size();
    if (destination >= n || (origin && *origin >= n)) throw InputError("unknown node index");
    LatestDeparture r;
    r.p.assign(n, std::nullopt);
    r.via.assign(n, std::nullopt);
    r.p[destination] = p_d;
    bool changed = true;
    for (std::size_t round = 0; changed; ++round) {
        if (round > n) throw InputError("latest-departure iteration does not settle; some connection makes no progress");
        changed = false;
        for (std::size_t a = 0; a < net.arcs.size(); ++a) {
            const Arc& arc = net.arcs[a];
            if (arc.from == destination || !r.p[arc.to]) continue;
            const Rat& py = *r.p[arc.to];
            Rat v = eval_connection(arc.g, py);
            if (!(v < py))
                throw InputError("connection on " + arc_name(net, a) + " makes no progress at " + py.str());
            if (!r.p[arc.from] || *r.p[arc.from] < v) {
                r.p[arc.from] = v;
                r.via[arc.from] = a;
                changed = true;
            }
        }
    }
    if (origin) {
        if (!r.p[*origin]) throw InfeasibleError("no path from " + net.nodes[*origin] + " to " + net.nodes[destination]);
        for (std::size_t z = *origin; z != destination;) {
            if (r.path.size() > n) throw InputError("predecessor chain does not reach the destination");
            std::size_t a = *r.via[z];
            r.path.push_back(a);
            z = net.arcs[a].to;
        }
    }
    return r;
}

// ---------------------------------------------------------------------------
// tight arcs, max-flow feasibility and the sampler

std::optional<std::vector<std::size_t>> tight_arcs(const Network& net, const std::vector<Rat>& p) {
    if (p.size() != net.size()) throw InputError("price vector must cover every node");
    std::vector<std::size_t> t;
    for (std::size_t a = 0; a < net.arcs.size(); ++a) {
        const Arc& arc = net.arcs[a];
        Rat g;
        try {
            g = eval_connection(arc.g, p[arc.to]);
        } catch (const InputError&) {
            return std::nullopt;
        }
        if (p[arc.from] < g) return std::nullopt;
        if (p[arc.from] == g) t.push_back(a);
    }
    return t;
}

std::optional<std::vector<Rat>> feasible_flow(const Network& net, const std::vector<std::size_t>& arcs,
                                              const std::vector<Rat>& q) {
    if (q.size() != net.size()) throw InputError("exiting flow vector must cover every node");
    Rat total, balance;
    for (const auto& x : q) {
        balance += x;
        if (x.sign() > 0) total += x;
    }
    if (balance.sign() != 0) return std::nullopt;
    const std::size_t n = net.size(), S = n, T = n + 1, V = n + 2;
    Residual R(V);
    for (auto a : arcs) R.add(net.arcs[a].from, net.arcs[a].to, total, false, Rat(0), static_cast<long>(a));
    for (std::size_t z = 0; z < n; ++z) {
        if (q[z].sign() < 0) R.add(S, z, -q[z], false, Rat(0), -1);
        if (q[z].sign() > 0) R.add(z, T, q[z], false, Rat(0), -1);
    }
    Rat flow;
    while (flow < total) {
        std::vector<std::pair<std::size_t, std::size_t>> prev(V, {V, 0});
        std::deque<std::size_t> bfs{S};
        prev[S] = {S, 0};
        while (!bfs.empty() && prev[T].first == V) {
            std::size_t u = bfs.front();
            bfs.pop_front();
            for (std::size_t k = 0; k < R.g[u].size(); ++k) {
                const auto& e = R.g[u][k];
                if (R.open(e) && prev[e.to].first == V) {
                    prev[e.to] = {u, k};
                    bfs.push_back(e.to);
                }
            }
        }
        if (prev[T].first == V) return std::nullopt;
        Rat f = total - flow;
        for (std::size_t v = T; v != S; v = prev[v].first) f = min(f, R.g[prev[v].first][prev[v].second].cap);
        for (std::size_t v = T; v != S; v = prev[v].first) R.push(R.g[prev[v].first][prev[v].second], f);
        flow += f;
    }
    std::vector<Rat> mu(net.arcs.size());
    for (std::size_t u = 0; u < n; ++u)
        for (const auto& e : R.g[u])
            if (e.arc >= 0) mu[static_cast<std::size_t>(e.arc)] = e.flow;
    return mu;
}

std::optional<FlowOutcome> in_equilibrium_set(const FlowProblem& prob, const std::vector<Rat>& p) {
    prob.validate();
    auto t = tight_arcs(prob.network, p);
    if (!t) return std::nullopt;
    auto mu = feasible_flow(prob.network, *t, prob.q);
    if (!mu) return std::nullopt;
    return FlowOutcome{prob.q, std::move(*mu), p};
}

SampledCorrespondence sample_equilibrium_correspondence(const Network& net, const std::vector<Point>& grid,
                                                        unsigned cap) {
    net.validate();
    if (cap == 0) throw InputError("sampler cap must be positive");
    const std::size_t n = net.size();
    std::vector<FiniteCorrespondence::Entry> entries;
    std::vector<Point> filtered;
    for (const auto& p : grid) {
        if (p.size() != n) throw InputError("grid point " + p.str() + " does not match the node count");
        auto t = tight_arcs(net, p.coords());
        if (!t) {
            filtered.push_back(p);
            continue;
        }
        std::set<std::vector<long>> images;
        std::vector<unsigned> mu(t->size(), 0);
        std::vector<long> q(n, 0);
        for (;;) {
            images.insert(q);
            std::size_t k = 0;
            for (; k < mu.size(); ++k) {
                const Arc& arc = net.arcs[(*t)[k]];
                if (mu[k] < cap) {
                    ++mu[k];
                    --q[arc.from];
                    ++q[arc.to];
                    break;
                }
                q[arc.from] += mu[k];
                q[arc.to] -= mu[k];
                mu[k] = 0;
            }
            if (k == mu.size()) break;
        }
        std::vector<Point> img;
        img.reserve(images.size());
        for (const auto& v : images) {
            Point pt(n);
            for (std::size_t z = 0; z < n; ++z) pt[z] = Rat(v[z]);
            img.push_back(std::move(pt));
        }
        entries.push_back({p, std::move(img)});
    }
    if (entries.empty()) throw InputError("no grid price satisfies the no-positive-rent condition");
    return {FiniteCorrespondence(n, std::move(entries)), std::move(filtered)};
}

// ---------------------------------------------------------------------------
// general solver

namespace {

struct Incident {
    std::size_t arc;
    std::size_t other;
    bool outgoing;  // arc leaves the node
};

class TreeSearch {
public:
    TreeSearch(const FlowProblem& prob, const GeneralOptions& opts) : prob_(prob), net_(prob.network), opts_(opts) {
        const std::size_t n = net_.size();
        adj_.resize(n);
        for (std::size_t a = 0; a < net_.arcs.size(); ++a) {
            adj_[net_.arcs[a].from].push_back({a, net_.arcs[a].to, true});
            adj_[net_.arcs[a].to].push_back({a, net_.arcs[a].from, false});
        }
        price_.assign(n, std::nullopt);
        rejected_.assign(n, std::vector<char>(n, 0));
    }

    GeneralResult run() {
        const std::size_t anchor = opts_.anchor.value_or(0);
        if (anchor >= net_.size()) throw InputError("anchor is not a node");
        price_[anchor] = opts_.anchor_price;
        priced_ = 1;
        search();
        res_.budget_exhausted = stop_ && !found_enough();
        if (res_.outcome) {
            res_.report = "equilibrium found after " + std::to_string(res_.explored) + " search nodes";
        } else {
            res_.report = res_.budget_exhausted
                              ? "search budget of " + std::to_string(opts_.max_nodes) + " nodes exhausted"
                              : "no equilibrium spanned by tight trees from the anchor; inconclusive";
        }
        return std::move(res_);
    }

private:
    bool found_enough() const {
        return res_.outcome && (!opts_.enumerate_all || res_.all.size() >= opts_.max_solutions);
    }

    // Condition (ii) on every arc between v and already priced nodes.
    bool consistent(std::size_t v) const {
        for (const auto& inc : adj_[v]) {
            if (!price_[inc.other]) continue;
            const Arc& arc = net_.arcs[inc.arc];
            try {
                if (*price_[arc.from] < eval_connection(arc.g, *price_[arc.to])) return false;
            } catch (const InputError&) {
                return false;
            }
        }
        return true;
    }

    void finish() {
        std::vector<Rat> p(net_.size());
        for (std::size_t z = 0; z < p.size(); ++z) p[z] = *price_[z];
        if (!seen_.insert(p).second) return;
        auto out = in_equilibrium_set(prob_, p);
        if (!out) return;
        if (!res_.outcome) res_.outcome = *out;
        if (opts_.enumerate_all) res_.all.push_back(*out);
        if (found_enough()) stop_ = true;
    }

    void search() {
        if (stop_) return;
        if (++res_.explored > opts_.max_nodes) {
            stop_ = true;
            return;
        }
        const std::size_t n = net_.size();
        if (priced_ == n) {
            finish();
            return;
        }
        // Lowest unpriced node with a priced neighbour not yet rejected.
        std::size_t v = n;
        bool blocked = false;
        for (std::size_t z = 0; z < n && v == n; ++z) {
            if (price_[z]) continue;
            for (const auto& inc : adj_[z]) {
                if (!price_[inc.other]) continue;
                if (rejected_[z][inc.other]) {
                    blocked = true;
                } else {
                    v = z;
                    break;
                }
            }
        }
        if (v == n) {
            if (blocked) return;
            // A component without arcs to the priced set is seeded at zero.
            std::size_t z = 0;
            while (price_[z]) ++z;
            price_[z] = Rat(0);
            ++priced_;
            search();
            price_[z].reset();
            --priced_;
            return;
        }

        std::vector<Rat> tried;
        std::vector<std::size_t> newly;
        for (const auto& inc : adj_[v]) {
            if (!price_[inc.other] || rejected_[v][inc.other]) continue;
            if (std::find(newly.begin(), newly.end(), inc.other) == newly.end()) newly.push_back(inc.other);
            const Arc& arc = net_.arcs[inc.arc];
            Rat candidate;
            try {
                candidate = inc.outgoing ? eval_connection(arc.g, *price_[inc.other])
                                         : inverse_eval(arc.g, *price_[inc.other]);
            } catch (const InputError&) {
                continue;
            }
            if (std::find(tried.begin(), tried.end(), candidate) != tried.end()) continue;
            tried.push_back(candidate);
            price_[v] = candidate;
            ++priced_;
            if (consistent(v)) search();
            price_[v].reset();
            --priced_;
            if (stop_) return;
        }
        // Defer v: its tree parent is priced later.
        for (auto u : newly) rejected_[v][u] = 1;
        search();
        for (auto u : newly) rejected_[v][u] = 0;
    }

    const FlowProblem& prob_;
    const Network& net_;
    const GeneralOptions& opts_;
    std::vector<std::vector<Incident>> adj_;
    std::vector<std::optional<Rat>> price_;
    std::vector<std::vector<char>> rejected_;
    std::size_t priced_ = 0;
    bool stop_ = false;
    std::set<std::vector<Rat>> seen_;
    GeneralResult res_;
};

}  // namespace

GeneralResult solve_general(const FlowProblem& prob, const GeneralOptions& opts) {
    prob.validate();
    require_balanced(prob.q);
    return TreeSearch(prob, opts).run();
}

// ---------------------------------------------------------------------------
// lattice reports

LatticeReport lattice_closure(const std::vector<Point>& points, const std::function<bool(const Point&)>& member,
                              const std::string& property) {
    LatticeReport r;
    r.closure.property = property;
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t j = i + 1; j < points.size(); ++j) {
            ++r.pairs_checked;
            auto [m, J] = lattice_ops(points[i], points[j]);
            const bool mo = member(m), jo = member(J);
            if (mo && jo) continue;
            r.closure.holds = false;
            r.closure.witness = Witness{.p = points[i], .p_prime = points[j], .q_meet = m, .q_join = J,
                                        .note = !mo ? "meet fails re-verification" : "join fails re-verification"};
            return r;
        }
    return r;
}

Verdict strong_set_leq(const std::vector<Point>& A, const std::vector<Point>& B,
                       const std::function<bool(const Point&)>& in_A, const std::function<bool(const Point&)>& in_B) {
    Verdict v{.property = "strong_set_order"};
    for (const auto& a : A)
        for (const auto& b : B) {
            auto [m, J] = lattice_ops(a, b);
            const bool mo = in_A(m), jo = in_B(J);
            if (mo && jo) continue;
            v.holds = false;
            v.witness = Witness{.p = a, .p_prime = b, .q_meet = m, .q_join = J,
                                .note = !mo ? "meet leaves the lower set" : "join leaves the upper set"};
            return v;
        }
    return v;
}

}  // namespace equistat
