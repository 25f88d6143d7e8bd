#include "equistat/oracles.hpp"

#include "equistat/error.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <queue>

namespace equistat::oracle {

std::optional<Rat> min_cost_integer_flow(const FlowProblem& prob) {
    const Network& net = prob.network;
    const std::size_t A = net.arcs.size(), n = net.size();
    long supply = 0;
    std::vector<long> q(n);
    for (std::size_t z = 0; z < n; ++z) {
        if (!prob.q[z].is_integer()) throw InputError("oracle needs integer flows");
        q[z] = prob.q[z].raw().get_num().get_si();
        if (q[z] > 0) supply += q[z];
    }
    for (const auto& a : net.arcs)
        if (!a.g.is_additive()) throw InputError("oracle needs additive arcs");
    // Last arc index touching each node: its balance is final after that arc.
    std::vector<long> last(n, -1);
    for (std::size_t a = 0; a < A; ++a) last[net.arcs[a].from] = last[net.arcs[a].to] = static_cast<long>(a);
    for (std::size_t z = 0; z < n; ++z)
        if (last[z] < 0 && q[z] != 0) return std::nullopt;

    std::vector<long> bal(n, 0), mu(A, 0);
    std::optional<Rat> best;
    std::function<void(std::size_t)> rec = [&](std::size_t a) {
        if (a == A) {
            Rat cost;
            for (std::size_t k = 0; k < A; ++k) cost += Rat(mu[k]) * net.arcs[k].g.additive_cost();
            if (!best || cost < *best) best = cost;
            return;
        }
        const auto& arc = net.arcs[a];
        for (long f = 0; f <= supply; ++f) {
            mu[a] = f;
            bal[arc.from] -= f;
            bal[arc.to] += f;
            const bool ok = (last[arc.from] != static_cast<long>(a) || bal[arc.from] == q[arc.from]) &&
                            (last[arc.to] != static_cast<long>(a) || bal[arc.to] == q[arc.to]);
            if (ok) rec(a + 1);
            bal[arc.from] += f;
            bal[arc.to] -= f;
        }
        mu[a] = 0;
    };
    rec(0);
    return best;
}

std::vector<std::optional<long long>> shortest_to(std::size_t n, const std::vector<IntArc>& arcs, std::size_t dest) {
    std::vector<std::vector<std::pair<std::size_t, long long>>> rev(n);
    for (const auto& a : arcs) rev[a.to].push_back({a.from, a.cost});
    std::vector<std::optional<long long>> d(n);
    using Item = std::pair<long long, std::size_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    d[dest] = 0;
    pq.push({0, dest});
    while (!pq.empty()) {
        auto [dist, v] = pq.top();
        pq.pop();
        if (dist != *d[v]) continue;
        for (auto [u, c] : rev[v])
            if (!d[u] || dist + c < *d[u]) {
                d[u] = dist + c;
                pq.push({*d[u], u});
            }
    }
    return d;
}

namespace {

double interp(const std::vector<std::pair<double, double>>& t, double x) {
    if (x < t.front().first || x > t.back().first) return std::numeric_limits<double>::quiet_NaN();
    for (std::size_t i = 1; i < t.size(); ++i)
        if (x <= t[i].first) {
            const auto [x0, y0] = t[i - 1];
            const auto [x1, y1] = t[i];
            return y0 + (y1 - y0) * (x - x0) / (x1 - x0);
        }
    return t.back().second;
}

}  // namespace

std::optional<double> latest_departure_by_paths(std::size_t n, const std::vector<TableArc>& arcs, std::size_t origin,
                                                std::size_t dest, double p_d) {
    // Walk paths backwards from the destination composing the arc maps.
    std::optional<double> best;
    std::vector<bool> seen(n, false);
    std::function<void(std::size_t, double)> rec = [&](std::size_t v, double p) {
        if (v == origin) {
            if (!best || p > *best) best = p;
            return;
        }
        seen[v] = true;
        for (const auto& a : arcs)
            if (a.to == v && !seen[a.from]) {
                const double px = interp(a.table, p);
                if (px == px) rec(a.from, px);
            }
        seen[v] = false;
    };
    rec(dest, p_d);
    return best;
}

namespace {

bool ntu_stable(const NtuMarket& m, const std::vector<int>& partner) {
    const std::size_t X = m.men(), Y = m.women();
    std::vector<int> husband(Y, -1);
    for (std::size_t x = 0; x < X; ++x)
        if (partner[x] >= 0) husband[partner[x]] = static_cast<int>(x);
    auto u = [&](std::size_t x) { return partner[x] < 0 ? m.alpha0[x] : m.alpha[x][partner[x]]; };
    auto v = [&](std::size_t y) { return husband[y] < 0 ? m.gamma0[y] : m.gamma[husband[y]][y]; };
    for (std::size_t x = 0; x < X; ++x)
        if (u(x) < m.alpha0[x]) return false;
    for (std::size_t y = 0; y < Y; ++y)
        if (v(y) < m.gamma0[y]) return false;
    for (std::size_t x = 0; x < X; ++x)
        for (std::size_t y = 0; y < Y; ++y)
            if (partner[x] != static_cast<int>(y) && m.alpha[x][y] > u(x) && m.gamma[x][y] > v(y)) return false;
    return true;
}

}  // namespace

std::vector<std::vector<int>> ntu_stable_matchings(const NtuMarket& m) {
    const std::size_t X = m.men(), Y = m.women();
    std::vector<std::vector<int>> out;
    std::vector<int> partner(X, -1);
    std::vector<bool> taken(Y, false);
    std::function<void(std::size_t)> rec = [&](std::size_t x) {
        if (x == X) {
            if (ntu_stable(m, partner)) out.push_back(partner);
            return;
        }
        partner[x] = -1;
        rec(x + 1);
        for (std::size_t y = 0; y < Y; ++y)
            if (!taken[y]) {
                taken[y] = true;
                partner[x] = static_cast<int>(y);
                rec(x + 1);
                taken[y] = false;
            }
        partner[x] = -1;
    };
    rec(0);
    return out;
}

std::vector<Rat> ntu_women_payoffs(const NtuMarket& m, const std::vector<int>& partner) {
    std::vector<Rat> v = m.gamma0;
    for (std::size_t x = 0; x < m.men(); ++x)
        if (partner[x] >= 0) v[partner[x]] = m.gamma[x][partner[x]];
    return v;
}

Rat tu_assignment_optimum(const ItuMarket& m) {
    std::vector<std::size_t> W, F;
    auto expand = [](const std::vector<Rat>& counts, std::vector<std::size_t>& out) {
        for (std::size_t t = 0; t < counts.size(); ++t) {
            if (!counts[t].is_integer()) throw InputError("oracle needs integer counts");
            for (long k = 0; k < counts[t].raw().get_num().get_si(); ++k) out.push_back(t);
        }
    };
    expand(m.n, W);
    expand(m.m, F);
    if (F.size() > 16) throw InputError("oracle limited to 16 firms");
    for (const auto& row : m.maps)
        for (const auto& t : row)
            if (t.kind != TransferMap::Kind::tu) throw InputError("oracle needs TU maps");
    const std::size_t full = (std::size_t{1} << F.size()) - 1;
    // best[mask]: optimum for the workers processed so far having used firm set mask.
    std::map<std::size_t, Rat> cur{{0, Rat(0)}};
    for (std::size_t w : W) {
        std::map<std::size_t, Rat> next;
        auto relax = [&](std::size_t mask, const Rat& val) {
            auto it = next.find(mask);
            if (it == next.end() || it->second < val) next[mask] = val;
        };
        for (const auto& [mask, val] : cur) {
            if (m.with_singles) relax(mask, val);
            for (std::size_t f = 0; f < F.size(); ++f)
                if (!(mask >> f & 1)) relax(mask | std::size_t{1} << f, val + m.maps[w][F[f]].alpha + m.maps[w][F[f]].gamma);
        }
        cur = std::move(next);
    }
    std::optional<Rat> best;
    for (const auto& [mask, val] : cur)
        if ((m.with_singles || mask == full) && (!best || *best < val)) best = val;
    if (!best) throw InfeasibleError("no feasible assignment");
    return *best;
}

}  // namespace equistat::oracle
