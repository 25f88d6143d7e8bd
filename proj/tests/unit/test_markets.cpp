#include "helpers.hpp"

#include "equistat/fixtures.hpp"
#include "equistat/io.hpp"
#include "equistat/markets.hpp"
#include "equistat/oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>

using namespace equistat;
using namespace equistat::test;

namespace {

NtuMarket ntu(std::vector<std::vector<Rat>> alpha, std::vector<std::vector<Rat>> gamma, std::vector<Rat> alpha0,
              std::vector<Rat> gamma0) {
    NtuMarket m{std::move(alpha), std::move(gamma), std::move(alpha0), std::move(gamma0)};
    m.validate();
    return m;
}

ItuMarket tu(std::vector<std::vector<long>> a, std::vector<std::vector<long>> c, bool singles) {
    ItuMarket m;
    m.with_singles = singles;
    m.n.assign(a.size(), Rat(1));
    m.m.assign(a[0].size(), Rat(1));
    m.maps.assign(a.size(), {});
    for (std::size_t x = 0; x < a.size(); ++x)
        for (std::size_t y = 0; y < a[0].size(); ++y) m.maps[x].push_back(TransferMap::tu(Rat(a[x][y]), Rat(c[x][y])));
    return m;
}

std::set<Point> stable_payoffs(const NtuMarket& m) {
    std::set<Point> s;
    for (const auto& mu : oracle::ntu_stable_matchings(m)) s.insert(Point(oracle::ntu_women_payoffs(m, mu)));
    return s;
}

}  // namespace

TEST_CASE("itu_to_flow examples") {
    auto m = tu({{2}}, {{3}}, false);
    auto prob = itu_to_flow(m);
    CHECK(prob.network.size() == 2);
    CHECK(prob.q == std::vector<Rat>{Rat(-1), Rat(1)});
    REQUIRE(prob.network.arcs.size() == 1);
    const auto& g = prob.network.arcs[0].g;
    CHECK(g.is_additive());
    CHECK(g.additive_cost() == Rat(-5));
    CHECK(eval_connection(g, Rat(-4)) == Rat(1));

    auto two = itu_to_flow(tu({{1, 2}, {3, 4}}, {{0, 0}, {0, 0}}, true));
    CHECK(two.network.size() == 5);
    std::set<std::pair<std::size_t, std::size_t>> arcs;
    for (const auto& a : two.network.arcs) arcs.insert({a.from, a.to});
    // Pairs, worker singles into node 0, firm singles out of node 0.
    CHECK(arcs == std::set<std::pair<std::size_t, std::size_t>>{{0, 2}, {0, 3}, {1, 2}, {1, 3}, {0, 4}, {1, 4}, {4, 2}, {4, 3}});
}

TEST_CASE("flow_to_matching and itu stability examples") {
    auto one = tu({{0}}, {{0}}, false);
    auto prob = itu_to_flow(one);
    FlowOutcome out{prob.q, {Rat(1)}, {Rat(2), Rat(2)}};
    REQUIRE(verify_equilibrium(prob, out).verdict.holds);
    auto mt = flow_to_matching(one, out);
    REQUIRE(mt.w[0][0]);
    // u = alpha + w = p_x and v = gamma - w = -p_y.
    CHECK(*mt.w[0][0] == Rat(2));
    CHECK(check_stability_itu(one, mt).holds);

    auto assort = tu({{4, 0}, {0, 4}}, {{0, 0}, {0, 0}}, false);
    auto sol = solve_itu(assort);
    CHECK(check_stability_itu(assort, sol.matching).holds);
    CHECK(total_surplus_tu(assort, sol.matching) == Rat(8));
    Matching anti = sol.matching;
    anti.mu = {{Rat(0), Rat(1)}, {Rat(1), Rat(0)}};
    anti.w = {{std::nullopt, Rat(0)}, {Rat(0), std::nullopt}};
    CHECK_FALSE(check_stability_itu(assort, anti).holds);

    auto neg = tu({{-1, -2}, {-3, -1}}, {{0, -1}, {0, 0}}, true);
    Matching empty;
    empty.mu.assign(2, std::vector<Rat>(2));
    empty.w.assign(2, std::vector<std::optional<Rat>>(2));
    empty.mu_x0 = {Rat(1), Rat(1)};
    empty.mu_0y = {Rat(1), Rat(1)};
    CHECK(check_stability_itu(neg, empty).holds);
}

TEST_CASE("ntu_excess_supply examples") {
    auto m = ntu({{Rat(2), Rat(1)}, {Rat(1), Rat(2)}}, {{Rat(1), Rat(2)}, {Rat(2), Rat(1)}}, {Rat(0), Rat(0)},
                 {Rat(0), Rat(0)});
    CHECK(ntu_excess_supply(m, pt({9, 9})) == std::vector<long>{1, 1});
    auto one = ntu({{Rat(1)}}, {{Rat(1)}}, {Rat(0)}, {Rat(0)});
    CHECK(ntu_excess_supply(one, pt({1})) == std::vector<long>{0});
}

TEST_CASE("ntu_solve and gale_shapley examples") {
    auto one = ntu({{Rat(1)}}, {{Rat(1)}}, {Rat(0)}, {Rat(0)});
    auto s1 = ntu_solve(one);
    REQUIRE(s1.size() == 1);
    CHECK(s1[0].stable);
    CHECK(s1[0].match.mu[0][0] == Rat(1));
    CHECK(gale_shapley(one, Side::men).mu[0][0] == Rat(1));

    auto opp = ntu_from_json(fixture("demo_ntu_2x2").payload);
    std::set<Point> zeros;
    for (const auto& o : ntu_solve(opp)) {
        CHECK(o.stable);
        zeros.insert(o.v);
    }
    CHECK(zeros.size() == 2);
    CHECK(zeros == stable_payoffs(opp));
    const Point men = ntu_payoffs_v(opp, gale_shapley(opp, Side::men));
    const Point women = ntu_payoffs_v(opp, gale_shapley(opp, Side::women));
    CHECK(men == *zeros.begin());
    CHECK(men == pt({1, 1}));
    CHECK(women == pt({2, 2}));
    CHECK(ntu_payoffs_u(opp, gale_shapley(opp, Side::men)) == pt({2, 2}));
}

TEST_CASE("all-unacceptable market leaves everyone single") {
    auto m = ntu({{Rat(0), Rat(1)}, {Rat(1), Rat(0)}}, {{Rat(1), Rat(0)}, {Rat(0), Rat(1)}}, {Rat(2), Rat(2)},
                 {Rat(2), Rat(2)});
    for (auto side : {Side::men, Side::women}) {
        auto g = gale_shapley(m, side);
        CHECK(g.mu_x0 == std::vector<Rat>{Rat(1), Rat(1)});
        CHECK(g.mu_0y == std::vector<Rat>{Rat(1), Rat(1)});
        CHECK(check_stability_ntu(m, g).holds);
    }
}

TEST_CASE("check_stability_ntu examples") {
    auto m = ntu({{Rat(2), Rat(1)}, {Rat(1), Rat(2)}}, {{Rat(2), Rat(1)}, {Rat(1), Rat(2)}}, {Rat(0), Rat(0)},
                 {Rat(0), Rat(0)});
    REQUIRE(stable_payoffs(m).size() == 1);
    auto g = gale_shapley(m, Side::men);
    CHECK(check_stability_ntu(m, g).holds);
    Matching swapped = g;
    swapped.mu = {{Rat(0), Rat(1)}, {Rat(1), Rat(0)}};
    CHECK_FALSE(check_stability_ntu(m, swapped).holds);
    Matching single = g;
    single.mu = {{Rat(0), Rat(0)}, {Rat(0), Rat(0)}};
    single.mu_x0 = {Rat(1), Rat(1)};
    single.mu_0y = {Rat(1), Rat(1)};
    CHECK_FALSE(check_stability_ntu(m, single).holds);
}

TEST_CASE("ntu_m0_check examples") {
    auto one = ntu({{Rat(1)}}, {{Rat(1)}}, {Rat(0)}, {Rat(0)});
    CHECK(ntu_m0_check(one, ntu_candidate_grid(one)).holds);
    gen::Rng rng(501);
    for (int i = 0; i < 10; ++i) {
        auto m = gen::random_ntu(rng, 3, 3);
        const auto G = ntu_candidate_grid(m);
        const auto levels = ntu_levels(m);
        CHECK(ntu_m0_check(m, G).holds);
        // Total excess supply is nondecreasing in each requirement.
        for (const auto& v : G)
            for (std::size_t y = 0; y < m.women(); ++y) {
                const auto& lv = levels[y];
                auto it = std::upper_bound(lv.begin(), lv.end(), v[y]);
                if (it == lv.end()) continue;
                Point w = v;
                w[y] = *it;
                auto a = ntu_excess_supply(m, v), b = ntu_excess_supply(m, w);
                CHECK(std::accumulate(a.begin(), a.end(), 0L) <= std::accumulate(b.begin(), b.end(), 0L));
            }
    }
}

TEST_CASE("hedonic examples") {
    auto m = hedonic_from_json(fixture("demo_hedonic_1x1x1").payload);
    auto prob = hedonic_to_flow(m);
    CHECK(prob.network.size() == 4);
    CHECK(prob.network.arcs.size() == 4);
    for (const auto& a : prob.network.arcs) CHECK(a.g.is_additive());
    auto sol = solve_additive(prob);
    auto h = hedonic_from_flow(m, sol);
    CHECK(verify_hedonic(m, h.price, h.alloc).holds);
    // Prices in [1, 3] support the trade; above 3 the consumer prefers to stay out.
    auto up = h.price;
    up[0] = Rat(2);
    CHECK(verify_hedonic(m, up, h.alloc).holds);
    up[0] = Rat(7, 2);
    CHECK_FALSE(verify_hedonic(m, up, h.alloc).holds);

    HedonicMarket idle;
    idle.n = {Rat(1)};
    idle.m = {Rat(2)};
    idle.qualities = 1;
    idle.pi = {{{Rat(1), Rat(-5)}}};
    idle.s = {{{Rat(1), Rat(1)}}};
    HedonicAllocation none{{{Rat(0)}}, {Rat(1)}, {{Rat(0)}}, {Rat(2)}};
    CHECK(verify_hedonic(idle, {Rat(2)}, none).holds);
    auto imbalance = hedonic_to_flow(idle);
    CHECK(imbalance.q.back() == Rat(-1));
}

TEST_CASE("property: stable sets, reconstructions and extremes") {
    gen::Rng rng(502);
    for (int i = 0; i < 40; ++i) {
        auto m = gen::random_ntu(rng, static_cast<std::size_t>(gen::uniform(rng, 1, 3)),
                                 static_cast<std::size_t>(gen::uniform(rng, 1, 3)));
        const auto brute = stable_payoffs(m);
        for (const auto& v : brute) CHECK(ntu_excess_supply(m, v) == std::vector<long>(m.women(), 0));
        std::set<Point> realized;
        for (const auto& o : ntu_solve(m)) {
            CHECK(o.stable);
            CHECK(check_feasibility_ntu(m, o.match).holds);
            if (ntu_payoffs_v(m, o.match) == o.v) realized.insert(o.v);
        }
        CHECK(realized == brute);
        CHECK(ntu_payoffs_v(m, gale_shapley(m, Side::men)) == *brute.begin());
        CHECK(ntu_lattice_report(m, {brute.begin(), brute.end()}).closure.holds);
    }
}

TEST_CASE("property: itu round trip and tu surplus") {
    gen::Rng rng(503);
    for (int i = 0; i < 40; ++i) {
        const bool singles = i % 2 == 0;
        const std::size_t X = static_cast<std::size_t>(gen::uniform(rng, 1, 3));
        const std::size_t Y = singles ? static_cast<std::size_t>(gen::uniform(rng, 1, 3)) : X;
        auto m = gen::random_tu(rng, X, Y, singles);
        auto sol = solve_itu(m);
        CHECK(verify_equilibrium(itu_to_flow(m), sol.outcome).verdict.holds);
        CHECK(check_stability_itu(m, sol.matching).holds);
        CHECK(total_surplus_tu(m, sol.matching) == oracle::tu_assignment_optimum(m));
    }
}

TEST_CASE("property: hedonic reduction soundness") {
    gen::Rng rng(504);
    for (int i = 0; i < 25; ++i) {
        auto m = gen::random_hedonic(rng, static_cast<std::size_t>(gen::uniform(rng, 1, 2)),
                                     static_cast<std::size_t>(gen::uniform(rng, 1, 2)),
                                     static_cast<std::size_t>(gen::uniform(rng, 1, 2)));
        auto sol = hedonic_solve(m, true, 32);
        REQUIRE(sol.outcome);
        CHECK(verify_hedonic(m, sol.outcome->price, sol.outcome->alloc).holds);
        const auto prob = hedonic_to_flow(m);
        for (const auto& v : sol.vertices) {
            CHECK(verify_equilibrium(prob, v).verdict.holds);
            auto h = hedonic_from_flow(m, v);
            CHECK(verify_hedonic(m, h.price, h.alloc).holds);
        }
    }
}
