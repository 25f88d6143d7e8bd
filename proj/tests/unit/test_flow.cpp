#include "helpers.hpp"

#include "equistat/fixtures.hpp"
#include "equistat/flow.hpp"
#include "equistat/io.hpp"
#include "equistat/oracles.hpp"

#include <doctest.h>

using namespace equistat;
using namespace equistat::test;

namespace {

Network nodes(std::initializer_list<const char*> names) {
    Network n;
    for (const char* s : names) n.nodes.push_back(s);
    return n;
}

std::vector<Rat> rats(std::initializer_list<long> v) {
    std::vector<Rat> out;
    for (long x : v) out.emplace_back(x);
    return out;
}

}  // namespace

TEST_CASE("incidence examples") {
    auto one = nodes({"a", "b"});
    one.arcs.push_back({0, 1, ConnectionFunction::additive(Rat(0))});
    CHECK(incidence(one) == std::vector<std::vector<int>>{{-1, 1}});

    auto tri = nodes({"a", "b", "c"});
    tri.arcs = {{0, 1, ConnectionFunction::additive(Rat(1))},
                {1, 2, ConnectionFunction::additive(Rat(1))},
                {2, 0, ConnectionFunction::additive(Rat(1))}};
    for (const auto& row : incidence(tri)) CHECK(row[0] + row[1] + row[2] == 0);
    CHECK(divergence(tri, rats({1, 1, 0})) == rats({-1, 0, 1}));
}

TEST_CASE("connection function evaluation") {
    CHECK(eval_connection(ConnectionFunction::additive(Rat(2)), Rat(5)) == Rat(3));
    auto id = ConnectionFunction::affine(Rat(1), Rat(0));
    CHECK(eval_connection(id, Rat(7, 3)) == Rat(7, 3));
    CHECK(inverse_eval(id, Rat(7, 3)) == Rat(7, 3));
    auto tab = ConnectionFunction::tabulated({{Rat(0), Rat(0)}, {Rat(2), Rat(1)}});
    CHECK(eval_connection(tab, Rat(1)) == Rat(1, 2));
    CHECK(inverse_eval(tab, Rat(1, 2)) == Rat(1));
    CHECK_THROWS_AS(eval_connection(tab, Rat(3)), InputError);
    CHECK_THROWS_AS(ConnectionFunction::affine(Rat(0), Rat(1)).validate(), InputError);
}

TEST_CASE("verify_equilibrium examples") {
    FlowProblem prob{nodes({"x", "y"}), rats({-1, 1})};
    prob.network.arcs.push_back({0, 1, ConnectionFunction::additive(Rat(1))});
    FlowOutcome tight{rats({-1, 1}), rats({1}), rats({0, 1})};
    auto chk = verify_equilibrium(prob, tight);
    CHECK(chk.verdict.holds);
    CHECK(chk.balance_residual == Rat(0));
    CHECK(chk.rent_residual == Rat(0));
    CHECK(chk.slackness_residual == Rat(0));

    FlowProblem zero{prob.network, rats({0, 0})};
    CHECK(verify_equilibrium(zero, FlowOutcome{rats({0, 0}), rats({0}), rats({5, 3})}).verdict.holds);
    CHECK_FALSE(verify_equilibrium(zero, FlowOutcome{rats({0, 0}), rats({0}), rats({0, 3})}).verdict.holds);
}

TEST_CASE("solve_additive examples") {
    FlowProblem one{nodes({"x", "y"}), rats({-1, 1})};
    one.network.arcs.push_back({0, 1, ConnectionFunction::additive(Rat(1))});
    auto o = solve_additive(one);
    CHECK(o.mu == rats({1}));
    CHECK(o.p[1] - o.p[0] == Rat(1));

    FlowProblem two{nodes({"s", "a", "b", "t"}), rats({-1, 0, 0, 1})};
    two.network.arcs = {{0, 1, ConnectionFunction::additive(Rat(0))},
                        {1, 3, ConnectionFunction::additive(Rat(1))},
                        {0, 2, ConnectionFunction::additive(Rat(0))},
                        {2, 3, ConnectionFunction::additive(Rat(3))}};
    auto t = solve_additive(two);
    CHECK(t.mu == rats({1, 1, 0, 0}));
    CHECK(t.p[3] - t.p[0] == Rat(1));
    CHECK(flow_cost(two.network, t.mu) == Rat(1));

    FlowProblem bad{nodes({"x", "y"}), rats({1, -1})};
    bad.network.arcs.push_back({0, 1, ConnectionFunction::additive(Rat(1))});
    CHECK_THROWS_AS(solve_additive(bad), InfeasibleError);
}

TEST_CASE("solve_latest_departure examples") {
    auto chain = nodes({"o", "m", "d"});
    chain.arcs = {{0, 1, ConnectionFunction::additive(Rat(1))}, {1, 2, ConnectionFunction::additive(Rat(2))}};
    auto ld = solve_latest_departure(chain, 2, Rat(10), 0);
    CHECK(*ld.p[1] == Rat(8));
    CHECK(*ld.p[0] == Rat(7));
    CHECK(ld.path == std::vector<std::size_t>{0, 1});
}

TEST_CASE("sample_equilibrium_correspondence examples") {
    auto net = nodes({"x", "y"});
    net.arcs.push_back({0, 1, ConnectionFunction::additive(Rat(1))});
    auto s = sample_equilibrium_correspondence(net, {pt({0, 0}), pt({0, 1})}, 1);
    CHECK(s.Q.image_of(pt({0, 0})) == std::vector<Point>{pt({0, 0})});
    CHECK(s.Q.image_of(pt({0, 1})) == std::vector<Point>{pt({-1, 1}), pt({0, 0})});
    auto fig = to_correspondence(fixture("figure2_style_flow"), std::nullopt);
    CHECK(check_substitutes(fig, Substitutes::ugs).holds);
}

TEST_CASE("solve_general examples") {
    auto inst = fixture("figure2_style_flow");
    auto prob = network_from_json(inst.payload);
    auto res = solve_general(prob);
    REQUIRE(res.outcome);
    CHECK(verify_equilibrium(prob, *res.outcome).verdict.holds);

    FlowProblem zero{prob.network, rats({0, 0, 0})};
    auto z = solve_general(zero);
    REQUIRE(z.outcome);
    for (const auto& m : z.outcome->mu) CHECK(m == Rat(0));
    CHECK(verify_equilibrium(zero, *z.outcome).verdict.holds);
}

TEST_CASE("property: solvers agree with oracles on additive problems") {
    gen::Rng rng(401);
    int feasible = 0;
    for (int i = 0; i < 60; ++i) {
        auto prob = gen::random_additive_problem(rng, static_cast<std::size_t>(gen::uniform(rng, 3, 5)),
                                                 static_cast<std::size_t>(gen::uniform(rng, 3, 6)));
        auto best = oracle::min_cost_integer_flow(prob);
        std::optional<FlowOutcome> out;
        try {
            out = solve_additive(prob);
        } catch (const InfeasibleError&) {
        }
        CHECK(best.has_value() == out.has_value());
        if (!out || !best) continue;
        ++feasible;
        CHECK(flow_cost(prob.network, out->mu) == *best);
        CHECK(verify_equilibrium(prob, *out).verdict.holds);
        // Complementary slackness: carried arcs are tight.
        for (std::size_t a = 0; a < prob.network.arcs.size(); ++a) {
            const auto& arc = prob.network.arcs[a];
            if (out->mu[a] > Rat(0)) CHECK(out->p[arc.from] == eval_connection(arc.g, out->p[arc.to]));
        }
        // The general solver's outcome lies in the same equilibrium set.
        auto g = solve_general(prob);
        if (g.outcome) CHECK(in_equilibrium_set(prob, g.outcome->p).has_value());
        CHECK(in_equilibrium_set(prob, out->p).has_value());
        // Scaling by lambda preserves the verdict.
        for (const Rat lambda : {Rat(0), Rat(1, 3), Rat(5)}) {
            FlowProblem sp{prob.network, {}};
            FlowOutcome so = *out;
            for (const auto& q : prob.q) sp.q.push_back(lambda * q);
            for (auto& q : so.q) q *= lambda;
            for (auto& m : so.mu) m *= lambda;
            CHECK(verify_equilibrium(sp, so).verdict.holds);
        }
    }
    CHECK(feasible >= 20);
}

TEST_CASE("property: latest departure matches shortest paths") {
    gen::Rng rng(402);
    for (int i = 0; i < 40; ++i) {
        const std::size_t n = static_cast<std::size_t>(gen::uniform(rng, 3, 6));
        Network net;
        std::vector<oracle::IntArc> ia;
        for (std::size_t z = 0; z < n; ++z) net.nodes.push_back("n" + std::to_string(z));
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t y = 0; y < n; ++y)
                if (x != y && gen::uniform(rng, 0, 2) == 0) {
                    const long c = gen::uniform(rng, 1, 9);
                    net.arcs.push_back({x, y, ConnectionFunction::additive(Rat(c))});
                    ia.push_back({x, y, c});
                }
        auto dist = oracle::shortest_to(n, ia, n - 1);
        auto ld = solve_latest_departure(net, n - 1, Rat(50));
        for (std::size_t z = 0; z < n; ++z) {
            CHECK(dist[z].has_value() == ld.p[z].has_value());
            if (dist[z] && ld.p[z]) CHECK(*ld.p[z] == Rat(50) - Rat(static_cast<long>(*dist[z])));
        }
    }
}

TEST_CASE("property: sampled flow correspondences are m0") {
    gen::Rng rng(403);
    int sampled = 0;
    for (int i = 0; i < 40; ++i) {
        const std::size_t n = static_cast<std::size_t>(gen::uniform(rng, 2, 3));
        auto net = gen::random_network(rng, n, static_cast<std::size_t>(gen::uniform(rng, 1, 4)), 0, 3);
        try {
            auto s = sample_equilibrium_correspondence(net, grid(n, 0, 3), 2);
            ++sampled;
            CHECK(check_substitutes(s.Q, Substitutes::ugs).holds);
            CHECK(check_inverse(s.Q, InverseProperty::totally_isotone).holds);
            CHECK(check_inverse(s.Q, InverseProperty::sublattice_fibers).holds);
            CHECK(check_monotonicity(s.Q, Monotonicity::constant_aggregate_output).holds);
        } catch (const InputError&) {
        }
    }
    CHECK(sampled >= 20);
}
