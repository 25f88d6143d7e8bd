#include "helpers.hpp"

#include "equistat/fixtures.hpp"

#include <doctest.h>

#include <cmath>
#include <functional>
#include <numeric>
#include <set>

using namespace equistat;
using namespace equistat::test;

namespace {

DiscreteProducer two_good(Rat c00, Rat c10, Rat c01, Rat c11) {
    return DiscreteProducer{2, {pt({0, 0}), pt({0, 1}), pt({1, 0}), pt({1, 1})}, {c00, c01, c10, c11}};
}

ObjectiveTable table_of(const std::vector<Point>& P, const std::vector<Point>& Qg,
                        const std::function<Rat(const Point&, const Point&)>& g) {
    ObjectiveTable t{P, Qg, {}};
    for (const auto& p : P)
        for (const auto& q : Qg) t.values.push_back(g(p, q));
    return t;
}

}  // namespace

TEST_CASE("argmax_correspondence examples") {
    DiscreteProducer line{1, {pt({0}), pt({1})}, {Rat(0), Rat(0)}};
    auto Q = argmax_correspondence(line, {pt({-1}), pt({1})});
    CHECK(Q.image_of(pt({-1})) == std::vector<Point>{pt({0})});
    CHECK(Q.image_of(pt({1})) == std::vector<Point>{pt({1})});

    DiscreteProducer simplex{3, {pt({1, 0, 0}), pt({0, 1, 0}), pt({0, 0, 1})}, {Rat(0), Rat(0), Rat(0)}};
    auto S = argmax_correspondence(simplex, grid(3, 0, 2));
    for (const auto& p : S.domain()) {
        const Rat top = std::max({p[0], p[1], p[2]});
        std::vector<Point> expect;
        for (const auto& e : simplex.quantities)
            if (dot(p, e) == top) expect.push_back(e);
        std::sort(expect.begin(), expect.end());
        CHECK(S.image_of(p) == expect);
    }

    auto sub = two_good(Rat(0), Rat(1), Rat(1), Rat(3));
    CHECK(check_substitutes(argmax_correspondence(sub, grid(2, 0, 3)), Substitutes::ugs).holds);
}

TEST_CASE("indirect_profit examples") {
    DiscreteProducer single{1, {pt({1})}, {Rat(0)}};
    auto f = indirect_profit(single, grid(1, -2, 2));
    for (const auto& p : f.grid) CHECK(f.at(p) == p[0]);
    DiscreteProducer simplex{2, {pt({1, 0}), pt({0, 1})}, {Rat(0), Rat(0)}};
    auto g = indirect_profit(simplex, grid(2, 0, 2));
    for (const auto& p : g.grid) CHECK(g.at(p) == max(p[0], p[1]));
}

TEST_CASE("check_submodular examples") {
    const auto G = grid(2, 0, 1);
    GridFunction mx{G, {}}, prod{G, {}};
    for (const auto& p : G) {
        mx.values.push_back(max(p[0], p[1]));
        prod.values.push_back(p[0] * p[1]);
    }
    CHECK(check_submodular(mx).holds);
    auto v = check_submodular(prod);
    CHECK_FALSE(v.holds);
    REQUIRE(v.witness);
    const std::set<Point> pair{*v.witness->p, *v.witness->p_prime};
    CHECK(pair == std::set<Point>{pt({1, 0}), pt({0, 1})});
}

TEST_CASE("spice_equivalence examples") {
    auto sub = spice_equivalence(two_good(Rat(0), Rat(1), Rat(1), Rat(3)), grid(2, 0, 3));
    CHECK(sub.submodular.holds);
    CHECK(sub.ugs.holds);
    CHECK(sub.agree);
    // Bundle discount: strictly supermodular cost makes the goods complements.
    auto sup = spice_equivalence(two_good(Rat(0), Rat(2), Rat(2), Rat(2)), grid(2, 0, 3));
    CHECK_FALSE(sup.submodular.holds);
    CHECK_FALSE(sup.ugs.holds);
    CHECK(sup.submodular.witness.has_value());
    CHECK(sup.ugs.witness.has_value());
    auto one = spice_equivalence(DiscreteProducer{2, {pt({1, 1})}, {Rat(0)}}, grid(2, 0, 2));
    CHECK(one.submodular.holds);
    CHECK(one.ugs.holds);
}

TEST_CASE("check_no_complementarities examples") {
    CHECK(check_no_complementarities(DiscreteProducer{2, {pt({1, 1})}, {Rat(0)}}, pt({1, 1})).holds);
    auto sub = two_good(Rat(0), Rat(1), Rat(1), Rat(3));
    for (const auto& p : grid(2, 0, 3)) CHECK(check_no_complementarities(sub, p).holds);
    auto comp = two_good(Rat(0), Rat(2), Rat(2), Rat(2));
    bool failed = false;
    for (const auto& p : grid(2, 0, 3)) {
        auto v = check_no_complementarities(comp, p);
        if (!v.holds) {
            failed = true;
            CHECK(v.witness.has_value());
        }
    }
    CHECK(failed);
}

TEST_CASE("single crossing examples") {
    const auto P = grid(2, 0, 2);
    auto dotp = check_single_crossing(table_of(P, P, [](const Point& p, const Point& q) { return dot(p, q); }));
    CHECK(dotp.single_crossing.holds);
    CHECK(dotp.argmax_nonreversing.holds);
    CHECK(dotp.consistent);
    auto flat = table_of(P, P, [](const Point&, const Point&) { return Rat(7); });
    auto fr = check_single_crossing(flat);
    CHECK(fr.single_crossing.holds);
    CHECK(argmax_table(flat).image(0).size() == P.size());
    CHECK(fr.argmax_nonreversing.holds);
    auto inst = fixture("a6_ugs_not_milgrom_shannon");
    auto inv = argmax_table(objective_table_from_json(inst.payload["objective_table"]));
    CHECK(check_monotonicity(inv, Monotonicity::nonreversing).holds);
}

TEST_CASE("logit examples") {
    LogitModel m;
    m.goods = 2;
    m.counts = {Rat(4)};
    m.slope = {{Rat(1), Rat(1)}};
    m.intercept = {{Rat(0), Rat(0)}};
    auto q = logit_supply(m, {0.0, 0.0});
    CHECK(q[0] == doctest::Approx(2.0));
    CHECK(q[1] == doctest::Approx(2.0));
}

TEST_CASE("property: indirect profit is the upper envelope") {
    gen::Rng rng(301);
    for (int i = 0; i < 60; ++i) {
        auto prod = gen::random_producer(rng, 2, 6);
        const auto G = grid(2, -1, 2);
        auto f = indirect_profit(prod, G);
        auto Q = argmax_correspondence(prod, G);
        for (const auto& p : G)
            for (std::size_t k = 0; k < prod.quantities.size(); ++k) {
                const Rat v = prod.profit(k, p);
                CHECK(f.at(p) >= v);
                CHECK((f.at(p) == v) == Q.contains(p, prod.quantities[k]));
            }
    }
}

TEST_CASE("property: single crossing implies nonreversing argmax") {
    gen::Rng rng(302);
    int sc = 0;
    for (int i = 0; i < 80; ++i) {
        const auto P = grid(1, 0, 3), Qg = grid(1, 0, 3);
        auto t = table_of(P, Qg, [&](const Point&, const Point&) { return Rat(gen::uniform(rng, 0, 3)); });
        if (i % 2) {
            // Increasing differences in (p, q).
            const Rat k(gen::uniform(rng, 0, 2), 2);
            t = table_of(P, Qg, [&](const Point& p, const Point& q) { return p[0] * q[0] - k * q[0] * q[0]; });
        }
        auto rep = check_single_crossing(t);
        CHECK(rep.consistent);
        if (rep.single_crossing.holds) {
            ++sc;
            CHECK(rep.argmax_nonreversing.holds);
        }
        if (!rep.argmax_nonreversing.holds) CHECK_FALSE(rep.single_crossing.holds);
    }
    CHECK(sc > 5);
}

TEST_CASE("property: logit conserves total output") {
    gen::Rng rng(303);
    for (int i = 0; i < 50; ++i) {
        LogitModel m;
        m.goods = static_cast<std::size_t>(gen::uniform(rng, 2, 4));
        const std::size_t X = static_cast<std::size_t>(gen::uniform(rng, 1, 3));
        for (std::size_t x = 0; x < X; ++x) {
            m.counts.push_back(Rat(gen::uniform(rng, 1, 5)));
            std::vector<Rat> s, c;
            for (std::size_t z = 0; z < m.goods; ++z) {
                s.push_back(Rat(gen::uniform(rng, 1, 3)));
                c.push_back(Rat(gen::uniform(rng, -2, 2)));
            }
            m.slope.push_back(s);
            m.intercept.push_back(c);
        }
        std::vector<double> p;
        for (std::size_t z = 0; z < m.goods; ++z) p.push_back(static_cast<double>(gen::uniform(rng, -3, 3)));
        auto q = logit_supply(m, p);
        double total = 0, n = 0;
        for (double v : q) total += v;
        for (const auto& c : m.counts) n += c.to_double();
        CHECK(std::fabs(total - n) <= kConservationTol * n);
    }
}
