#include "helpers.hpp"

#include "equistat/fixtures.hpp"
#include "equistat/flow.hpp"

#include <doctest.h>

#include <set>

using namespace equistat;
using namespace equistat::test;

namespace {

// Graph of Q as a set of (p, q) pairs.
std::set<std::pair<Point, Point>> graph(const FiniteCorrespondence& Q) {
    std::set<std::pair<Point, Point>> g;
    for (std::size_t i = 0; i < Q.size(); ++i)
        for (const auto& q : Q.image(i)) g.insert({Q.domain()[i], q});
    return g;
}

// Point-valued ugs correspondences of several origins.
std::vector<FiniteCorrespondence> ugs_instances(gen::Rng& rng, std::size_t count) {
    std::vector<FiniteCorrespondence> out;
    for (std::size_t tries = 0; out.size() < count && tries < 40 * count; ++tries) {
        FiniteCorrespondence Q = tries % 3 == 0   ? random_argmax(rng, 2, 0, 2)
                                 : tries % 3 == 1 ? gen::wgs_linear(rng, 2)
                                                  : argmax_correspondence(gen::mnatural_producer(rng, 2, 2), grid(2, 0, 2));
        if (check_substitutes(Q, Substitutes::ugs).holds) out.push_back(Q);
    }
    return out;
}

}  // namespace

TEST_CASE("invert examples") {
    auto I = identity(2, 0, 2);
    auto inv = invert(I);
    for (const auto& q : inv.domain()) CHECK(inv.image_of(q) == std::vector<Point>{q});
    auto Q = table(1, {{pt({0}), {pt({0}), pt({1})}}, {pt({1}), {pt({1})}}});
    CHECK(invert(Q).image_of(pt({1})) == std::vector<Point>{pt({0}), pt({1})});
    auto M = correspondence_from_json(fixture("a2_sum_m0").payload["components"][0]);
    CHECK(invert(M).point_valued());
}

TEST_CASE("check_inverse examples") {
    auto S = to_correspondence(fixture("a2_sum_m0"), std::nullopt);
    auto v = check_inverse(S, InverseProperty::totally_isotone);
    CHECK_FALSE(v.holds);
    CHECK(v.witness.has_value());
    for (auto prop : {InverseProperty::totally_isotone, InverseProperty::sso_isotone, InverseProperty::sublattice_fibers,
                      InverseProperty::point_valued})
        CHECK_MESSAGE(check_inverse(identity(2, 0, 2), prop).holds, to_string(prop));
    CHECK(check_inverse(constant(2, 0, 1, pt({3, 3})), InverseProperty::sublattice_fibers).holds);
}

TEST_CASE("partial_inverse examples") {
    auto Q = fixture("figure2_style_flow");
    auto S = to_correspondence(Q, std::nullopt);
    auto full = partial_inverse(S, {0, 1, 2}, Point{});
    auto inv = invert(S);
    CHECK(full.inverse.entries() == inv.entries());
    auto none = partial_inverse(identity(2, 0, 1), {}, pt({1, 0}));
    CHECK(none.inverse.size() == 1);
    CHECK(none.sso.holds);
    // Fix the first price of a sampled flow correspondence and invert the rest one coordinate at a time.
    const Point fixed{S.domain().front()[0], S.domain().front()[2]};
    CHECK(partial_inverse(S, {1}, fixed).sso.holds);
}

TEST_CASE("equivalence_suite examples") {
    auto simplex = equivalence_suite(to_correspondence(fixture("b1_simplex_argmax"), std::nullopt));
    CHECK(simplex.ugs);
    CHECK(simplex.nonreversing);
    CHECK(simplex.totally_isotone_inverse);
    CHECK(simplex.theorem1_consistent);
    auto kc = equivalence_suite(to_correspondence(fixture("a3_kelso_crawford"), std::nullopt), false);
    CHECK_FALSE(kc.ugs);
    CHECK_FALSE(kc.note.empty());
    auto id = equivalence_suite(identity(2, 0, 2));
    CHECK(id.ugs);
    CHECK(id.nonreversing);
    CHECK(id.strongly_nonreversing);
    CHECK(id.inverse_point_valued);
    CHECK(id.theorem1_consistent);
    CHECK(id.theorem2_consistent);
}

TEST_CASE("solution_sets examples") {
    auto Q = tabulate(2, grid(2, 0, 2), [](const Point& p) { return p - pt({1, 1}); });
    auto s = solution_sets(Q, pt({0, 0}));
    std::set<Point> expect;
    for (const auto& p : grid(2, 0, 2))
        if (leq(p, pt({1, 1}))) expect.insert(p);
    CHECK(std::set<Point>(s.subsolutions.begin(), s.subsolutions.end()) == expect);
    CHECK(s.subsolutions_join_closed.holds);
    REQUIRE(s.maximal_subsolution);
    CHECK(*s.maximal_subsolution == pt({1, 1}));
    CHECK(s.maximal_subsolution_is_solution.holds);

    auto empty = solution_sets(Q, pt({5, 5}));
    CHECK(empty.solutions.empty());
    CHECK_FALSE(empty.subsolutions.empty());
    CHECK_FALSE(empty.maximal_subsolution_is_solution.applicable);
}

TEST_CASE("property: nonreversing equals totally isotone inverse under ugs") {
    gen::Rng rng(201);
    auto pool = ugs_instances(rng, 90);
    REQUIRE(pool.size() == 90);
    for (const auto& Q : pool) {
        CHECK(check_monotonicity(Q, Monotonicity::nonreversing).holds ==
              check_inverse(Q, InverseProperty::totally_isotone).holds);
        const bool strong = check_monotonicity(Q, Monotonicity::strongly_nonreversing).holds;
        const bool fibers = check_inverse(Q, InverseProperty::point_valued).holds &&
                            check_inverse(Q, InverseProperty::sso_isotone).holds;
        const auto tax = classify(Q);
        CHECK(strong == fibers);
        CHECK(strong == (tax.nonreversing && tax.inverse_point_valued));
        if (tax.label == Label::m0_function || tax.label == Label::m0_correspondence)
            CHECK(check_inverse(Q, InverseProperty::sublattice_fibers).holds);
    }
}

TEST_CASE("property: inversion is an involution on the graph") {
    gen::Rng rng(202);
    for (int i = 0; i < 60; ++i) {
        auto Q = i % 2 ? random_argmax(rng, 2, 0, 2) : random_function(rng, 2, 0, 2, 2);
        CHECK(graph(invert(invert(Q))) == graph(Q));
    }
}

TEST_CASE("property: sub and supersolution closure under ugs") {
    gen::Rng rng(203);
    for (const auto& Q : ugs_instances(rng, 60)) {
        const Point target = Q.image(static_cast<std::size_t>(gen::uniform(rng, 0, static_cast<long>(Q.size()) - 1)))[0];
        auto s = solution_sets(Q, target);
        CHECK(s.subsolutions_join_closed.holds);
        CHECK(s.supersolutions_meet_closed.holds);
    }
}
