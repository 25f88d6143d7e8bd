#include "helpers.hpp"

#include "equistat/fixtures.hpp"

#include <doctest.h>

using namespace equistat;
using namespace equistat::test;

namespace {

// Definitional Kelso-Crawford oracle: p' <= p, q in Q(p) needs q' in Q(p') with q'_z >= q_z where p_z = p'_z.
bool kc_oracle(const FiniteCorrespondence& Q) {
    for (const auto& p : Q.domain())
        for (const auto& pp : Q.domain()) {
            if (!leq(pp, p)) continue;
            for (const auto& q : Q.image_of(p)) {
                bool found = false;
                for (const auto& qq : Q.image_of(pp)) {
                    bool ok = true;
                    for (std::size_t z = 0; z < p.size() && ok; ++z)
                        if (p[z] == pp[z] && qq[z] < q[z]) ok = false;
                    found = found || ok;
                }
                if (!found) return false;
            }
        }
    return true;
}

FiniteCorrespondence fixture_q(const std::string& name) { return to_correspondence(fixture(name), std::nullopt); }

}  // namespace

TEST_CASE("lattice_ops meet and join") {
    auto [m, j] = lattice_ops(pt({1, 2}), pt({2, 1}));
    CHECK(m == pt({1, 1}));
    CHECK(j == pt({2, 2}));
    auto [m4, j4] = lattice_ops(pt({1, 1, 2, 2}), pt({2, 2, 1, 1}));
    CHECK(m4 == pt({1, 1, 1, 1}));
    CHECK(j4 == pt({2, 2, 2, 2}));
    auto [ms, js] = lattice_ops(pt({3, -1}), pt({3, -1}));
    CHECK(ms == pt({3, -1}));
    CHECK(js == pt({3, -1}));
}

TEST_CASE("validate_domain sublattice check") {
    CHECK(validate_domain(table(2, {{pt({0, 0}), {pt({0, 0})}}, {pt({1, 1}), {pt({0, 0})}}})).holds);
    auto v = validate_domain(table(2, {{pt({0, 1}), {pt({0, 0})}}, {pt({1, 0}), {pt({0, 0})}}}));
    CHECK_FALSE(v.holds);
    REQUIRE(v.witness);
    CHECK(v.witness->q_join == pt({1, 1}));
    CHECK(validate_domain(constant(2, 0, 1, pt({0, 0}))).holds);
    CHECK_THROWS_AS(check_substitutes(table(2, {{pt({0, 1}), {pt({0, 0})}}, {pt({1, 0}), {pt({0, 0})}}}), Substitutes::ugs),
                    DomainError);
}

TEST_CASE("substitutes notions on the kelso-crawford table") {
    auto Q = fixture_q("a3_kelso_crawford");
    auto ugs = check_substitutes(Q, Substitutes::ugs);
    CHECK_FALSE(ugs.holds);
    REQUIRE(ugs.witness);
    CHECK(ugs.witness->q == pt({0, 1, 1, 0}));
    // The table as printed has no q' in Q(1,1,1,1) with q'_2 >= 1 for q = (0,1,1,0) in Q(1,1,2,2).
    CHECK(check_substitutes(Q, Substitutes::kelso_crawford).holds == kc_oracle(Q));
    CHECK_FALSE(kc_oracle(Q));
}

TEST_CASE("simplex argmax separates weak and strong antecedents") {
    auto Q = fixture_q("b1_simplex_argmax");
    CHECK(check_substitutes(Q, Substitutes::ugs).holds);
    CheckOptions all{.collect_all = true};
    auto strong = check_substitutes(Q, Substitutes::ugs_strong_antecedent, all);
    CHECK_FALSE(strong.holds);
    bool reference_pair = false;
    for (const auto& w : strong.failures)
        reference_pair = reference_pair || (w.p == pt({1, 1}) && w.p_prime == pt({1, 1}) && w.q == pt({1, 0}) && w.q_prime == pt({0, 1}));
    CHECK(reference_pair);
}

TEST_CASE("constant correspondence satisfies every substitutes notion") {
    auto Q = constant(2, 0, 2, pt({1, -1}));
    for (auto s : {Substitutes::ugs, Substitutes::ugs_strong_antecedent, Substitutes::kelso_crawford,
                   Substitutes::polterovich_spivak, Substitutes::wgs_function})
        CHECK_MESSAGE(check_substitutes(Q, s).holds, to_string(s));
}

TEST_CASE("polterovich-spivak independence pair") {
    auto Q = fixture_q("a4_ugs_not_ps");
    CHECK(check_substitutes(Q, Substitutes::ugs).holds);
    CHECK_FALSE(check_substitutes(Q, Substitutes::polterovich_spivak).holds);
    auto R = fixture_q("a4_ps_not_ugs");
    CHECK(check_substitutes(R, Substitutes::polterovich_spivak).holds);
    CHECK_FALSE(check_substitutes(R, Substitutes::ugs).holds);
}

TEST_CASE("monotonicity examples") {
    SUBCASE("walras correspondence monetizes to constant aggregate output") {
        auto Q = tabulate(2, grid(2, 1, 3), [](const Point& p) { return Point{p[1], -p[0]}; });
        CHECK(check_monotonicity(Q, Monotonicity::walras).holds);
        CHECK(check_monotonicity(monetize(Q), Monotonicity::constant_aggregate_output).holds);
    }
    SUBCASE("kettle") {
        auto Q = fixture_q("b2_kettle");
        CHECK(check_monotonicity(Q, Monotonicity::nonreversing).holds);
        CHECK(check_monotonicity(Q, Monotonicity::aggregate_monotonicity).holds);
        CheckOptions all{.collect_all = true};
        auto mto = check_monotonicity(Q, Monotonicity::monotone_total_output, all);
        CHECK_FALSE(mto.holds);
        bool pair = false;
        for (const auto& w : mto.failures) {
            const bool a = w.p == pt({2, 0, 0}) && w.p_prime == pt({0, 0, 0});
            const bool b = w.p == pt({0, 0, 0}) && w.p_prime == pt({2, 0, 0});
            pair = pair || a || b;
        }
        CHECK(pair);
    }
    SUBCASE("identity is strongly nonreversing") {
        CHECK(check_monotonicity(identity(2, 0, 2), Monotonicity::strongly_nonreversing).holds);
    }
}

TEST_CASE("transforms") {
    auto Q = table(2, {{pt({1, 2}), {pt({2, 3})}}});
    CHECK(monetize(Q).image_of(pt({1, 2})) == std::vector<Point>{pt({2, 6})});
    auto R = table(2, {{pt({0, 0}), {pt({0, 1}), pt({1, 0})}}});
    CHECK(aggregate(R, R, Rat(1), Rat(1)).image_of(pt({0, 0})) == std::vector<Point>{pt({0, 2}), pt({1, 1}), pt({2, 0})});
    auto inst = fixture("a2_sum_m0");
    auto A = correspondence_from_json(inst.payload["components"][0]);
    auto B = correspondence_from_json(inst.payload["components"][1]);
    auto S = aggregate(A, B, Rat(1), Rat(1));
    CHECK(S.entries() == correspondence_from_json(inst.payload).entries());
    CHECK_FALSE(check_inverse(S, InverseProperty::totally_isotone).holds);
    auto F = flip_orientation(Q);
    CHECK(F.image_of(pt({1, 2})) == std::vector<Point>{pt({-2, -3})});
    auto E = extend_outside_good(Q, pt({1, 1}), Rat(0));
    CHECK(E.dim() == 3);
    CHECK(E.image_of(pt({1, 2, 0})) == std::vector<Point>{pt({2, 3, -5})});
}

TEST_CASE("classify examples") {
    auto inst = fixture("a2_sum_m0");
    CHECK(classify(correspondence_from_json(inst.payload["components"][0])).label == Label::m_function);
    CHECK(classify(constant(2, 0, 1, pt({1, 1}))).label == Label::m0_function);
    CHECK(classify(fixture_q("b1_simplex_argmax")).label == Label::m0_correspondence);
}

TEST_CASE("property: ugs equals wgs on point-valued correspondences") {
    gen::Rng rng(101);
    int agree = 0, ugs_true = 0;
    for (int i = 0; i < 200; ++i) {
        auto Q = i % 2 ? gen::wgs_linear(rng, static_cast<std::size_t>(gen::uniform(rng, 2, 3)))
                       : random_function(rng, 2, 0, 2, 1);
        const bool u = check_substitutes(Q, Substitutes::ugs).holds;
        agree += u == check_substitutes(Q, Substitutes::wgs_function).holds;
        ugs_true += u;
    }
    CHECK(agree == 200);
    CHECK(ugs_true > 20);
}

TEST_CASE("property: aggregation preserves ugs") {
    gen::Rng rng(102);
    const std::vector<Rat> weights{Rat(0), Rat(1, 2), Rat(1), Rat(2)};
    int tested = 0;
    for (int i = 0; i < 60; ++i) {
        const std::size_t dim = static_cast<std::size_t>(gen::uniform(rng, 2, 3));
        auto A = argmax_correspondence(gen::mnatural_producer(rng, dim, 1), grid(dim, 0, 2));
        auto B = argmax_correspondence(gen::mnatural_producer(rng, dim, 1), grid(dim, 0, 2));
        REQUIRE(check_substitutes(A, Substitutes::ugs).holds);
        REQUIRE(check_substitutes(B, Substitutes::ugs).holds);
        const Rat& l = weights[static_cast<std::size_t>(gen::uniform(rng, 0, 3))];
        const Rat& m = weights[static_cast<std::size_t>(gen::uniform(rng, 0, 3))];
        CHECK(check_substitutes(aggregate(A, B, l, m), Substitutes::ugs).holds);
        ++tested;
    }
    CHECK(tested == 60);
}

TEST_CASE("property: monetize preserves ugs on positive prices") {
    gen::Rng rng(103);
    int agree = 0;
    for (int i = 0; i < 150; ++i) {
        auto Q = i % 2 ? random_argmax(rng, 2, 1, 3) : random_function(rng, 2, 1, 3, 1);
        agree += check_substitutes(Q, Substitutes::ugs).holds == check_substitutes(monetize(Q), Substitutes::ugs).holds;
    }
    CHECK(agree == 150);
}

TEST_CASE("property: walras chain") {
    gen::Rng rng(104);
    for (int i = 0; i < 80; ++i) {
        // q = t (p2, -p1) keeps p.q = 0.
        std::vector<FiniteCorrespondence::Entry> rows;
        for (const auto& p : grid(2, 1, 3)) {
            std::vector<Point> qs;
            const long k = gen::uniform(rng, 1, 2);
            for (long j = 0; j < k; ++j) {
                const Rat t(gen::uniform(rng, -2, 2));
                qs.push_back(Point{t * p[1], -(t * p[0])});
            }
            rows.push_back({p, qs});
        }
        auto Q = table(2, rows);
        REQUIRE(check_monotonicity(Q, Monotonicity::walras).holds);
        auto M = monetize(Q);
        CHECK(check_monotonicity(M, Monotonicity::constant_aggregate_output).holds);
        CHECK(check_monotonicity(M, Monotonicity::nonreversing).holds);
    }
}

TEST_CASE("property: implications between checkers") {
    gen::Rng rng(105);
    int ugs_count = 0;
    for (int i = 0; i < 240; ++i) {
        FiniteCorrespondence Q = i % 3 == 0   ? random_argmax(rng, 2, 0, 2)
                                 : i % 3 == 1 ? random_function(rng, 2, 0, 2, 1)
                                              : gen::wgs_linear(rng, 2);
        const bool ugs = check_substitutes(Q, Substitutes::ugs).holds;
        ugs_count += ugs;
        const bool kc = check_substitutes(Q, Substitutes::kelso_crawford).holds;
        CHECK(kc == kc_oracle(Q));
        if (ugs) CHECK(kc);
        const bool nr = check_monotonicity(Q, Monotonicity::nonreversing).holds;
        if (ugs && check_monotonicity(Q, Monotonicity::weighted_monotonicity).holds) CHECK(nr);
        if (check_monotonicity(Q, Monotonicity::strongly_nonreversing).holds) CHECK(nr);
        const bool am = check_monotonicity(Q, Monotonicity::aggregate_monotonicity).holds;
        if (check_monotonicity(Q, Monotonicity::constant_aggregate_output).holds) CHECK(am);
        if (check_monotonicity(Q, Monotonicity::monotone_total_output).holds) CHECK(am);
        CheckOptions w{.weights = pt({1, 2})};
        if (check_monotonicity(Q, Monotonicity::constant_aggregate_output, w).holds)
            CHECK(check_monotonicity(Q, Monotonicity::aggregate_monotonicity, w).holds);
    }
    CHECK(ugs_count > 30);
}

TEST_CASE("property: outside good") {
    gen::Rng rng(106);
    int ext_ugs = 0;
    for (int i = 0; i < 120; ++i) {
        auto Q = i % 2 ? random_argmax(rng, 2, 0, 2) : gen::wgs_linear(rng, 2);
        auto E = extend_outside_good(Q, pt({1, gen::uniform(rng, 1, 2)}), Rat(gen::uniform(rng, 0, 3)));
        if (!check_substitutes(E, Substitutes::ugs).holds) continue;
        ++ext_ugs;
        CHECK(check_substitutes(Q, Substitutes::ugs).holds);
        CHECK(check_monotonicity(Q, Monotonicity::weighted_monotonicity).holds);
    }
    CHECK(ext_ugs > 5);
}
