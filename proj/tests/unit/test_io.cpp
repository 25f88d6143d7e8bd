#include "helpers.hpp"

#include "equistat/error.hpp"
#include "equistat/fixtures.hpp"
#include "equistat/io.hpp"

#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

using namespace equistat;
using namespace equistat::test;

namespace {

std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / ("equistat_test_" + name)).string();
}

void write(const std::string& path, const std::string& text) { std::ofstream(path) << text; }

}  // namespace

TEST_CASE("rational parsing is exact") {
    CHECK(Rat::parse("1/3") * Rat(3) == Rat(1));
    CHECK(Rat::parse("-2/4") == Rat(-1, 2));
    CHECK(Rat::parse("0.25") == Rat(1, 4));
    CHECK(rat_from_json(Json("1/3")) == Rat(1, 3));
    CHECK(rat_from_json(Json(7)) == Rat(7));
    CHECK(rat_to_json(Rat(1, 3)) == Json("1/3"));
    CHECK_THROWS_AS(Rat::parse("1/0"), InputError);
    CHECK_THROWS_AS(Rat::parse("abc"), InputError);
}

TEST_CASE("load and save round trip") {
    const std::string path = temp_path("roundtrip.json");
    auto Q = table(2, {{pt({0, 0}), {pt({1, 0})}}, {pt({1, 1}), {Point{Rat(1, 3), Rat(-2, 7)}, pt({0, 0})}}});
    InstanceFile inst{"correspondence", correspondence_to_json(Q)};
    save(inst, path);
    auto back = load(path);
    CHECK(back.kind == "correspondence");
    CHECK(back.schema_version == kSchemaVersion);
    CHECK(correspondence_from_json(back.payload).entries() == Q.entries());
    CHECK(correspondence_from_json(back.payload).contains(pt({1, 1}), Point{Rat(1, 3), Rat(-2, 7)}));
    std::remove(path.c_str());
}

TEST_CASE("every fixture survives save and load") {
    for (const auto& name : fixture_names()) {
        const std::string path = temp_path(name + ".json");
        auto inst = fixture(name);
        save(inst, path);
        auto back = load(path);
        CHECK_MESSAGE(instance_to_json(back) == instance_to_json(inst), name);
        CHECK_NOTHROW(validate_instance(back));
        std::remove(path.c_str());
    }
    CHECK_THROWS_AS(fixture("no_such_fixture"), InputError);
}

TEST_CASE("load rejects malformed input") {
    const std::string path = temp_path("bad.json");
    write(path, "{ not json");
    CHECK_THROWS_AS(load(path), InputError);
    write(path, R"({"kind": "mystery", "payload": {}, "schema_version": 1})");
    CHECK_THROWS_AS(load(path), InputError);
    write(path, R"({"kind": "ntu", "schema_version": 1, "payload":
        {"alpha": [["1", "1"]], "alpha0": ["0"], "gamma": [["1", "2"]], "gamma0": ["0", "0"]}})");
    try {
        load(path);
        FAIL("tie accepted");
    } catch (const InputError& e) {
        CHECK(std::string(e.what()).find("strict") != std::string::npos);
    }
    CHECK_THROWS_AS(load(temp_path("missing.json")), InputError);
    std::remove(path.c_str());
}

TEST_CASE("fixture contents match the printed values") {
    auto kc = correspondence_from_json(fixture("a3_kelso_crawford").payload);
    CHECK(kc.size() == 4);
    CHECK(kc.image_of(pt({1, 1, 2, 2})) == std::vector<Point>{pt({0, 1, 1, 0}), pt({1, 0, 1, 1})});
    CHECK(kc.image_of(pt({1, 1, 1, 1})) == std::vector<Point>{pt({0, 0, 0, 1}), pt({1, 0, 0, 0})});
    CHECK(kc.image_of(pt({2, 2, 2, 2})) == std::vector<Point>{pt({0, 1, 1, 1}), pt({1, 1, 1, 0})});
    CHECK(kc.image_of(pt({2, 2, 1, 1})) == std::vector<Point>{pt({0, 1, 1, 0}), pt({1, 1, 0, 1})});

    // Exact inverse of the sum M + M^T.
    auto a2 = fixture("a2_sum_m0").payload;
    const auto S = a2["matrix"];
    const Rat a = rat_from_json(S[0][0]), b = rat_from_json(S[0][1]), c = rat_from_json(S[1][0]), d = rat_from_json(S[1][1]);
    const Rat det = a * d - b * c;
    CHECK(d / det == Rat(-4, 10));
    CHECK(-b / det == Rat(-10, 10));
    CHECK(-c / det == Rat(-10, 10));
    CHECK(a / det == Rat(-20, 10));
    CHECK(correspondence_from_json(a2).size() == 9);

    auto kettle = fixture("b2_kettle").payload;
    CHECK(rat_from_json(kettle["C"][0][0]) == Rat(25));
    CHECK(rat_from_json(kettle["C_inverse"][0][0]) == Rat(50, 90));
    auto K = correspondence_from_json(kettle);
    CHECK(K.size() == 27);
    CHECK(K.image_of(pt({2, 0, 0})) == std::vector<Point>{Point{Rat(100, 180), Rat(-40, 180), Rat(-80, 180)}});
}
