#include "equistat/suite.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
    CLI::App app{"Acceptance battery: one PASS/FAIL line per criterion"};
    std::uint64_t seed = 0;
    std::vector<int> only;
    app.add_option("--seed", seed, "Seed for generated instances");
    app.add_option("--only", only, "Criterion ids to run")->check(CLI::Range(1, equistat::kCriteria));
    CLI11_PARSE(app, argc, argv);

    int failed = 0;
    for (int id = 1; id <= equistat::kCriteria; ++id) {
        if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end()) continue;
        auto r = equistat::run_criterion(id, seed);
        std::cout << equistat::format_result(r) << std::endl;
        failed += !r.pass;
    }
    std::cout << (failed ? "FAILED " : "ALL PASSED ") << failed << " criteria failing" << std::endl;
    return failed ? 1 : 0;
}
