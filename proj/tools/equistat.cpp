#include "equistat/conv.hpp"
#include "equistat/error.hpp"
#include "equistat/fixtures.hpp"
#include "equistat/flow.hpp"
#include "equistat/io.hpp"
#include "equistat/latt.hpp"
#include "equistat/markets.hpp"
#include "equistat/suite.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

using namespace equistat;

namespace {

// Exit codes are a scripting contract.
enum Exit : int { kPass = 0, kFalsified = 1, kInputError = 2, kInconclusive = 3 };

struct Report {
    Json result = Json::object();
    std::string text;
    int exit = kPass;
};

struct Options {
    bool json = false;
    std::uint64_t seed = 0;
    std::string input, outcome, output, eps = "0", kind, target, weights;
    std::optional<unsigned> cap;
    std::vector<std::string> properties;
    std::vector<int> only;
    bool collect_all = false, all = false;
    std::string fixture_name;
};

InstanceFile require_input(const Options& o) {
    if (o.input.empty()) throw InputError("--input is required");
    return load(o.input);
}

void require_kind(const InstanceFile& inst, std::initializer_list<const char*> kinds) {
    for (const char* k : kinds)
        if (inst.kind == k) return;
    std::string want;
    for (const char* k : kinds) want += std::string(want.empty() ? "" : " or ") + k;
    throw InputError("expected an instance of kind " + want + ", got '" + inst.kind + "'");
}

Point parse_point(const std::string& s) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    for (std::string tok; std::getline(ss, tok, ',');) parts.push_back(tok);
    return Point::parse(parts);
}

Json rat_matrix(const std::vector<std::vector<Rat>>& M) {
    Json j = Json::array();
    for (const auto& row : M) j.push_back(rats_to_json(row));
    return j;
}

std::string join_rats(const std::vector<Rat>& v) { return to_point(v).str(); }

void add_verdict(Report& r, const Verdict& v) {
    r.result["verdicts"].push_back(verdict_to_json(v));
    r.text += render_verdict(v) + "\n";
    if (v.applicable && !v.holds) r.exit = kFalsified;
}

// Objective tables travel standalone or embedded in a correspondence payload.
std::optional<ObjectiveTable> objective_of(const InstanceFile& inst) {
    if (inst.kind == "objective_table") return objective_table_from_json(inst.payload);
    if (inst.payload.contains("objective_table")) return objective_table_from_json(inst.payload["objective_table"]);
    return std::nullopt;
}

Verdict run_property(const InstanceFile& inst, const std::string& name, const Options& o) {
    CheckOptions opts;
    opts.collect_all = o.collect_all;
    if (!o.weights.empty()) opts.weights = parse_point(o.weights);
    if (auto s = parse_substitutes(name)) return check_substitutes(to_correspondence(inst, o.cap), *s, opts);
    if (auto m = parse_monotonicity(name)) return check_monotonicity(to_correspondence(inst, o.cap), *m, opts);
    if (auto p = parse_inverse_property(name)) return check_inverse(to_correspondence(inst, o.cap), *p, opts);
    if (name == "more_rheinboldt") return check_more_rheinboldt(to_correspondence(inst, o.cap));
    if (name == "submodular" || name == "discrete_convexity" || name == "spice") {
        require_kind(inst, {"producer"});
        auto prod = producer_from_json(inst.payload);
        if (name == "discrete_convexity") return check_discrete_convexity(prod);
        auto grid = grid_from_json(inst.payload, prod.dim);
        if (name == "submodular") return check_submodular(indirect_profit(prod, grid));
        auto rep = spice_equivalence(prod, grid);
        Verdict v{.property = "spice_equivalence", .holds = rep.agree};
        v.note = "submodular " + std::string(rep.submodular.holds ? "holds" : "fails") + ", ugs " +
                 (rep.ugs.holds ? "holds" : "fails");
        return v;
    }
    if (name == "milgrom_shannon" || name == "topkis" || name == "single_crossing") {
        auto tab = objective_of(inst);
        if (!tab) throw InputError("property '" + name + "' needs an objective table");
        if (name == "milgrom_shannon") return check_milgrom_shannon(*tab);
        if (name == "topkis") return check_topkis(*tab);
        auto rep = check_single_crossing(*tab);
        return rep.single_crossing;
    }
    if (name == "ntu_m0") {
        require_kind(inst, {"ntu"});
        auto m = ntu_from_json(inst.payload);
        auto grid = (inst.payload.contains("grid") || inst.payload.contains("grid_levels"))
                        ? grid_from_json(inst.payload, m.women())
                        : ntu_candidate_grid(m);
        return ntu_m0_check(m, grid);
    }
    throw InputError("unknown property '" + name + "'");
}

Report cmd_check(const Options& o) {
    auto inst = require_input(o);
    Report r;
    r.result["verdicts"] = Json::array();
    const auto props = o.properties.empty() ? std::vector<std::string>{"ugs"} : o.properties;
    for (const auto& name : props) add_verdict(r, run_property(inst, name, o));
    return r;
}

Report cmd_classify(const Options& o) {
    auto inst = require_input(o);
    Report r;
    std::ostringstream t;
    t << std::boolalpha;
    if (inst.kind == "logit") {
        auto m = logit_from_json(inst.payload);
        auto grid = grid_from_json(inst.payload, m.free_goods());
        auto tax = logit_taxonomy(m, grid);
        r.result = {{"label", to_string(tax.label)},
                    {"ugs", tax.ugs},
                    {"nonreversing", tax.nonreversing},
                    {"inverse_point_valued", tax.inverse_point_valued},
                    {"constant_aggregate_output", tax.constant_aggregate_output},
                    {"max_conservation_error", tax.max_conservation_error}};
        t << "label: " << to_string(tax.label) << "\n  ugs: " << tax.ugs << "\n  nonreversing: " << tax.nonreversing
          << "\n  inverse point-valued: " << tax.inverse_point_valued
          << "\n  constant aggregate output: " << tax.constant_aggregate_output
          << "\n  max conservation error: " << tax.max_conservation_error << "\n";
    } else {
        auto Q = to_correspondence(inst, o.cap);
        auto tax = classify(Q);
        auto eq = equivalence_suite(Q, false);
        r.result = {{"label", to_string(tax.label)},
                    {"ugs", tax.ugs},
                    {"nonreversing", tax.nonreversing},
                    {"point_valued", tax.point_valued},
                    {"inverse_point_valued", tax.inverse_point_valued},
                    {"strongly_nonreversing", eq.strongly_nonreversing},
                    {"totally_isotone_inverse", eq.totally_isotone_inverse},
                    {"inverse_point_valued_isotone", eq.inverse_point_valued_isotone},
                    {"equivalences_consistent", eq.theorem1_consistent && eq.theorem2_consistent},
                    {"note", eq.note}};
        t << "label: " << to_string(tax.label) << "\n  ugs: " << tax.ugs << "\n  nonreversing: " << tax.nonreversing
          << "\n  point-valued: " << tax.point_valued << "\n  inverse point-valued: " << tax.inverse_point_valued
          << "\n  strongly nonreversing: " << eq.strongly_nonreversing
          << "\n  inverse totally isotone: " << eq.totally_isotone_inverse
          << "\n  equivalences consistent: " << (eq.theorem1_consistent && eq.theorem2_consistent) << "\n";
        if (!eq.note.empty()) t << "  note: " << eq.note << "\n";
        if (!(eq.theorem1_consistent && eq.theorem2_consistent)) r.exit = kFalsified;
    }
    r.text = t.str();
    return r;
}

Report cmd_invert(const Options& o) {
    auto inst = require_input(o);
    auto inv = invert(to_correspondence(inst, o.cap));
    InstanceFile out{"correspondence", correspondence_to_json(inv)};
    Report r;
    if (!o.output.empty()) {
        save(out, o.output);
        r.result = {{"output", o.output}, {"domain_size", inv.size()}};
        r.text = "inverse with " + std::to_string(inv.size()) + " points written to " + o.output + "\n";
    } else {
        r.result = instance_to_json(out);
        r.text = instance_to_json(out).dump(2) + "\n";
    }
    return r;
}

void add_lattice(Report& r, const LatticeReport& lat, std::size_t points) {
    r.result["points"] = points;
    r.result["pairs_checked"] = lat.pairs_checked;
    r.text += std::to_string(points) + " points, " + std::to_string(lat.pairs_checked) + " pairs checked\n";
    add_verdict(r, lat.closure);
}

std::vector<Point> prices_of(const std::vector<FlowOutcome>& outs) {
    std::set<Point> s;
    for (const auto& x : outs) s.insert(to_point(x.p));
    return {s.begin(), s.end()};
}

Report cmd_lattice(const Options& o) {
    auto inst = require_input(o);
    Report r;
    r.result["verdicts"] = Json::array();
    if (inst.kind == "ntu") {
        auto m = ntu_from_json(inst.payload);
        std::set<Point> stable;
        for (const auto& x : ntu_solve(m))
            if (x.stable && ntu_payoffs_v(m, x.match) == x.v) stable.insert(x.v);
        std::vector<Point> pts(stable.begin(), stable.end());
        add_lattice(r, ntu_lattice_report(m, pts), pts.size());
        return r;
    }
    if (inst.kind == "itu" || inst.kind == "hedonic" || inst.kind == "network") {
        FlowProblem prob;
        std::vector<FlowOutcome> verts;
        if (inst.kind == "itu") {
            auto m = itu_from_json(inst.payload);
            prob = itu_to_flow(m);
            verts = itu_equilibrium_vertices(m);
        } else if (inst.kind == "hedonic") {
            auto m = hedonic_from_json(inst.payload);
            prob = hedonic_to_flow(m);
            verts = hedonic_solve(m, true).vertices;
        } else {
            prob = network_from_json(inst.payload);
            GeneralOptions g;
            g.enumerate_all = true;
            auto res = solve_general(prob, g);
            if (res.all.empty()) throw Inconclusive("no equilibrium vertex found: " + res.report);
            verts = res.all;
        }
        if (verts.empty()) throw Inconclusive("no equilibrium vertex found");
        auto pts = prices_of(verts);
        add_lattice(r, equilibrium_lattice_report(prob, pts), pts.size());
        return r;
    }
    auto Q = to_correspondence(inst, o.cap);
    const Point target = o.target.empty() ? zeros(Q.dim()) : parse_point(o.target);
    auto sol = solution_sets(Q, target);
    auto pts = [](const std::vector<Point>& v) {
        Json j = Json::array();
        for (const auto& p : v) j.push_back(point_to_json(p));
        return j;
    };
    r.result["target"] = point_to_json(target);
    r.result["solutions"] = pts(sol.solutions);
    r.result["subsolutions"] = pts(sol.subsolutions);
    r.result["supersolutions"] = pts(sol.supersolutions);
    r.result["maximal_subsolution"] = sol.maximal_subsolution ? point_to_json(*sol.maximal_subsolution) : Json();
    r.text = "target " + target.str() + ": " + std::to_string(sol.solutions.size()) + " solutions, " +
             std::to_string(sol.subsolutions.size()) + " subsolutions, " + std::to_string(sol.supersolutions.size()) +
             " supersolutions\n";
    if (sol.maximal_subsolution) r.text += "maximal subsolution " + sol.maximal_subsolution->str() + "\n";
    add_verdict(r, sol.subsolutions_join_closed);
    add_verdict(r, sol.supersolutions_meet_closed);
    add_verdict(r, sol.maximal_subsolution_is_solution);
    return r;
}

bool all_additive(const Network& net) {
    for (const auto& a : net.arcs)
        if (!a.g.is_additive()) return false;
    return true;
}

void add_outcome(Report& r, const FlowProblem& prob, const FlowOutcome& out) {
    const auto& net = prob.network;
    r.result["outcome"] = outcome_to_json(out, net);
    std::ostringstream t;
    for (std::size_t z = 0; z < net.size(); ++z) t << "  p[" << net.nodes[z] << "] = " << out.p[z].str() << "\n";
    for (std::size_t a = 0; a < net.arcs.size(); ++a)
        if (out.mu[a] != Rat(0))
            t << "  mu[" << net.nodes[net.arcs[a].from] << "->" << net.nodes[net.arcs[a].to] << "] = " << out.mu[a].str()
              << "\n";
    r.text += t.str();
}

Report cmd_flow_solve(const Options& o) {
    auto inst = require_input(o);
    require_kind(inst, {"network"});
    auto prob = network_from_json(inst.payload);
    Report r;
    FlowOutcome out;
    if (all_additive(prob.network)) {
        try {
            out = solve_additive(prob);
        } catch (const InfeasibleError& e) {
            r.result["feasible"] = false;
            r.result["note"] = e.what();
            r.text = std::string("infeasible: ") + e.what() + "\n";
            r.exit = kFalsified;
            return r;
        }
        r.result["method"] = "min_cost_flow";
        r.result["cost"] = rat_to_json(flow_cost(prob.network, out.mu));
        r.text = "min-cost flow, cost " + flow_cost(prob.network, out.mu).str() + "\n";
    } else {
        auto res = solve_general(prob);
        if (!res.outcome) throw Inconclusive("general solver found no equilibrium: " + res.report);
        out = *res.outcome;
        r.result["method"] = "tight_tree_search";
        r.result["explored"] = res.explored;
        r.text = "tight-tree search, " + std::to_string(res.explored) + " nodes explored\n";
    }
    add_outcome(r, prob, out);
    auto chk = verify_equilibrium(prob, out);
    r.result["verdicts"] = Json::array();
    add_verdict(r, chk.verdict);
    return r;
}

Report cmd_flow_verify(const Options& o) {
    auto inst = require_input(o);
    require_kind(inst, {"network"});
    auto prob = network_from_json(inst.payload);
    if (o.outcome.empty()) throw InputError("--outcome is required");
    Json j;
    {
        std::ifstream f(o.outcome);
        if (!f) throw InputError("cannot read " + o.outcome);
        try {
            j = Json::parse(f);
        } catch (const std::exception& e) {
            throw InputError(o.outcome + ": " + e.what());
        }
    }
    if (j.contains("payload")) j = j["payload"];
    if (j.contains("result")) j = j["result"];
    if (j.contains("outcome")) j = j["outcome"];
    auto out = outcome_from_json(j, prob.network);
    auto chk = verify_equilibrium(prob, out, Rat::parse(o.eps));
    Report r;
    r.result = {{"balance_residual", chk.balance_residual.str()},
                {"rent_residual", chk.rent_residual.str()},
                {"slackness_residual", chk.slackness_residual.str()},
                {"violations", chk.violations},
                {"verdicts", Json::array()}};
    r.text = "residuals: balance " + chk.balance_residual.str() + ", rent " + chk.rent_residual.str() + ", slackness " +
             chk.slackness_residual.str() + "\n";
    for (const auto& v : chk.violations) r.text += "  " + v + "\n";
    add_verdict(r, chk.verdict);
    return r;
}

Report cmd_flow_sample(const Options& o) {
    auto inst = require_input(o);
    require_kind(inst, {"network"});
    auto prob = network_from_json(inst.payload);
    const unsigned cap = o.cap.value_or(inst.payload.value("cap", 1u));
    if (cap == 0) throw InputError("cap must be positive");
    auto s = sample_equilibrium_correspondence(prob.network, grid_from_json(inst.payload, prob.network.size()), cap);
    InstanceFile out{"correspondence", correspondence_to_json(s.Q)};
    Report r;
    Json filtered = Json::array();
    for (const auto& p : s.filtered) filtered.push_back(point_to_json(p));
    if (!o.output.empty()) {
        save(out, o.output);
        r.result = {{"output", o.output}, {"domain_size", s.Q.size()}, {"filtered", filtered}};
        r.text = "sampled correspondence on " + std::to_string(s.Q.size()) + " prices written to " + o.output + "\n";
    } else {
        r.result = {{"instance", instance_to_json(out)}, {"filtered", filtered}};
        r.text = instance_to_json(out).dump(2) + "\n";
    }
    r.text += std::to_string(s.filtered.size()) + " grid prices filtered\n";
    return r;
}

Report cmd_match_solve(const Options& o) {
    auto inst = require_input(o);
    Report r;
    r.result["verdicts"] = Json::array();
    if (o.kind == "ntu") {
        require_kind(inst, {"ntu"});
        auto m = ntu_from_json(inst.payload);
        Json outs = Json::array();
        std::ostringstream t;
        std::size_t realized = 0;
        for (const auto& x : ntu_solve(m)) {
            const bool self = x.stable && ntu_payoffs_v(m, x.match) == x.v;
            realized += self;
            outs.push_back({{"v", point_to_json(x.v)},
                            {"stable", x.stable},
                            {"realizes_v", self},
                            {"matching", matching_to_json(x.match)}});
            t << "  v = " << x.v.str() << (x.stable ? " stable" : " unstable")
              << (self ? "" : ", realized payoffs " + ntu_payoffs_v(m, x.match).str()) << "\n";
        }
        auto men = gale_shapley(m, Side::men), women = gale_shapley(m, Side::women);
        r.result["zeros"] = outs;
        r.result["men_proposing"] = {{"matching", matching_to_json(men)}, {"v", point_to_json(ntu_payoffs_v(m, men))}};
        r.result["women_proposing"] = {{"matching", matching_to_json(women)},
                                       {"v", point_to_json(ntu_payoffs_v(m, women))}};
        r.text = std::to_string(outs.size()) + " excess-supply zeros, " + std::to_string(realized) +
                 " realizing their payoffs\n" + t.str() + "men-proposing v = " + ntu_payoffs_v(m, men).str() +
                 "\nwomen-proposing v = " + ntu_payoffs_v(m, women).str() + "\n";
        add_verdict(r, check_stability_ntu(m, men));
        add_verdict(r, check_stability_ntu(m, women));
        return r;
    }
    if (o.kind != "tu" && o.kind != "itu") throw InputError("--kind must be tu, itu or ntu");
    require_kind(inst, {"itu"});
    auto m = itu_from_json(inst.payload);
    if (o.kind == "tu" && !m.transferable()) throw InputError("market has non-transferable maps; use --kind itu");
    auto sol = solve_itu(m);
    r.result["matching"] = matching_to_json(sol.matching);
    r.result["u"] = rats_to_json(sol.u);
    r.result["v"] = rats_to_json(sol.v);
    r.text = "u = " + join_rats(sol.u) + "\nv = " + join_rats(sol.v) + "\n";
    if (m.transferable()) {
        const Rat s = total_surplus_tu(m, sol.matching);
        r.result["surplus"] = rat_to_json(s);
        r.text += "surplus = " + s.str() + "\n";
    }
    for (std::size_t x = 0; x < m.workers(); ++x)
        for (std::size_t y = 0; y < m.firms(); ++y)
            if (sol.matching.mu[x][y] != Rat(0))
                r.text += "  mu[" + std::to_string(x) + "][" + std::to_string(y) + "] = " + sol.matching.mu[x][y].str() +
                          (sol.matching.w[x][y] ? ", wage " + sol.matching.w[x][y]->str() : "") + "\n";
    add_verdict(r, check_stability_itu(m, sol.matching));
    return r;
}

Json allocation_json(const HedonicAllocation& a) {
    return {{"mu_xw", rat_matrix(a.mu_xw)},
            {"mu_x0", rats_to_json(a.mu_x0)},
            {"mu_wy", rat_matrix(a.mu_wy)},
            {"mu_0y", rats_to_json(a.mu_0y)}};
}

Report cmd_hedonic_solve(const Options& o) {
    auto inst = require_input(o);
    require_kind(inst, {"hedonic"});
    auto m = hedonic_from_json(inst.payload);
    auto sol = hedonic_solve(m, o.all);
    if (!sol.outcome) throw Inconclusive("hedonic solver found no equilibrium: " + sol.report);
    const auto& h = *sol.outcome;
    Report r;
    r.result = {{"price", rats_to_json(h.price)},
                {"u", rats_to_json(h.u)},
                {"v", rats_to_json(h.v)},
                {"allocation", allocation_json(h.alloc)},
                {"verdicts", Json::array()}};
    r.text = "price = " + join_rats(h.price) + "\nu = " + join_rats(h.u) + "\nv = " + join_rats(h.v) + "\n";
    if (o.all) {
        Json verts = Json::array();
        for (const auto& p : prices_of(sol.vertices)) verts.push_back(point_to_json(p));
        r.result["vertices"] = verts;
        r.text += std::to_string(verts.size()) + " equilibrium vertices (node prices u, p, -v, 0)\n";
    }
    add_verdict(r, verify_hedonic(m, h.price, h.alloc, Rat::parse(o.eps)));
    return r;
}

Report cmd_fixtures(const Options& o) {
    Report r;
    if (o.fixture_name.empty()) {
        r.result["fixtures"] = fixture_names();
        for (const auto& n : fixture_names()) r.text += n + "\n";
        return r;
    }
    auto inst = fixture(o.fixture_name);
    if (!o.output.empty()) {
        save(inst, o.output);
        r.result = {{"fixture", o.fixture_name}, {"output", o.output}};
        r.text = o.fixture_name + " written to " + o.output + "\n";
    } else {
        r.result = instance_to_json(inst);
        r.text = instance_to_json(inst).dump(2) + "\n";
    }
    return r;
}

Report cmd_suite(const Options& o) {
    Report r;
    Json rows = Json::array();
    int failing = 0;
    for (const auto& c : run_acceptance(o.seed, o.only)) {
        rows.push_back({{"id", c.id}, {"name", c.name}, {"pass", c.pass}, {"detail", c.detail}, {"seconds", c.seconds}});
        r.text += format_result(c) + "\n";
        failing += !c.pass;
    }
    r.result = {{"seed", o.seed}, {"criteria", rows}, {"failing", failing}};
    r.text += failing ? "FAILED " + std::to_string(failing) + " criteria failing\n" : "ALL PASSED\n";
    if (failing) r.exit = kFalsified;
    return r;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Substitutes, inverse isotonicity and equilibrium flows on finite instances"};
    app.require_subcommand(1);
    Options o;
    app.add_flag("--json", o.json, "Machine-readable output");
    app.add_option("--seed", o.seed, "Seed for randomized suites")->capture_default_str();

    auto input = [&](CLI::App* c) { c->add_option("--input,-i", o.input, "Instance file")->required(); };
    auto cap = [&](CLI::App* c) { c->add_option("--cap", o.cap, "Per-arc flow cap for sampled networks"); };
    std::function<Report()> run;

    auto* check = app.add_subcommand("check", "Check properties of an instance");
    input(check);
    cap(check);
    check->add_option("--property,-p", o.properties, "Property name (repeatable); default ugs");
    check->add_flag("--collect-all", o.collect_all, "Record every failing tuple");
    check->add_option("--weights", o.weights, "Comma-separated weights for weighted monotonicity");
    check->callback([&] { run = [&] { return cmd_check(o); }; });

    auto* cls = app.add_subcommand("classify", "M / M0 taxonomy of an instance");
    input(cls);
    cap(cls);
    cls->callback([&] { run = [&] { return cmd_classify(o); }; });

    auto* inv = app.add_subcommand("invert", "Inverse correspondence as an instance file");
    input(inv);
    cap(inv);
    inv->add_option("--output,-o", o.output, "Write the inverse here");
    inv->callback([&] { run = [&] { return cmd_invert(o); }; });

    auto* lat = app.add_subcommand("lattice", "Lattice report: solution sets or equilibrium price closure");
    input(lat);
    cap(lat);
    lat->add_option("--target", o.target, "Comma-separated target quantity (default zero)");
    lat->add_subcommand("report", "Same as the bare command");
    lat->callback([&] { run = [&] { return cmd_lattice(o); }; });

    auto* flow = app.add_subcommand("flow", "Equilibrium flow problems");
    flow->require_subcommand(1);
    auto* fsolve = flow->add_subcommand("solve", "Solve for an equilibrium flow outcome");
    input(fsolve);
    fsolve->callback([&] { run = [&] { return cmd_flow_solve(o); }; });
    auto* fverify = flow->add_subcommand("verify", "Verify an outcome against the equilibrium conditions");
    input(fverify);
    fverify->add_option("--outcome", o.outcome, "Outcome file")->required();
    fverify->add_option("--eps", o.eps, "Tolerance (exact rational or decimal)")->capture_default_str();
    fverify->callback([&] { run = [&] { return cmd_flow_verify(o); }; });
    auto* fsample = flow->add_subcommand("sample", "Tabulate the equilibrium flow correspondence on a grid");
    input(fsample);
    cap(fsample);
    fsample->add_option("--output,-o", o.output, "Write the sampled correspondence here");
    fsample->callback([&] { run = [&] { return cmd_flow_sample(o); }; });

    auto* match = app.add_subcommand("match", "Matching markets");
    match->require_subcommand(1);
    auto* msolve = match->add_subcommand("solve", "Solve a matching market");
    input(msolve);
    msolve->add_option("--kind", o.kind, "Market kind")->required()->check(CLI::IsMember({"tu", "itu", "ntu"}));
    msolve->callback([&] { run = [&] { return cmd_match_solve(o); }; });

    auto* hed = app.add_subcommand("hedonic", "Hedonic pricing markets");
    hed->require_subcommand(1);
    auto* hsolve = hed->add_subcommand("solve", "Solve a hedonic pricing market");
    input(hsolve);
    hsolve->add_flag("--all", o.all, "Enumerate every equilibrium vertex");
    hsolve->add_option("--eps", o.eps, "Verification tolerance")->capture_default_str();
    hsolve->callback([&] { run = [&] { return cmd_hedonic_solve(o); }; });

    auto* fix = app.add_subcommand("fixtures", "List fixtures or emit one");
    fix->add_option("name", o.fixture_name, "Fixture name");
    fix->add_option("--output,-o", o.output, "Write the fixture here");
    fix->callback([&] { run = [&] { return cmd_fixtures(o); }; });

    auto* suite = app.add_subcommand("suite", "Run the acceptance battery");
    suite->add_option("--only", o.only, "Criterion ids to run")->check(CLI::Range(1, kCriteria));
    suite->callback([&] { run = [&] { return cmd_suite(o); }; });

    for (auto* sub : app.get_subcommands({})) {
        sub->fallthrough();
        for (auto* leaf : sub->get_subcommands({})) leaf->fallthrough();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kPass : kInputError;
    }

    std::string echo;
    for (int i = 1; i < argc; ++i) echo += std::string(i > 1 ? " " : "") + argv[i];
    const auto start = std::chrono::steady_clock::now();
    Report r;
    std::string error;
    try {
        r = run();
    } catch (const InputError& e) {
        r.exit = kInputError;
        error = e.what();
    } catch (const Inconclusive& e) {
        r.exit = kInconclusive;
        error = e.what();
    } catch (const InfeasibleError& e) {
        r.exit = kFalsified;
        error = e.what();
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    if (o.json) {
        Json out = {{"command", echo}, {"result", r.result}, {"seconds", seconds}, {"exit", r.exit}};
        if (!error.empty()) out["error"] = error;
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << r.text;
        if (!error.empty()) std::cerr << "error: " << error << "\n";
    }
    return r.exit;
}
