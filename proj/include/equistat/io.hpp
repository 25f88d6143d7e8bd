#pragma once

#include "equistat/conv.hpp"
#include "equistat/flow.hpp"
#include "equistat/latt.hpp"
#include "equistat/markets.hpp"

#include <json.hpp>

#include <string>

namespace equistat {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

struct InstanceFile {
    std::string kind;  // correspondence, producer, network, itu, ntu, hedonic, objective_table, logit
    Json payload;
    int schema_version = kSchemaVersion;
};

// Throws InputError on unreadable files, malformed JSON, unknown kinds and invalid payloads.
InstanceFile load(const std::string& path);
void save(const InstanceFile& inst, const std::string& path);
InstanceFile instance_from_json(const Json& j);
Json instance_to_json(const InstanceFile& inst);
// Parses the payload with its kind's loader and rethrows the first violated invariant.
void validate_instance(const InstanceFile& inst);

// Rationals are written as strings "a" or "a/b"; numbers are accepted on input.
Rat rat_from_json(const Json& j);
Json rat_to_json(const Rat& r);
Point point_from_json(const Json& j);
Json point_to_json(const Point& p);
std::vector<Rat> rats_from_json(const Json& j);
Json rats_to_json(const std::vector<Rat>& v);

FiniteCorrespondence correspondence_from_json(const Json& j);
Json correspondence_to_json(const FiniteCorrespondence& Q);

// Producer payloads may carry "grid_levels" for the price grid.
DiscreteProducer producer_from_json(const Json& j);
Json producer_to_json(const DiscreteProducer& p);
std::vector<Point> grid_from_json(const Json& j, std::size_t dim);

ConnectionFunction connection_from_json(const Json& j);
Json connection_to_json(const ConnectionFunction& g);
FlowProblem network_from_json(const Json& j);
Json network_to_json(const FlowProblem& prob);
FlowOutcome outcome_from_json(const Json& j, const Network& net);
Json outcome_to_json(const FlowOutcome& out, const Network& net);

ItuMarket itu_from_json(const Json& j);
Json itu_to_json(const ItuMarket& m);
NtuMarket ntu_from_json(const Json& j);
Json ntu_to_json(const NtuMarket& m);
HedonicMarket hedonic_from_json(const Json& j);
Json hedonic_to_json(const HedonicMarket& m);
ObjectiveTable objective_table_from_json(const Json& j);
Json objective_table_to_json(const ObjectiveTable& t);
LogitModel logit_from_json(const Json& j);
Json logit_to_json(const LogitModel& m);

Json matching_to_json(const Matching& m);
Json witness_to_json(const Witness& w);
Json verdict_to_json(const Verdict& v);
std::string render_witness(const Witness& w);
std::string render_verdict(const Verdict& v);

}  // namespace equistat
