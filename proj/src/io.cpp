#include "equistat/io.hpp"

#include "equistat/error.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace equistat {

namespace {

const std::set<std::string> kKinds{"correspondence", "producer", "network", "itu",
                                   "ntu",            "hedonic",  "objective_table", "logit"};

const Json& field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing field '") + key + "'");
    return j.at(key);
}

std::size_t size_field(const Json& j, const char* key) {
    const Json& v = field(j, key);
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long>() >= 0))
        throw InputError(std::string("field '") + key + "' must be a nonnegative integer");
    return v.get<std::size_t>();
}

std::vector<std::vector<Rat>> matrix_from_json(const Json& j) {
    if (!j.is_array()) throw InputError("expected a matrix");
    std::vector<std::vector<Rat>> m;
    for (const auto& row : j) m.push_back(rats_from_json(row));
    return m;
}

Json matrix_to_json(const std::vector<std::vector<Rat>>& m) {
    Json j = Json::array();
    for (const auto& row : m) j.push_back(rats_to_json(row));
    return j;
}

std::vector<std::pair<Rat, Rat>> pairs_from_json(const Json& j) {
    if (!j.is_array()) throw InputError("expected a list of breakpoint pairs");
    std::vector<std::pair<Rat, Rat>> out;
    for (const auto& e : j) {
        if (!e.is_array() || e.size() != 2) throw InputError("breakpoints are pairs");
        out.emplace_back(rat_from_json(e[0]), rat_from_json(e[1]));
    }
    return out;
}

Json pairs_to_json(const std::vector<std::pair<Rat, Rat>>& v) {
    Json j = Json::array();
    for (const auto& [a, b] : v) j.push_back(Json::array({rat_to_json(a), rat_to_json(b)}));
    return j;
}

// Node-indexed vector from an object keyed by node name or a plain array.
std::vector<Rat> node_vector(const Json& j, const Network& net, bool fill_missing) {
    if (j.is_array()) {
        auto v = rats_from_json(j);
        if (v.size() != net.size()) throw InputError("node vector must cover every node");
        return v;
    }
    if (!j.is_object()) throw InputError("node vector must be an object or an array");
    std::vector<std::optional<Rat>> v(net.size());
    for (const auto& [k, val] : j.items()) v[net.index_of(k)] = rat_from_json(val);
    std::vector<Rat> out;
    for (std::size_t z = 0; z < v.size(); ++z) {
        if (!v[z] && !fill_missing) throw InputError("node vector misses node '" + net.nodes[z] + "'");
        out.push_back(v[z].value_or(Rat(0)));
    }
    return out;
}

Json node_object(const std::vector<Rat>& v, const Network& net) {
    Json j = Json::object();
    for (std::size_t z = 0; z < v.size(); ++z) j[net.nodes[z]] = rat_to_json(v[z]);
    return j;
}

}  // namespace

// ---------------------------------------------------------------------------
// scalars

Rat rat_from_json(const Json& j) {
    if (j.is_string()) return Rat::parse(j.get<std::string>());
    if (j.is_number_integer()) return Rat(j.get<long>());
    if (j.is_number_unsigned()) return Rat(static_cast<long>(j.get<unsigned long>()));
    if (j.is_number_float()) return Rat::parse(j.dump());
    throw InputError("expected a rational, got " + j.dump());
}

Json rat_to_json(const Rat& r) { return r.str(); }

std::vector<Rat> rats_from_json(const Json& j) {
    if (!j.is_array()) throw InputError("expected an array of rationals, got " + j.dump());
    std::vector<Rat> v;
    for (const auto& e : j) v.push_back(rat_from_json(e));
    return v;
}

Json rats_to_json(const std::vector<Rat>& v) {
    Json j = Json::array();
    for (const auto& x : v) j.push_back(rat_to_json(x));
    return j;
}

Point point_from_json(const Json& j) { return Point(rats_from_json(j)); }
Json point_to_json(const Point& p) { return rats_to_json(p.coords()); }

// ---------------------------------------------------------------------------
// instance envelope

InstanceFile instance_from_json(const Json& j) {
    InstanceFile inst;
    if (!j.is_object()) throw InputError("instance must be a JSON object");
    inst.kind = field(j, "kind").get<std::string>();
    if (!kKinds.count(inst.kind)) throw InputError("unknown instance kind '" + inst.kind + "'");
    inst.schema_version = j.value("schema_version", kSchemaVersion);
    if (inst.schema_version != kSchemaVersion)
        throw InputError("unsupported schema_version " + std::to_string(inst.schema_version));
    inst.payload = field(j, "payload");
    validate_instance(inst);
    return inst;
}

Json instance_to_json(const InstanceFile& inst) {
    Json j;
    j["schema_version"] = inst.schema_version;
    j["kind"] = inst.kind;
    j["payload"] = inst.payload;
    return j;
}

void validate_instance(const InstanceFile& inst) {
    const Json& p = inst.payload;
    const std::string& k = inst.kind;
    if (k == "correspondence") correspondence_from_json(p);
    else if (k == "producer") producer_from_json(p);
    else if (k == "network") network_from_json(p);
    else if (k == "itu") itu_from_json(p);
    else if (k == "ntu") ntu_from_json(p);
    else if (k == "hedonic") hedonic_from_json(p);
    else if (k == "objective_table") objective_table_from_json(p);
    else if (k == "logit") logit_from_json(p);
    else throw InputError("unknown instance kind '" + k + "'");
}

InstanceFile load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path + "'");
    Json j;
    try {
        j = Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw InputError("'" + path + "' is not valid JSON: " + e.what());
    }
    try {
        return instance_from_json(j);
    } catch (const nlohmann::json::exception& e) {
        throw InputError("'" + path + "': " + e.what());
    }
}

void save(const InstanceFile& inst, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write '" + path + "'");
    out << instance_to_json(inst).dump(2) << '\n';
}

// ---------------------------------------------------------------------------
// correspondences and producers

FiniteCorrespondence correspondence_from_json(const Json& j) {
    const std::size_t dim = size_field(j, "dim");
    std::vector<FiniteCorrespondence::Entry> e;
    for (const auto& row : field(j, "map")) {
        std::vector<Point> qs;
        for (const auto& q : field(row, "qs")) qs.push_back(point_from_json(q));
        e.push_back({point_from_json(field(row, "p")), std::move(qs)});
    }
    return FiniteCorrespondence(dim, std::move(e));
}

Json correspondence_to_json(const FiniteCorrespondence& Q) {
    Json j;
    j["dim"] = Q.dim();
    Json map = Json::array();
    for (std::size_t i = 0; i < Q.size(); ++i) {
        Json qs = Json::array();
        for (const auto& q : Q.image(i)) qs.push_back(point_to_json(q));
        map.push_back({{"p", point_to_json(Q.domain()[i])}, {"qs", qs}});
    }
    j["map"] = map;
    return j;
}

DiscreteProducer producer_from_json(const Json& j) {
    DiscreteProducer p;
    p.dim = size_field(j, "dim");
    for (const auto& q : field(j, "points")) p.quantities.push_back(point_from_json(q));
    p.cost = rats_from_json(field(j, "cost"));
    p.validate();
    return p;
}

Json producer_to_json(const DiscreteProducer& p) {
    Json j;
    j["dim"] = p.dim;
    Json pts = Json::array();
    for (const auto& q : p.quantities) pts.push_back(point_to_json(q));
    j["points"] = pts;
    j["cost"] = rats_to_json(p.cost);
    return j;
}

std::vector<Point> grid_from_json(const Json& j, std::size_t dim) {
    if (j.contains("grid")) {
        std::vector<Point> g;
        for (const auto& p : j.at("grid")) g.push_back(point_from_json(p));
        return g;
    }
    if (j.contains("grid_levels")) {
        const Json& lv = j.at("grid_levels");
        if (!lv.empty() && lv.front().is_array()) {
            std::vector<std::vector<Rat>> per;
            for (const auto& l : lv) per.push_back(rats_from_json(l));
            if (per.size() != dim) throw InputError("grid_levels must give one level list per coordinate");
            return product_grid(per);
        }
        return product_grid(dim, rats_from_json(lv));
    }
    throw InputError("payload has no price grid ('grid' or 'grid_levels')");
}

// ---------------------------------------------------------------------------
// networks

ConnectionFunction connection_from_json(const Json& j) {
    const std::string type = field(j, "type").get<std::string>();
    ConnectionFunction g;
    if (type == "additive") g = ConnectionFunction::additive(rat_from_json(field(j, "c")));
    else if (type == "affine") g = ConnectionFunction::affine(rat_from_json(field(j, "a")), rat_from_json(field(j, "b")));
    else if (type == "tabulated") g = ConnectionFunction::tabulated(pairs_from_json(field(j, "breakpoints")));
    else throw InputError("unknown connection type '" + type + "'");
    g.strict_progress = j.value("strict_progress", false);
    return g;
}

Json connection_to_json(const ConnectionFunction& g) {
    Json j;
    j["type"] = to_string(g.kind);
    switch (g.kind) {
        case ConnectionFunction::Kind::additive: j["c"] = rat_to_json(g.c); break;
        case ConnectionFunction::Kind::affine:
            j["a"] = rat_to_json(g.a);
            j["b"] = rat_to_json(g.b);
            break;
        case ConnectionFunction::Kind::tabulated: j["breakpoints"] = pairs_to_json(g.table); break;
    }
    if (g.strict_progress) j["strict_progress"] = true;
    return j;
}

FlowProblem network_from_json(const Json& j) {
    FlowProblem prob;
    for (const auto& n : field(j, "nodes")) prob.network.nodes.push_back(n.get<std::string>());
    for (const auto& a : field(j, "arcs")) {
        Arc arc;
        arc.from = prob.network.index_of(field(a, "from").get<std::string>());
        arc.to = prob.network.index_of(field(a, "to").get<std::string>());
        arc.g = connection_from_json(field(a, "g"));
        prob.network.arcs.push_back(std::move(arc));
    }
    prob.network.validate();
    prob.q = j.contains("q") ? node_vector(j.at("q"), prob.network, true) : std::vector<Rat>(prob.network.size());
    prob.validate();
    return prob;
}

Json network_to_json(const FlowProblem& prob) {
    const Network& net = prob.network;
    Json j;
    j["nodes"] = net.nodes;
    Json arcs = Json::array();
    for (const auto& a : net.arcs)
        arcs.push_back({{"from", net.nodes[a.from]}, {"to", net.nodes[a.to]}, {"g", connection_to_json(a.g)}});
    j["arcs"] = arcs;
    j["q"] = node_object(prob.q, net);
    return j;
}

FlowOutcome outcome_from_json(const Json& j, const Network& net) {
    FlowOutcome out;
    out.q = node_vector(field(j, "q"), net, true);
    out.p = node_vector(field(j, "p"), net, false);
    const Json& mu = field(j, "mu");
    out.mu.assign(net.arcs.size(), Rat(0));
    if (!mu.is_array()) throw InputError("'mu' must be an array");
    if (!mu.empty() && mu.front().is_object()) {
        for (const auto& e : mu) {
            const std::size_t from = net.index_of(field(e, "from").get<std::string>());
            const std::size_t to = net.index_of(field(e, "to").get<std::string>());
            bool found = false;
            for (std::size_t a = 0; a < net.arcs.size(); ++a)
                if (net.arcs[a].from == from && net.arcs[a].to == to) {
                    out.mu[a] = rat_from_json(field(e, "flow"));
                    found = true;
                }
            if (!found) throw InputError("flow given on a missing arc");
        }
    } else {
        out.mu = rats_from_json(mu);
        if (out.mu.size() != net.arcs.size()) throw InputError("'mu' must cover every arc");
    }
    return out;
}

Json outcome_to_json(const FlowOutcome& out, const Network& net) {
    Json j;
    j["q"] = node_object(out.q, net);
    j["p"] = node_object(out.p, net);
    Json mu = Json::array();
    for (std::size_t a = 0; a < net.arcs.size(); ++a)
        mu.push_back({{"from", net.nodes[net.arcs[a].from]}, {"to", net.nodes[net.arcs[a].to]},
                      {"flow", rat_to_json(out.mu[a])}});
    j["mu"] = mu;
    return j;
}

// ---------------------------------------------------------------------------
// markets

ItuMarket itu_from_json(const Json& j) {
    ItuMarket m;
    const Json& counts = j.contains("counts") ? j.at("counts") : j;
    m.n = rats_from_json(field(counts, "n"));
    m.m = rats_from_json(field(counts, "m"));
    m.with_singles = j.value("with_singles", false);
    if (j.contains("maps")) {
        for (const auto& row : j.at("maps")) {
            std::vector<TransferMap> r;
            for (const auto& e : row) {
                TransferMap t;
                const std::string type = field(e, "type").get<std::string>();
                if (type == "tu") {
                    t = TransferMap::tu(rat_from_json(field(e, "alpha")), rat_from_json(field(e, "gamma")));
                } else if (type == "affine") {
                    t.kind = TransferMap::Kind::affine;
                    t.au = rat_from_json(field(e, "au"));
                    t.bu = rat_from_json(field(e, "bu"));
                    t.av = rat_from_json(field(e, "av"));
                    t.bv = rat_from_json(field(e, "bv"));
                } else if (type == "tabulated") {
                    t.kind = TransferMap::Kind::tabulated;
                    t.u_table = pairs_from_json(field(e, "u"));
                    t.v_table = pairs_from_json(field(e, "v"));
                } else {
                    throw InputError("unknown transfer map type '" + type + "'");
                }
                r.push_back(std::move(t));
            }
            m.maps.push_back(std::move(r));
        }
    } else {
        auto alpha = matrix_from_json(field(j, "alpha"));
        auto gamma = matrix_from_json(field(j, "gamma"));
        if (alpha.size() != gamma.size()) throw InputError("alpha and gamma must have the same shape");
        for (std::size_t x = 0; x < alpha.size(); ++x) {
            if (alpha[x].size() != gamma[x].size()) throw InputError("alpha and gamma must have the same shape");
            std::vector<TransferMap> r;
            for (std::size_t y = 0; y < alpha[x].size(); ++y) r.push_back(TransferMap::tu(alpha[x][y], gamma[x][y]));
            m.maps.push_back(std::move(r));
        }
    }
    m.validate();
    return m;
}

Json itu_to_json(const ItuMarket& m) {
    Json j;
    j["n"] = rats_to_json(m.n);
    j["m"] = rats_to_json(m.m);
    j["with_singles"] = m.with_singles;
    bool all_tu = true;
    for (const auto& row : m.maps)
        for (const auto& t : row) all_tu = all_tu && t.kind == TransferMap::Kind::tu;
    if (all_tu) {
        Json a = Json::array(), g = Json::array();
        for (const auto& row : m.maps) {
            Json ar = Json::array(), gr = Json::array();
            for (const auto& t : row) {
                ar.push_back(rat_to_json(t.alpha));
                gr.push_back(rat_to_json(t.gamma));
            }
            a.push_back(ar);
            g.push_back(gr);
        }
        j["alpha"] = a;
        j["gamma"] = g;
        return j;
    }
    Json maps = Json::array();
    for (const auto& row : m.maps) {
        Json r = Json::array();
        for (const auto& t : row) {
            switch (t.kind) {
                case TransferMap::Kind::tu:
                    r.push_back({{"type", "tu"}, {"alpha", rat_to_json(t.alpha)}, {"gamma", rat_to_json(t.gamma)}});
                    break;
                case TransferMap::Kind::affine:
                    r.push_back({{"type", "affine"}, {"au", rat_to_json(t.au)}, {"bu", rat_to_json(t.bu)},
                                 {"av", rat_to_json(t.av)}, {"bv", rat_to_json(t.bv)}});
                    break;
                case TransferMap::Kind::tabulated:
                    r.push_back({{"type", "tabulated"}, {"u", pairs_to_json(t.u_table)}, {"v", pairs_to_json(t.v_table)}});
                    break;
            }
        }
        maps.push_back(r);
    }
    j["maps"] = maps;
    return j;
}

NtuMarket ntu_from_json(const Json& j) {
    NtuMarket m;
    m.alpha = matrix_from_json(field(j, "alpha"));
    m.gamma = matrix_from_json(field(j, "gamma"));
    m.alpha0 = rats_from_json(field(j, "alpha0"));
    m.gamma0 = rats_from_json(field(j, "gamma0"));
    m.validate();
    return m;
}

Json ntu_to_json(const NtuMarket& m) {
    return {{"alpha", matrix_to_json(m.alpha)},
            {"alpha0", rats_to_json(m.alpha0)},
            {"gamma", matrix_to_json(m.gamma)},
            {"gamma0", rats_to_json(m.gamma0)}};
}

HedonicMarket hedonic_from_json(const Json& j) {
    HedonicMarket m;
    m.n = rats_from_json(field(j, "n"));
    m.m = rats_from_json(field(j, "m"));
    m.qualities = size_field(j, "qualities");
    for (const auto& row : field(j, "pi")) {
        std::vector<std::pair<Rat, Rat>> r;
        for (const auto& e : row) r.emplace_back(rat_from_json(field(e, "a")), rat_from_json(field(e, "b")));
        m.pi.push_back(std::move(r));
    }
    for (const auto& row : field(j, "s")) {
        std::vector<std::pair<Rat, Rat>> r;
        for (const auto& e : row) r.emplace_back(rat_from_json(field(e, "d")), rat_from_json(field(e, "e")));
        m.s.push_back(std::move(r));
    }
    m.validate();
    return m;
}

Json hedonic_to_json(const HedonicMarket& m) {
    Json pi = Json::array(), s = Json::array();
    for (const auto& row : m.pi) {
        Json r = Json::array();
        for (const auto& [a, b] : row) r.push_back({{"a", rat_to_json(a)}, {"b", rat_to_json(b)}});
        pi.push_back(r);
    }
    for (const auto& row : m.s) {
        Json r = Json::array();
        for (const auto& [d, e] : row) r.push_back({{"d", rat_to_json(d)}, {"e", rat_to_json(e)}});
        s.push_back(r);
    }
    return {{"n", rats_to_json(m.n)}, {"m", rats_to_json(m.m)}, {"qualities", m.qualities}, {"pi", pi}, {"s", s}};
}

ObjectiveTable objective_table_from_json(const Json& j) {
    ObjectiveTable t;
    for (const auto& p : field(j, "p_grid")) t.p_grid.push_back(point_from_json(p));
    for (const auto& q : field(j, "q_grid")) t.q_grid.push_back(point_from_json(q));
    t.values = rats_from_json(field(j, "values"));
    t.validate();
    return t;
}

Json objective_table_to_json(const ObjectiveTable& t) {
    Json pg = Json::array(), qg = Json::array();
    for (const auto& p : t.p_grid) pg.push_back(point_to_json(p));
    for (const auto& q : t.q_grid) qg.push_back(point_to_json(q));
    return {{"p_grid", pg}, {"q_grid", qg}, {"values", rats_to_json(t.values)}};
}

LogitModel logit_from_json(const Json& j) {
    LogitModel m;
    m.goods = size_field(j, "goods");
    m.counts = rats_from_json(field(j, "counts"));
    m.slope = matrix_from_json(field(j, "slope"));
    m.intercept = matrix_from_json(field(j, "intercept"));
    if (j.contains("normalized_price") && !j.at("normalized_price").is_null())
        m.normalized_price = rat_from_json(j.at("normalized_price"));
    m.validate();
    return m;
}

Json logit_to_json(const LogitModel& m) {
    Json j{{"goods", m.goods},
           {"counts", rats_to_json(m.counts)},
           {"slope", matrix_to_json(m.slope)},
           {"intercept", matrix_to_json(m.intercept)}};
    if (m.normalized_price) j["normalized_price"] = rat_to_json(*m.normalized_price);
    return j;
}

// ---------------------------------------------------------------------------
// reports

Json matching_to_json(const Matching& m) {
    Json w = Json::array();
    for (const auto& row : m.w) {
        Json r = Json::array();
        for (const auto& x : row) r.push_back(x ? rat_to_json(*x) : Json());
        w.push_back(r);
    }
    return {{"mu", matrix_to_json(m.mu)}, {"mu_x0", rats_to_json(m.mu_x0)}, {"mu_0y", rats_to_json(m.mu_0y)}, {"w", w}};
}

Json witness_to_json(const Witness& w) {
    Json j = Json::object();
    auto put = [&](const char* key, const std::optional<Point>& p) {
        if (p) j[key] = point_to_json(*p);
    };
    put("p", w.p);
    put("p_prime", w.p_prime);
    put("q", w.q);
    put("q_prime", w.q_prime);
    put("q_meet", w.q_meet);
    put("q_join", w.q_join);
    put("weights", w.weights);
    put("delta", w.delta);
    if (w.coordinate) j["coordinate"] = *w.coordinate;
    if (w.subset) j["subset"] = *w.subset;
    if (!w.note.empty()) j["note"] = w.note;
    return j;
}

Json verdict_to_json(const Verdict& v) {
    Json j;
    j["property"] = v.property;
    j["holds"] = v.holds;
    j["applicable"] = v.applicable;
    if (v.witness) j["witness"] = witness_to_json(*v.witness);
    if (!v.failures.empty()) {
        Json f = Json::array();
        for (const auto& w : v.failures) f.push_back(witness_to_json(w));
        j["failures"] = f;
    }
    if (!v.note.empty()) j["note"] = v.note;
    return j;
}

std::string render_witness(const Witness& w) {
    std::ostringstream os;
    auto put = [&](const char* key, const std::optional<Point>& p) {
        if (p) os << ' ' << key << '=' << p->str();
    };
    put("p", w.p);
    put("p'", w.p_prime);
    put("q", w.q);
    put("q'", w.q_prime);
    put("q_meet", w.q_meet);
    put("q_join", w.q_join);
    put("k", w.weights);
    put("delta", w.delta);
    if (w.coordinate) os << " coordinate=" << *w.coordinate + 1;
    if (w.subset) {
        os << " subset={";
        for (std::size_t i = 0; i < w.subset->size(); ++i) os << (i ? "," : "") << (*w.subset)[i] + 1;
        os << '}';
    }
    if (!w.note.empty()) os << " (" << w.note << ')';
    std::string s = os.str();
    return s.empty() ? s : s.substr(1);
}

std::string render_verdict(const Verdict& v) {
    std::ostringstream os;
    os << v.property << ": " << (!v.applicable ? "not applicable" : v.holds ? "holds" : "fails");
    if (v.witness) os << "\n  witness: " << render_witness(*v.witness);
    if (v.failures.size() > 1) os << "\n  failing tuples: " << v.failures.size();
    if (!v.note.empty()) os << "\n  note: " << v.note;
    return os.str();
}

}  // namespace equistat
