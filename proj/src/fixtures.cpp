#include "equistat/fixtures.hpp"

#include "equistat/error.hpp"

#include <functional>
#include <map>

namespace equistat {

namespace {

using Matrix = std::vector<std::vector<Rat>>;

std::vector<Rat> levels(long lo, long hi) {
    std::vector<Rat> v;
    for (long i = lo; i <= hi; ++i) v.emplace_back(i);
    return v;
}

Point apply(const Matrix& M, const Point& p) {
    Point q(M.size());
    for (std::size_t i = 0; i < M.size(); ++i)
        for (std::size_t j = 0; j < p.size(); ++j) q[i] += M[i][j] * p[j];
    return q;
}

Matrix scaled(const Matrix& M, const Rat& s) {
    Matrix out = M;
    for (auto& row : out)
        for (auto& x : row) x *= s;
    return out;
}

Matrix transpose(const Matrix& M) {
    Matrix t(M[0].size(), std::vector<Rat>(M.size()));
    for (std::size_t i = 0; i < M.size(); ++i)
        for (std::size_t j = 0; j < M[i].size(); ++j) t[j][i] = M[i][j];
    return t;
}

Json matrix_json(const Matrix& M) {
    Json j = Json::array();
    for (const auto& row : M) j.push_back(rats_to_json(row));
    return j;
}

FiniteCorrespondence linear(const Matrix& M, const std::vector<Point>& grid) {
    return tabulate(M.size(), grid, [&](const Point& p) { return apply(M, p); });
}

Point pt(std::initializer_list<long> c) {
    std::vector<Rat> v;
    for (long x : c) v.emplace_back(x);
    return Point(std::move(v));
}

FiniteCorrespondence table(std::size_t dim, std::vector<std::pair<Point, std::vector<Point>>> rows) {
    return FiniteCorrespondence(dim, std::move(rows));
}

InstanceFile make(std::string kind, Json payload) { return InstanceFile{std::move(kind), std::move(payload)}; }

InstanceFile a2_sum_m0() {
    const Matrix M{{5, -1}, {-4, 1}};
    const Matrix MT = transpose(M);
    Matrix S = M;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) S[i][j] += MT[i][j];
    const auto grid = product_grid(2, levels(0, 2));
    Json j = correspondence_to_json(linear(S, grid));
    j["matrix"] = matrix_json(S);
    j["components"] = Json::array({correspondence_to_json(linear(M, grid)), correspondence_to_json(linear(MT, grid))});
    j["component_matrices"] = Json::array({matrix_json(M), matrix_json(MT)});
    j["grid_levels"] = rats_to_json(levels(0, 2));
    return make("correspondence", j);
}

InstanceFile a3_kelso_crawford() {
    auto Q = table(4, {{pt({1, 1, 2, 2}), {pt({1, 0, 1, 1}), pt({0, 1, 1, 0})}},
                       {pt({2, 2, 1, 1}), {pt({1, 1, 0, 1}), pt({0, 1, 1, 0})}},
                       {pt({1, 1, 1, 1}), {pt({1, 0, 0, 0}), pt({0, 0, 0, 1})}},
                       {pt({2, 2, 2, 2}), {pt({1, 1, 1, 0}), pt({0, 1, 1, 1})}}});
    return make("correspondence", correspondence_to_json(Q));
}

InstanceFile a4_ps_not_ugs() {
    auto Q = table(4, {{pt({1, 1, 2, 2}), {pt({0, 1, 2, 1})}},
                       {pt({2, 2, 1, 1}), {pt({1, 2, 2, 0})}},
                       {pt({1, 1, 1, 1}), {pt({1, 0, 2, 1})}},
                       {pt({2, 2, 2, 2}), {pt({0, 2, 2, 0})}}});
    return make("correspondence", correspondence_to_json(Q));
}

InstanceFile a4_ugs_not_ps() {
    auto Q = table(2, {{pt({1, 1}), {pt({1, 0}), pt({3, 0})}}, {pt({1, 2}), {pt({0, 0}), pt({2, 0})}}});
    return make("correspondence", correspondence_to_json(Q));
}

InstanceFile a6_topkis_not_ugs() {
    const Matrix Y = scaled(Matrix{{63, -28, -28}, {-28, 16, 12}, {-28, 12, 16}}, Rat(1, 28));
    const Matrix X{{4, 4, 4}, {4, 8, 1}, {4, 1, 8}};
    const auto grid = product_grid(3, levels(0, 2));
    auto Q = linear(Y, grid);
    std::vector<Point> qs;
    for (const auto& p : grid) qs.push_back(apply(Y, p));
    // g(p, q) = p.Xq - |p|^2 / 2 is maximized over p at p = Xq.
    auto g = make_table(grid, qs, [&](const Point& p, const Point& q) { return dot(p, apply(X, q)) - Rat(1, 2) * dot(p, p); });
    Json j = correspondence_to_json(Q);
    j["matrix"] = matrix_json(Y);
    j["inverse_matrix"] = matrix_json(X);
    j["objective_table"] = objective_table_to_json(g);
    j["grid_levels"] = rats_to_json(levels(0, 2));
    return make("correspondence", j);
}

InstanceFile a6_ugs_not_milgrom_shannon() {
    const auto grid = product_grid(2, levels(0, 5));
    auto Q = tabulate(2, grid, [](const Point& p) { return Point{p[1], p[0]}; });
    auto g = make_table(grid, grid, [](const Point& p, const Point& q) { return Rat(q == Point{p[1], p[0]} ? 1 : 0); });
    Json j = correspondence_to_json(Q);
    j["objective_table"] = objective_table_to_json(g);
    j["grid_levels"] = rats_to_json(levels(0, 5));
    return make("correspondence", j);
}

InstanceFile b1_simplex_argmax() {
    DiscreteProducer prod{2, {pt({1, 0}), pt({0, 1})}, {Rat(0), Rat(0)}};
    Json j = producer_to_json(prod);
    j["grid_levels"] = rats_to_json(levels(0, 2));
    return make("producer", j);
}

InstanceFile b2_kettle() {
    const Matrix C{{25, 10, 24}, {10, 5, 10}, {24, 10, 25}};
    const Matrix Cinv = scaled(Matrix{{50, -20, -40}, {-20, 98, -20}, {-40, -20, 50}}, Rat(1, 90));
    const auto grid = product_grid(3, levels(0, 2));
    Json j = correspondence_to_json(linear(scaled(Cinv, Rat(1, 2)), grid));
    j["C"] = matrix_json(C);
    j["C_inverse"] = matrix_json(Cinv);
    j["grid_levels"] = rats_to_json(levels(0, 2));
    return make("correspondence", j);
}

InstanceFile figure2_style_flow() {
    FlowProblem prob;
    prob.network.nodes = {"a", "b", "c"};
    prob.network.arcs = {
        {0, 1, ConnectionFunction::additive(Rat(1))},
        {1, 2, ConnectionFunction::affine(Rat(1, 2), Rat(1, 2))},
        {0, 2, ConnectionFunction::tabulated({{Rat(0), Rat(0)}, {Rat(2), Rat(1)}, {Rat(4), Rat(4)}})},
    };
    prob.q = {Rat(-1), Rat(0), Rat(1)};
    Json j = network_to_json(prob);
    j["grid_levels"] = rats_to_json(levels(0, 3));
    j["cap"] = 2;
    return make("network", j);
}

InstanceFile demo_ntu_2x2() {
    NtuMarket m;
    m.alpha = {{Rat(2), Rat(1)}, {Rat(1), Rat(2)}};
    m.gamma = {{Rat(1), Rat(2)}, {Rat(2), Rat(1)}};
    m.alpha0 = {Rat(0), Rat(0)};
    m.gamma0 = {Rat(0), Rat(0)};
    return make("ntu", ntu_to_json(m));
}

InstanceFile demo_tu_2x2() {
    ItuMarket m;
    m.n = {Rat(1), Rat(1)};
    m.m = {Rat(1), Rat(1)};
    m.with_singles = true;
    const long a[2][2] = {{3, 1}, {1, 2}};
    const long c[2][2] = {{1, 0}, {0, 1}};
    m.maps.assign(2, {});
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) m.maps[x].push_back(TransferMap::tu(Rat(a[x][y]), Rat(c[x][y])));
    return make("itu", itu_to_json(m));
}

InstanceFile demo_hedonic_1x1x1() {
    HedonicMarket m;
    m.n = {Rat(1)};
    m.m = {Rat(1)};
    m.qualities = 1;
    m.pi = {{{Rat(1), Rat(-1)}}};
    m.s = {{{Rat(3), Rat(1)}}};
    return make("hedonic", hedonic_to_json(m));
}

const std::map<std::string, std::function<InstanceFile()>>& catalog() {
    static const std::map<std::string, std::function<InstanceFile()>> c{
        {"a2_sum_m0", a2_sum_m0},
        {"a3_kelso_crawford", a3_kelso_crawford},
        {"a4_ps_not_ugs", a4_ps_not_ugs},
        {"a4_ugs_not_ps", a4_ugs_not_ps},
        {"a6_topkis_not_ugs", a6_topkis_not_ugs},
        {"a6_ugs_not_milgrom_shannon", a6_ugs_not_milgrom_shannon},
        {"b1_simplex_argmax", b1_simplex_argmax},
        {"b2_kettle", b2_kettle},
        {"figure2_style_flow", figure2_style_flow},
        {"demo_ntu_2x2", demo_ntu_2x2},
        {"demo_tu_2x2", demo_tu_2x2},
        {"demo_hedonic_1x1x1", demo_hedonic_1x1x1},
    };
    return c;
}

}  // namespace

const std::vector<std::string>& fixture_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& [k, _] : catalog()) v.push_back(k);
        return v;
    }();
    return names;
}

InstanceFile fixture(const std::string& name) {
    auto it = catalog().find(name);
    if (it == catalog().end()) throw InputError("unknown fixture '" + name + "'");
    return it->second();
}

FiniteCorrespondence to_correspondence(const InstanceFile& inst, std::optional<unsigned> cap_override) {
    const Json& j = inst.payload;
    if (inst.kind == "correspondence") return correspondence_from_json(j);
    if (inst.kind == "producer") {
        auto prod = producer_from_json(j);
        return argmax_correspondence(prod, grid_from_json(j, prod.dim));
    }
    if (inst.kind == "network") {
        auto prob = network_from_json(j);
        const unsigned cap = cap_override.value_or(j.value("cap", 1u));
        if (cap == 0) throw InputError("cap must be positive");
        return sample_equilibrium_correspondence(prob.network, grid_from_json(j, prob.network.size()), cap).Q;
    }
    if (inst.kind == "ntu") {
        auto m = ntu_from_json(j);
        auto grid = (j.contains("grid") || j.contains("grid_levels")) ? grid_from_json(j, m.women()) : ntu_candidate_grid(m);
        return ntu_tabulate(m, grid);
    }
    if (inst.kind == "objective_table") return argmax_table(objective_table_from_json(j));
    throw DomainError("instance kind '" + inst.kind + "' does not define a finite correspondence");
}

}  // namespace equistat
