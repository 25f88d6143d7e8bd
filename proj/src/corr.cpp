#include "equistat/corr.hpp"

#include "encoding.hpp"
#include "equistat/error.hpp"
#include "equistat/lp.hpp"

#include <algorithm>
#include <set>

namespace equistat {

using detail::eq_r;
using detail::leq_r;
using detail::npos;

// ---------------------------------------------------------------------------
// FiniteCorrespondence

FiniteCorrespondence::FiniteCorrespondence(std::size_t dim, std::vector<Entry> entries) : dim_(dim) {
    if (entries.empty()) throw InputError("correspondence has an empty domain");
    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) { return a.first < b.first; });
    for (std::size_t i = 0; i < entries.size(); ++i) {
        auto& [p, qs] = entries[i];
        if (p.size() != dim) throw InputError("price point " + p.str() + " has wrong dimension");
        if (i && entries[i - 1].first == p) throw InputError("duplicate price point " + p.str());
        if (qs.empty()) throw InputError("empty image at " + p.str());
        for (const auto& q : qs)
            if (q.size() != dim) throw InputError("quantity " + q.str() + " at " + p.str() + " has wrong dimension");
        std::sort(qs.begin(), qs.end());
        qs.erase(std::unique(qs.begin(), qs.end()), qs.end());
        index_.emplace(p, i);
        domain_.push_back(std::move(p));
        images_.push_back(std::move(qs));
    }
    enc_ = std::make_shared<detail::Encoding>(detail::build_encoding(dim_, domain_, images_));
}

std::optional<std::size_t> FiniteCorrespondence::find(const Point& p) const {
    auto it = index_.find(p);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

const std::vector<Point>& FiniteCorrespondence::image_of(const Point& p) const {
    auto i = find(p);
    if (!i) throw InputError("price " + p.str() + " not in domain");
    return images_[*i];
}

bool FiniteCorrespondence::contains(const Point& p, const Point& q) const {
    auto i = find(p);
    if (!i) return false;
    return std::binary_search(images_[*i].begin(), images_[*i].end(), q);
}

bool FiniteCorrespondence::point_valued() const {
    return std::all_of(images_.begin(), images_.end(), [](const auto& im) { return im.size() == 1; });
}

std::size_t FiniteCorrespondence::graph_size() const {
    std::size_t s = 0;
    for (const auto& im : images_) s += im.size();
    return s;
}

std::vector<FiniteCorrespondence::Entry> FiniteCorrespondence::entries() const {
    std::vector<Entry> e;
    e.reserve(domain_.size());
    for (std::size_t i = 0; i < domain_.size(); ++i) e.push_back({domain_[i], images_[i]});
    return e;
}

// ---------------------------------------------------------------------------
// names

std::string to_string(Substitutes s) {
    switch (s) {
        case Substitutes::ugs: return "ugs";
        case Substitutes::ugs_strong_antecedent: return "ugs_strong_antecedent";
        case Substitutes::kelso_crawford: return "kelso_crawford";
        case Substitutes::polterovich_spivak: return "polterovich_spivak";
        case Substitutes::wgs_function: return "wgs_function";
    }
    return "?";
}

std::string to_string(Monotonicity m) {
    switch (m) {
        case Monotonicity::nonreversing: return "nonreversing";
        case Monotonicity::strongly_nonreversing: return "strongly_nonreversing";
        case Monotonicity::constant_aggregate_output: return "constant_aggregate_output";
        case Monotonicity::monotone_total_output: return "monotone_total_output";
        case Monotonicity::aggregate_monotonicity: return "aggregate_monotonicity";
        case Monotonicity::weighted_monotonicity: return "weighted_monotonicity";
        case Monotonicity::walras: return "walras";
        case Monotonicity::p_correspondence: return "p_correspondence";
        case Monotonicity::p_function: return "p_function";
        case Monotonicity::bgh3: return "bgh3";
    }
    return "?";
}

std::optional<Substitutes> parse_substitutes(const std::string& s) {
    for (auto v : {Substitutes::ugs, Substitutes::ugs_strong_antecedent, Substitutes::kelso_crawford,
                   Substitutes::polterovich_spivak, Substitutes::wgs_function})
        if (to_string(v) == s) return v;
    return std::nullopt;
}

std::optional<Monotonicity> parse_monotonicity(const std::string& s) {
    for (auto v : {Monotonicity::nonreversing, Monotonicity::strongly_nonreversing,
                   Monotonicity::constant_aggregate_output, Monotonicity::monotone_total_output,
                   Monotonicity::aggregate_monotonicity, Monotonicity::weighted_monotonicity, Monotonicity::walras,
                   Monotonicity::p_correspondence, Monotonicity::p_function, Monotonicity::bgh3})
        if (to_string(v) == s) return v;
    return std::nullopt;
}

std::string to_string(Label l) {
    switch (l) {
        case Label::m_function: return "M-function";
        case Label::m0_function: return "M0-function";
        case Label::m_correspondence: return "M-correspondence";
        case Label::m0_correspondence: return "M0-correspondence";
        case Label::none: return "none";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// lattice structure

std::pair<Point, Point> lattice_ops(const Point& p, const Point& p_prime) { return {meet(p, p_prime), join(p, p_prime)}; }

Verdict validate_grid(const std::vector<Point>& grid) {
    Verdict v{.property = "sublattice"};
    std::set<Point> s(grid.begin(), grid.end());
    std::vector<Point> pts(s.begin(), s.end());
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            auto [m, J] = lattice_ops(pts[i], pts[j]);
            bool hm = s.count(m) > 0, hj = s.count(J) > 0;
            if (hm && hj) continue;
            Witness w{.p = pts[i], .p_prime = pts[j]};
            if (!hm) w.q_meet = m;
            if (!hj) w.q_join = J;
            w.note = !hm ? "meet " + m.str() + " missing" : "join " + J.str() + " missing";
            if (!hm && !hj) w.note += "; join " + J.str() + " missing";
            v.holds = false;
            v.witness = std::move(w);
            return v;
        }
    return v;
}

Verdict validate_domain(const FiniteCorrespondence& Q) {
    const auto& e = Q.encoding();
    Verdict v{.property = "sublattice"};
    for (std::size_t i = 0; i < e.g; ++i)
        for (std::size_t j = i + 1; j < e.g; ++j) {
            bool hm = e.meet(i, j) != npos, hj = e.join(i, j) != npos;
            if (hm && hj) continue;
            auto [m, J] = lattice_ops(Q.domain()[i], Q.domain()[j]);
            Witness w{.p = Q.domain()[i], .p_prime = Q.domain()[j]};
            if (!hm) w.q_meet = m;
            if (!hj) w.q_join = J;
            w.note = !hm ? "meet " + m.str() + " missing" : "join " + J.str() + " missing";
            if (!hm && !hj) w.note += "; join " + J.str() + " missing";
            v.holds = false;
            v.witness = std::move(w);
            return v;
        }
    return v;
}

void require_sublattice(const FiniteCorrespondence& Q) {
    auto v = validate_domain(Q);
    if (!v.holds) throw DomainError("price domain is not a sublattice: " + v.witness->p->str() + ", " +
                                    v.witness->p_prime->str() + " (" + v.witness->note + ")");
}

std::vector<Point> product_grid(const std::vector<std::vector<Rat>>& levels) {
    std::vector<Point> out{Point()};
    for (const auto& lv : levels) {
        std::vector<Point> next;
        next.reserve(out.size() * lv.size());
        for (const auto& p : out)
            for (const auto& x : lv) {
                auto c = p.coords();
                c.push_back(x);
                next.emplace_back(std::move(c));
            }
        out = std::move(next);
    }
    return out;
}

std::vector<Point> product_grid(std::size_t dim, const std::vector<Rat>& levels) {
    return product_grid(std::vector<std::vector<Rat>>(dim, levels));
}

// ---------------------------------------------------------------------------
// checker plumbing

namespace {

class Recorder {
public:
    Recorder(std::string name, const CheckOptions& o) : opts_(o) { v_.property = std::move(name); }
    // Returns true when scanning should stop.
    bool fail(Witness w) {
        v_.holds = false;
        if (!v_.witness) v_.witness = w;
        if (opts_.collect_all && v_.failures.size() < opts_.max_failures) v_.failures.push_back(std::move(w));
        return !opts_.collect_all;
    }
    bool stopped() const { return !v_.holds && !opts_.collect_all; }
    Verdict take() { return std::move(v_); }
    Verdict& verdict() { return v_; }

private:
    const CheckOptions& opts_;
    Verdict v_;
};

struct Bits {
    std::vector<std::uint64_t> w;
    explicit Bits(std::size_t n = 0) : w((n + 63) / 64, 0) {}
    void set(std::size_t i) { w[i / 64] |= std::uint64_t{1} << (i % 64); }
    bool intersects(const Bits& o) const {
        for (std::size_t k = 0; k < w.size(); ++k)
            if (w[k] & o.w[k]) return true;
        return false;
    }
};

// For each q in Q(src): set of h in Q(dst) with h_z >= q_z (ge) or h_z <= q_z (!ge) on coordinates in mask.
std::vector<Bits> dominance(const detail::Encoding& e, std::size_t src, std::size_t dst, const std::vector<char>& mask,
                            bool ge) {
    const std::size_t n = e.n, a = e.count(src), b = e.count(dst);
    std::vector<Bits> out(a, Bits(b));
    for (std::size_t k = 0; k < a; ++k) {
        const int* q = e.q(src, k);
        for (std::size_t h = 0; h < b; ++h) {
            const int* r = e.q(dst, h);
            bool ok = true;
            for (std::size_t z = 0; z < n && ok; ++z)
                if (mask[z]) ok = ge ? r[z] >= q[z] : r[z] <= q[z];
            if (ok) out[k].set(h);
        }
    }
    return out;
}

std::size_t first_bit(const Bits& a, const Bits& b) {
    for (std::size_t k = 0; k < a.w.size(); ++k)
        if (auto x = a.w[k] & b.w[k]) return k * 64 + static_cast<std::size_t>(__builtin_ctzll(x));
    return npos;
}

Verdict check_ugs(const FiniteCorrespondence& Q, bool strong, const CheckOptions& opts) {
    const auto& e = Q.encoding();
    const std::size_t n = e.n;
    Recorder rec(strong ? "ugs_strong_antecedent" : "ugs", opts);
    const bool point_valued = Q.point_valued();
    std::vector<char> S(n), T(n);
    for (std::size_t i = 0; i < e.g && !rec.stopped(); ++i)
        for (std::size_t j = 0; j < e.g && !rec.stopped(); ++j) {
            const int* p = e.p(i);
            const int* pp = e.p(j);
            if (!strong && leq_r(p, pp, n)) continue;  // q^meet = q and q^join = q' suffice
            for (std::size_t z = 0; z < n; ++z) {
                S[z] = p[z] <= pp[z];
                T[z] = strong ? pp[z] <= p[z] : pp[z] < p[z];
            }
            const std::size_t mi = e.meet(i, j), ji = e.join(i, j);
            if (point_valued) {
                const int *q = e.q(i, 0), *qp = e.q(j, 0), *hm = e.q(mi, 0), *hj = e.q(ji, 0);
                bool okm = true, okj = true;
                for (std::size_t z = 0; z < n; ++z) {
                    if (S[z]) okm = okm && q[z] <= hm[z], okj = okj && hj[z] <= qp[z];
                    if (T[z]) okm = okm && qp[z] <= hm[z], okj = okj && hj[z] <= q[z];
                }
                if (okm && okj) continue;
                Witness w{.p = Q.domain()[i], .p_prime = Q.domain()[j], .q = Q.image(i)[0], .q_prime = Q.image(j)[0]};
                if (okm) w.q_meet = Q.image(mi)[0];
                if (okj) w.q_join = Q.image(ji)[0];
                w.note = !okm ? "no admissible q^meet in Q(p meet p')" : "no admissible q^join in Q(p join p')";
                if (!okm && !okj) w.note += "; no admissible q^join in Q(p join p')";
                rec.fail(std::move(w));
                continue;
            }
            // lower bounds for q^meet: q on S, q' on T; upper bounds for q^join: q' on S, q on T
            auto loQ = dominance(e, i, mi, S, true);
            auto loQp = dominance(e, j, mi, T, true);
            auto upQp = dominance(e, j, ji, S, false);
            auto upQ = dominance(e, i, ji, T, false);
            for (std::size_t a = 0; a < e.count(i) && !rec.stopped(); ++a)
                for (std::size_t b = 0; b < e.count(j) && !rec.stopped(); ++b) {
                    std::size_t hm = first_bit(loQ[a], loQp[b]);
                    std::size_t hj = first_bit(upQp[b], upQ[a]);
                    if (hm != npos && hj != npos) continue;
                    Witness w{.p = Q.domain()[i], .p_prime = Q.domain()[j], .q = Q.image(i)[a], .q_prime = Q.image(j)[b]};
                    if (hm != npos) w.q_meet = Q.image(mi)[hm];
                    if (hj != npos) w.q_join = Q.image(ji)[hj];
                    if (hm == npos && hj == npos)
                        w.note = "no admissible q^meet in Q(p meet p') and no admissible q^join in Q(p join p')";
                    else if (hm == npos)
                        w.note = "no admissible q^meet in Q(p meet p')";
                    else
                        w.note = "no admissible q^join in Q(p join p')";
                    rec.fail(std::move(w));
                }
        }
    return rec.take();
}

Verdict check_kelso_crawford(const FiniteCorrespondence& Q, const CheckOptions& opts) {
    const auto& e = Q.encoding();
    const std::size_t n = e.n;
    Recorder rec("kelso_crawford", opts);
    for (std::size_t i = 0; i < e.g && !rec.stopped(); ++i)
        for (std::size_t j = 0; j < e.g && !rec.stopped(); ++j) {
            const int* p = e.p(i);
            const int* pp = e.p(j);
            if (!leq_r(pp, p, n)) continue;
            for (std::size_t a = 0; a < e.count(i) && !rec.stopped(); ++a) {
                const int* q = e.q(i, a);
                bool found = false;
                for (std::size_t b = 0; b < e.count(j) && !found; ++b) {
                    const int* qp = e.q(j, b);
                    bool ok = true;
                    for (std::size_t z = 0; z < n && ok; ++z)
                        if (p[z] == pp[z]) ok = qp[z] >= q[z];
                    found = ok;
                }
                if (!found)
                    rec.fail({.p = Q.domain()[i], .p_prime = Q.domain()[j], .q = Q.image(i)[a],
                              .note = "no q' in Q(p') weakly above q on the unchanged prices"});
            }
        }
    return rec.take();
}

Verdict check_polterovich_spivak(const FiniteCorrespondence& Q, const CheckOptions& opts) {
    const auto& e = Q.encoding();
    const std::size_t n = e.n;
    Recorder rec("polterovich_spivak", opts);
    for (std::size_t i = 0; i < e.g && !rec.stopped(); ++i)
        for (std::size_t j = 0; j < e.g && !rec.stopped(); ++j) {
            const int* p = e.p(i);
            const int* pp = e.p(j);
            if (!leq_r(p, pp, n)) continue;
            bool any_eq = false;
            for (std::size_t z = 0; z < n; ++z) any_eq = any_eq || p[z] == pp[z];
            if (!any_eq) continue;  // no unchanged price to compare
            for (std::size_t a = 0; a < e.count(i) && !rec.stopped(); ++a)
                for (std::size_t b = 0; b < e.count(j) && !rec.stopped(); ++b) {
                    const int* q = e.q(i, a);
                    const int* qp = e.q(j, b);
                    bool all_up = true;
                    for (std::size_t z = 0; z < n && all_up; ++z)
                        if (p[z] == pp[z]) all_up = qp[z] > q[z];
                    if (all_up)
                        rec.fail({.p = Q.domain()[i], .p_prime = Q.domain()[j], .q = Q.image(i)[a],
                                  .q_prime = Q.image(j)[b],
                                  .note = "every unchanged-price quantity strictly increases"});
                }
        }
    return rec.take();
}

Verdict check_wgs(const FiniteCorrespondence& Q, const CheckOptions& opts) {
    if (!Q.point_valued()) throw DomainError("wgs_function requires a point-valued correspondence");
    const auto& e = Q.encoding();
    const std::size_t n = e.n;
    Recorder rec("wgs_function", opts);
    for (std::size_t i = 0; i < e.g && !rec.stopped(); ++i)
        for (std::size_t j = 0; j < e.g && !rec.stopped(); ++j) {
            if (i == j) continue;
            const int* p = e.p(i);
            const int* pp = e.p(j);
            if (!leq_r(p, pp, n)) continue;
            const int* q = e.q(i, 0);
            const int* qp = e.q(j, 0);
            for (std::size_t z = 0; z < n; ++z)
                if (p[z] == pp[z] && qp[z] > q[z]) {
                    rec.fail({.p = Q.domain()[i], .p_prime = Q.domain()[j], .q = Q.image(i)[0], .q_prime = Q.image(j)[0],
                              .coordinate = z, .note = "own price fixed, other prices rose, quantity rose"});
                    break;
                }
        }
    return rec.take();
}

}  // namespace

Verdict check_substitutes(const FiniteCorrespondence& Q, Substitutes notion, const CheckOptions& opts) {
    require_sublattice(Q);
    switch (notion) {
        case Substitutes::ugs: return check_ugs(Q, false, opts);
        case Substitutes::ugs_strong_antecedent: return check_ugs(Q, true, opts);
        case Substitutes::kelso_crawford: return check_kelso_crawford(Q, opts);
        case Substitutes::polterovich_spivak: return check_polterovich_spivak(Q, opts);
        case Substitutes::wgs_function: return check_wgs(Q, opts);
    }
    throw InputError("unknown substitutes notion");
}

// ---------------------------------------------------------------------------
// monotonicity

std::optional<Point> weighted_certificate(const Point& q, const Point& q_meet, const Point& q_join, const Point& q_prime) {
    Point a = q - q_meet, b = q_join - q_prime;
    const std::size_t n = q.size();
    if (sum(a).sign() >= 0 && sum(b).sign() >= 0) {
        Point k(n);
        for (std::size_t z = 0; z < n; ++z) k[z] = 1;
        return k;
    }
    // k = 1 + s with s >= 0
    std::vector<std::vector<Rat>> A{a.coords(), b.coords()};
    std::vector<Rat> rhs{-sum(a), -sum(b)};
    auto s = lp_feasible(A, rhs);
    if (!s) return std::nullopt;
    Point k(n);
    for (std::size_t z = 0; z < n; ++z) k[z] = Rat(1) + (*s)[z];
    return k;
}

std::optional<Witness> weighted_monotonicity_tuple(const FiniteCorrespondence& Q, const Point& p, const Point& p_prime,
                                                   const Point& q, const Point& q_prime) {
    const auto& M = Q.image_of(meet(p, p_prime));
    const auto& J = Q.image_of(join(p, p_prime));
    for (const auto& hm : M)
        for (const auto& hj : J)
            if (auto k = weighted_certificate(q, hm, hj, q_prime))
                return Witness{.p = p, .p_prime = p_prime, .q = q, .q_prime = q_prime, .q_meet = hm, .q_join = hj, .weights = k};
    return std::nullopt;
}

namespace {

Verdict check_nonreversing(const FiniteCorrespondence& Q, bool strongly, const std::string& name,
                           const CheckOptions& opts) {
    const auto& e = Q.encoding();
    const std::size_t n = e.n;
    Recorder rec(name, opts);
    for (std::size_t i = 0; i < e.g && !rec.stopped(); ++i)
        for (std::size_t j = 0; j < e.g && !rec.stopped(); ++j) {
            if (i == j) continue;
            if (!leq_r(e.p(j), e.p(i), n)) continue;  // p >= p'
            for (std::size_t a = 0; a < e.count(i) && !rec.stopped(); ++a)
                for (std::size_t b = 0; b < e.count(j) && !rec.stopped(); ++b) {
                    const int* q = e.q(i, a);
                    const int* qp = e.q(j, b);
                    if (!leq_r(q, qp, n)) continue;
                    if (strongly) {
                        rec.fail({.p = Q.domain()[i], .p_prime = Q.domain()[j], .q = Q.image(i)[a], .q_prime = Q.image(j)[b],
                                  .note = "q <= q' with p >= p' and p != p'"});
                        continue;
                    }
                    bool in1 = e.find_q(j, q) != npos;
                    bool in2 = e.find_q(i, qp) != npos;
                    if (in1 && in2) continue;
                    rec.fail({.p = Q.domain()[i], .p_prime = Q.domain()[j], .q = Q.image(i)[a], .q_prime = Q.image(j)[b],
                              .note = !in1 ? "q not in Q(p')" : "q' not in Q(p)"});
                }
        }
    return rec.take();
}

Verdict check_mto(const FiniteCorrespondence& Q, const CheckOptions& opts) {
    const auto& e = Q.encoding();
    Recorder rec("monotone_total_output", opts);
    std::vector<std::vector<Rat>> sums(e.g);
    for (std::size_t i = 0; i < e.g; ++i)
        for (const auto& q : Q.image(i)) sums[i].push_back(sum(q));
    for (std::size_t i = 0; i < e.g && !rec.stopped(); ++i)
        for (std::size_t j = 0; j < e.g && !rec.stopped(); ++j) {
            if (!leq_r(e.p(j), e.p(i), e.n)) continue;
            for (std::size_t a = 0; a < e.count(i) && !rec.stopped(); ++a)
                for (std::size_t b = 0; b < e.count(j) && !rec.stopped(); ++b)
                    if (sums[i][a] < sums[j][b])
                        rec.fail({.p = Q.domain()[i], .p_prime = Q.domain()[j], .q = Q.image(i)[a], .q_prime = Q.image(j)[b],
                                  .note = "p >= p' but total output falls"});
        }
    return rec.take();
}

Verdict check_am(const FiniteCorrespondence& Q, const CheckOptions& opts) {
    const auto& e = Q.encoding();
    const std::size_t n = e.n;
    Recorder rec("aggregate_monotonicity", opts);
    for (std::size_t i = 0; i < e.g && !rec.stopped(); ++i)
        for (std::size_t j = 0; j < e.g && !rec.stopped(); ++j) {
            if (!leq_r(e.p(j), e.p(i), n)) continue;
            for (std::size_t a = 0; a < e.count(i) && !rec.stopped(); ++a)
                for (std::size_t b = 0; b < e.count(j) && !rec.stopped(); ++b) {
                    const int* q = e.q(i, a);
                    const int* qp = e.q(j, b);
                    if (leq_r(q, qp, n) && !eq_r(q, qp, n))
                        rec.fail({.p = Q.domain()[i], .p_prime = Q.domain()[j], .q = Q.image(i)[a], .q_prime = Q.image(j)[b],
                                  .note = "p >= p' and q < q'"});
                }
        }
    return rec.take();
}

Verdict check_wm(const FiniteCorrespondence& Q, const CheckOptions& opts) {
    const auto& e = Q.encoding();
    const std::size_t n = e.n;
    Recorder rec("weighted_monotonicity", opts);
    for (std::size_t i = 0; i < e.g && !rec.stopped(); ++i)
        for (std::size_t j = 0; j < e.g && !rec.stopped(); ++j) {
            if (leq_r(e.p(i), e.p(j), n)) continue;  // q^meet = q, q^join = q', k = 1
            const std::size_t mi = e.meet(i, j), ji = e.join(i, j);
            for (std::size_t a = 0; a < e.count(i) && !rec.stopped(); ++a)
                for (std::size_t b = 0; b < e.count(j) && !rec.stopped(); ++b) {
                    const auto& q = Q.image(i)[a];
                    const auto& qp = Q.image(j)[b];
                    bool found = false;
                    for (const auto& hm : Q.image(mi)) {
                        for (const auto& hj : Q.image(ji))
                            if (weighted_certificate(q, hm, hj, qp)) {
                                found = true;
                                break;
                            }
                        if (found) break;
                    }
                    if (!found)
                        rec.fail({.p = Q.domain()[i], .p_prime = Q.domain()[j], .q = q, .q_prime = qp,
                                  .note = "no k >= 1 for any (q^meet, q^join)"});
                }
        }
    return rec.take();
}

Verdict check_bgh3(const FiniteCorrespondence& Q, const CheckOptions& opts) {
    const auto& e = Q.encoding();
    const std::size_t n = e.n;
    Recorder rec("bgh3", opts);
    for (std::size_t i = 0; i < e.g && !rec.stopped(); ++i)
        for (std::size_t j = 0; j < e.g && !rec.stopped(); ++j) {
            if (i == j || !leq_r(e.p(j), e.p(i), n)) continue;
            std::vector<std::size_t> B;
            for (std::size_t z = 0; z < n; ++z)
                if (e.p(i)[z] == e.p(j)[z]) B.push_back(z);
            for (std::size_t a = 0; a < e.count(i) && !rec.stopped(); ++a)
                for (std::size_t b = 0; b < e.count(j) && !rec.stopped(); ++b) {
                    const int* q = e.q(i, a);
                    const int* qp = e.q(j, b);
                    if (!leq_r(q, qp, n)) continue;
                    bool ok = -sum(Q.image(i)[a]) < -sum(Q.image(j)[b]);
                    for (std::size_t z : B) ok = ok || q[z] < qp[z];
                    if (!ok)
                        rec.fail({.p = Q.domain()[i], .p_prime = Q.domain()[j], .q = Q.image(i)[a], .q_prime = Q.image(j)[b],
                                  .subset = B, .note = "no strict increase on B or the outside good"});
                }
        }
    return rec.take();
}

Verdict check_p_function(const FiniteCorrespondence& Q, const CheckOptions& opts) {
    if (!Q.point_valued()) throw DomainError("p_function requires a point-valued correspondence");
    Recorder rec("p_function", opts);
    for (std::size_t i = 0; i < Q.size() && !rec.stopped(); ++i)
        for (std::size_t j = 0; j < Q.size() && !rec.stopped(); ++j) {
            if (i == j) continue;
            const auto &p = Q.domain()[i], &pp = Q.domain()[j];
            const auto &q = Q.image(i)[0], &qp = Q.image(j)[0];
            bool ok = false;
            for (std::size_t z = 0; z < Q.dim() && !ok; ++z) ok = ((p[z] - pp[z]) * (q[z] - qp[z])).sign() > 0;
            if (!ok) rec.fail({.p = p, .p_prime = pp, .q = q, .q_prime = qp, .note = "no coordinate with (p-p')(q-q') > 0"});
        }
    return rec.take();
}

}  // namespace

Verdict check_monotonicity(const FiniteCorrespondence& Q, Monotonicity property, const CheckOptions& opts) {
    require_sublattice(Q);
    switch (property) {
        case Monotonicity::nonreversing: return check_nonreversing(Q, false, "nonreversing", opts);
        case Monotonicity::strongly_nonreversing: return check_nonreversing(Q, true, "strongly_nonreversing", opts);
        case Monotonicity::p_correspondence: return check_nonreversing(Q, true, "p_correspondence", opts);
        case Monotonicity::monotone_total_output: return check_mto(Q, opts);
        case Monotonicity::aggregate_monotonicity: return check_am(Q, opts);
        case Monotonicity::weighted_monotonicity: return check_wm(Q, opts);
        case Monotonicity::bgh3: return check_bgh3(Q, opts);
        case Monotonicity::p_function: return check_p_function(Q, opts);
        case Monotonicity::constant_aggregate_output:
        case Monotonicity::walras: {
            const bool walras = property == Monotonicity::walras;
            Point k(Q.dim());
            if (!walras) {
                if (opts.weights) {
                    k = *opts.weights;
                    if (k.size() != Q.dim()) throw InputError("weight vector has wrong dimension");
                    for (const auto& x : k)
                        if (x.sign() <= 0) throw InputError("weights must be strictly positive");
                } else {
                    for (std::size_t z = 0; z < Q.dim(); ++z) k[z] = 1;
                }
            }
            Recorder rec(to_string(property), opts);
            for (std::size_t i = 0; i < Q.size() && !rec.stopped(); ++i)
                for (const auto& q : Q.image(i)) {
                    const Point& w = walras ? Q.domain()[i] : k;
                    if (dot(w, q).sign() != 0) {
                        Witness wt{.p = Q.domain()[i], .q = q, .note = walras ? "p.q != 0" : "k.q != 0"};
                        if (!walras) wt.weights = k;
                        if (rec.fail(std::move(wt))) break;
                    }
                }
            return rec.take();
        }
    }
    throw InputError("unknown monotonicity property");
}

// ---------------------------------------------------------------------------
// transforms

FiniteCorrespondence monetize(const FiniteCorrespondence& Q) {
    std::vector<FiniteCorrespondence::Entry> out;
    for (std::size_t i = 0; i < Q.size(); ++i) {
        const auto& p = Q.domain()[i];
        for (const auto& x : p)
            if (x.sign() < 0) throw DomainError("monetize requires nonnegative prices; found " + p.str());
        std::vector<Point> qs;
        for (const auto& q : Q.image(i)) {
            Point m(q.size());
            for (std::size_t z = 0; z < q.size(); ++z) m[z] = p[z] * q[z];
            qs.push_back(std::move(m));
        }
        out.push_back({p, std::move(qs)});
    }
    return FiniteCorrespondence(Q.dim(), std::move(out));
}

FiniteCorrespondence aggregate(const FiniteCorrespondence& Q1, const FiniteCorrespondence& Q2, const Rat& lambda,
                               const Rat& mu) {
    if (Q1.dim() != Q2.dim() || Q1.domain() != Q2.domain()) throw DomainError("aggregate requires identical domains");
    if (lambda.sign() < 0 || mu.sign() < 0) throw DomainError("aggregate requires nonnegative coefficients");
    std::vector<FiniteCorrespondence::Entry> out;
    for (std::size_t i = 0; i < Q1.size(); ++i) {
        std::vector<Point> qs;
        for (const auto& a : Q1.image(i))
            for (const auto& b : Q2.image(i)) qs.push_back(lambda * a + mu * b);
        out.push_back({Q1.domain()[i], std::move(qs)});
    }
    return FiniteCorrespondence(Q1.dim(), std::move(out));
}

FiniteCorrespondence extend_outside_good(const FiniteCorrespondence& Q, const Point& k, const Rat& p0) {
    if (k.size() != Q.dim()) throw DomainError("weight vector has wrong dimension");
    for (const auto& x : k)
        if (x.sign() <= 0) throw DomainError("outside-good weights must be strictly positive");
    std::vector<FiniteCorrespondence::Entry> out;
    for (std::size_t i = 0; i < Q.size(); ++i) {
        auto pc = Q.domain()[i].coords();
        pc.push_back(p0);
        std::vector<Point> qs;
        for (const auto& q : Q.image(i)) {
            auto qc = q.coords();
            qc.push_back(p0 - dot(k, q));
            qs.emplace_back(std::move(qc));
        }
        out.push_back({Point(std::move(pc)), std::move(qs)});
    }
    return FiniteCorrespondence(Q.dim() + 1, std::move(out));
}

FiniteCorrespondence flip_orientation(const FiniteCorrespondence& Q) {
    std::vector<FiniteCorrespondence::Entry> out;
    for (std::size_t i = 0; i < Q.size(); ++i) {
        std::vector<Point> qs;
        for (const auto& q : Q.image(i)) qs.push_back(Rat(-1) * q);
        out.push_back({Q.domain()[i], std::move(qs)});
    }
    return FiniteCorrespondence(Q.dim(), std::move(out));
}

// ---------------------------------------------------------------------------
// taxonomy

Label label_for(bool ugs, bool nonreversing, bool point_valued, bool inverse_point_valued) {
    if (!ugs || !nonreversing) return Label::none;
    if (point_valued) return inverse_point_valued ? Label::m_function : Label::m0_function;
    return inverse_point_valued ? Label::m_correspondence : Label::m0_correspondence;
}

Taxonomy classify(const FiniteCorrespondence& Q) {
    Taxonomy t;
    t.ugs = check_substitutes(Q, Substitutes::ugs).holds;
    t.nonreversing = check_monotonicity(Q, Monotonicity::nonreversing).holds;
    t.point_valued = Q.point_valued();
    std::set<Point> seen;
    t.inverse_point_valued = true;
    for (std::size_t i = 0; i < Q.size() && t.inverse_point_valued; ++i)
        for (const auto& q : Q.image(i))
            if (!seen.insert(q).second) {
                t.inverse_point_valued = false;
                break;
            }
    t.label = label_for(t.ugs, t.nonreversing, t.point_valued, t.inverse_point_valued);
    return t;
}

}  // namespace equistat
