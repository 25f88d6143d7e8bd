#include "encoding.hpp"

#include <algorithm>

namespace equistat::detail {

RankTable::RankTable(std::size_t dim, const std::vector<const Point*>& pts) : levels_(dim) {
    for (std::size_t z = 0; z < dim; ++z) {
        auto& lv = levels_[z];
        lv.reserve(pts.size());
        for (const Point* p : pts) lv.push_back((*p)[z]);
        std::sort(lv.begin(), lv.end());
        lv.erase(std::unique(lv.begin(), lv.end()), lv.end());
    }
}

int RankTable::rank(std::size_t z, const Rat& v) const {
    const auto& lv = levels_[z];
    auto it = std::lower_bound(lv.begin(), lv.end(), v);
    if (it == lv.end() || !(*it == v)) return -1;
    return static_cast<int>(it - lv.begin());
}

void RankTable::encode(const Point& p, int* out) const {
    for (std::size_t z = 0; z < levels_.size(); ++z) out[z] = rank(z, p[z]);
}

std::uint64_t Encoding::key_of(const int* r) const {
    std::uint64_t k = 0;
    for (std::size_t z = 0; z < n; ++z) k += static_cast<std::uint64_t>(r[z]) * stride[z];
    return k;
}

std::size_t Encoding::lookup(std::uint64_t key) const {
    if (dense) {
        if (key >= dense_index.size()) return npos;
        auto v = dense_index[key];
        return v < 0 ? npos : static_cast<std::size_t>(v);
    }
    auto it = sparse_index.find(key);
    return it == sparse_index.end() ? npos : it->second;
}

std::size_t Encoding::meet(std::size_t i, std::size_t j) const {
    const int* a = p(i);
    const int* b = p(j);
    std::uint64_t k = 0;
    for (std::size_t z = 0; z < n; ++z) k += static_cast<std::uint64_t>(std::min(a[z], b[z])) * stride[z];
    return lookup(k);
}

std::size_t Encoding::join(std::size_t i, std::size_t j) const {
    const int* a = p(i);
    const int* b = p(j);
    std::uint64_t k = 0;
    for (std::size_t z = 0; z < n; ++z) k += static_cast<std::uint64_t>(std::max(a[z], b[z])) * stride[z];
    return lookup(k);
}

std::size_t Encoding::find_q(std::size_t i, const int* r) const {
    std::size_t lo = 0, hi = count(i);
    while (lo < hi) {
        std::size_t mid = (lo + hi) / 2;
        const int* m = q(i, mid);
        if (std::lexicographical_compare(m, m + n, r, r + n))
            lo = mid + 1;
        else
            hi = mid;
    }
    if (lo < count(i) && eq_r(q(i, lo), r, n)) return lo;
    return npos;
}

Encoding build_encoding(std::size_t dim, const std::vector<Point>& domain,
                        const std::vector<std::vector<Point>>& images) {
    Encoding e;
    e.n = dim;
    e.g = domain.size();
    std::vector<const Point*> pp, qq;
    for (const auto& p : domain) pp.push_back(&p);
    for (const auto& im : images)
        for (const auto& q : im) qq.push_back(&q);
    e.prices = RankTable(dim, pp);
    e.quantities = RankTable(dim, qq);

    e.prank.resize(e.g * dim);
    for (std::size_t i = 0; i < e.g; ++i) e.prices.encode(domain[i], e.prank.data() + i * dim);
    e.qrank.resize(e.g);
    for (std::size_t i = 0; i < e.g; ++i) {
        e.qrank[i].resize(images[i].size() * dim);
        for (std::size_t k = 0; k < images[i].size(); ++k) e.quantities.encode(images[i][k], e.qrank[i].data() + k * dim);
    }

    e.stride.assign(dim, 1);
    long double total = 1;
    std::uint64_t s = 1;
    for (std::size_t z = 0; z < dim; ++z) {
        e.stride[z] = s;
        auto lv = static_cast<std::uint64_t>(e.prices.levels(z).size());
        total *= static_cast<long double>(lv);
        s *= lv;
    }
    if (total > 1.8e19L) throw std::length_error("price grid too large to index");
    e.dense = total <= static_cast<long double>(1u << 24);
    if (e.dense) {
        e.dense_index.assign(static_cast<std::size_t>(s), -1);
        for (std::size_t i = 0; i < e.g; ++i) e.dense_index[e.key_of(e.p(i))] = static_cast<std::int32_t>(i);
    } else {
        for (std::size_t i = 0; i < e.g; ++i) e.sparse_index.emplace(e.key_of(e.p(i)), i);
    }
    return e;
}

}  // namespace equistat::detail
