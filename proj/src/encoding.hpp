#pragma once

// Order-preserving integer ranks of a correspondence's coordinates.
// Comparisons between ranks agree with comparisons between the rationals they
// replace coordinate by coordinate, so order-only checks can run on ints.

#include "equistat/point.hpp"

#include <cstdint>
#include <unordered_map>
#include <vector>

namespace equistat::detail {

inline constexpr std::size_t npos = static_cast<std::size_t>(-1);

class RankTable {
public:
    RankTable() = default;
    RankTable(std::size_t dim, const std::vector<const Point*>& pts);
    std::size_t dim() const { return levels_.size(); }
    int rank(std::size_t z, const Rat& v) const;  // -1 when absent
    const std::vector<Rat>& levels(std::size_t z) const { return levels_[z]; }
    void encode(const Point& p, int* out) const;

private:
    std::vector<std::vector<Rat>> levels_;
};

struct Encoding {
    std::size_t n = 0;
    std::size_t g = 0;
    RankTable prices;
    RankTable quantities;
    std::vector<int> prank;               // g * n
    std::vector<std::vector<int>> qrank;  // per domain point, |Q(p)| * n, lexicographic
    std::vector<std::uint64_t> stride;
    bool dense = false;
    std::vector<std::int32_t> dense_index;
    std::unordered_map<std::uint64_t, std::size_t> sparse_index;

    const int* p(std::size_t i) const { return prank.data() + i * n; }
    const int* q(std::size_t i, std::size_t k) const { return qrank[i].data() + k * n; }
    std::size_t count(std::size_t i) const { return n == 0 ? qrank[i].size() : qrank[i].size() / n; }

    std::size_t lookup(std::uint64_t key) const;
    std::uint64_t key_of(const int* r) const;
    std::size_t meet(std::size_t i, std::size_t j) const;
    std::size_t join(std::size_t i, std::size_t j) const;
    // Index of a quantity rank vector inside Q(domain i), or npos.
    std::size_t find_q(std::size_t i, const int* r) const;
};

Encoding build_encoding(std::size_t dim, const std::vector<Point>& domain, const std::vector<std::vector<Point>>& images);

inline bool leq_r(const int* a, const int* b, std::size_t n) {
    for (std::size_t z = 0; z < n; ++z)
        if (a[z] > b[z]) return false;
    return true;
}

inline bool eq_r(const int* a, const int* b, std::size_t n) {
    for (std::size_t z = 0; z < n; ++z)
        if (a[z] != b[z]) return false;
    return true;
}

}  // namespace equistat::detail
