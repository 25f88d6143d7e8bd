#pragma once

#include "equistat/conv.hpp"
#include "equistat/corr.hpp"
#include "equistat/error.hpp"
#include "equistat/latt.hpp"
#include "equistat/suite.hpp"

#include <initializer_list>
#include <vector>

namespace equistat::test {

inline Point pt(std::initializer_list<long> c) {
    std::vector<Rat> v;
    for (long x : c) v.emplace_back(x);
    return Point(std::move(v));
}

inline FiniteCorrespondence table(std::size_t dim, std::vector<FiniteCorrespondence::Entry> rows) {
    return FiniteCorrespondence(dim, std::move(rows));
}

inline std::vector<Point> grid(std::size_t dim, long lo, long hi) { return product_grid(dim, gen::levels(lo, hi)); }

inline FiniteCorrespondence identity(std::size_t dim, long lo, long hi) {
    return tabulate(dim, grid(dim, lo, hi), [](const Point& p) { return p; });
}

inline FiniteCorrespondence constant(std::size_t dim, long lo, long hi, const Point& q0) {
    return tabulate(dim, grid(dim, lo, hi), [&](const Point&) { return q0; });
}

// Random point-valued table on {lo..hi}^dim with values in {-r..r}^dim.
inline FiniteCorrespondence random_function(gen::Rng& rng, std::size_t dim, long lo, long hi, long r) {
    return tabulate(dim, grid(dim, lo, hi), [&](const Point&) {
        Point q(dim);
        for (std::size_t z = 0; z < dim; ++z) q[z] = Rat(gen::uniform(rng, -r, r));
        return q;
    });
}

// Argmax correspondences of random producers on {lo..hi}^dim.
inline FiniteCorrespondence random_argmax(gen::Rng& rng, std::size_t dim, long lo, long hi) {
    auto prod = gen::random_producer(rng, dim, 6);
    return argmax_correspondence(prod, grid(dim, lo, hi));
}

inline bool holds(const Verdict& v) { return v.holds; }

}  // namespace equistat::test
