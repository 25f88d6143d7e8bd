#include "equistat/point.hpp"

#include "equistat/error.hpp"

#include <ostream>

namespace equistat {

Point Point::parse(const std::vector<std::string>& coords) {
    std::vector<Rat> c;
    c.reserve(coords.size());
    for (const auto& s : coords) c.push_back(Rat::parse(s));
    return Point(std::move(c));
}

std::string Point::str() const {
    std::string s = "(";
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (i) s += ",";
        s += c_[i].str();
    }
    return s + ")";
}

void require_same_dim(const Point& a, const Point& b) {
    if (a.size() != b.size())
        throw InputError("dimension mismatch: " + std::to_string(a.size()) + " vs " + std::to_string(b.size()));
}

bool leq(const Point& a, const Point& b) {
    require_same_dim(a, b);
    for (std::size_t i = 0; i < a.size(); ++i)
        if (b[i] < a[i]) return false;
    return true;
}

Point meet(const Point& a, const Point& b) {
    require_same_dim(a, b);
    Point r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = min(a[i], b[i]);
    return r;
}

Point join(const Point& a, const Point& b) {
    require_same_dim(a, b);
    Point r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = max(a[i], b[i]);
    return r;
}

Point operator+(const Point& a, const Point& b) {
    require_same_dim(a, b);
    Point r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

Point operator-(const Point& a, const Point& b) {
    require_same_dim(a, b);
    Point r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

Point operator*(const Rat& s, const Point& a) {
    Point r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
    return r;
}

Rat dot(const Point& a, const Point& b) {
    require_same_dim(a, b);
    Rat s;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Rat sum(const Point& a) {
    Rat s;
    for (const auto& x : a) s += x;
    return s;
}

Point zeros(std::size_t n) { return Point(n); }

bool is_zero(const Point& a) {
    for (const auto& x : a)
        if (x.sign() != 0) return false;
    return true;
}

std::ostream& operator<<(std::ostream& os, const Point& p) { return os << p.str(); }

std::size_t PointHash::operator()(const Point& p) const noexcept {
    std::size_t h = p.size();
    for (const auto& x : p) h ^= x.hash() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
}

}  // namespace equistat
