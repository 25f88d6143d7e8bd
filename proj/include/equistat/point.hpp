#pragma once

#include "equistat/rational.hpp"

#include <initializer_list>
#include <string>
#include <vector>

namespace equistat {

// Vector of rationals ordered componentwise; operator< is lexicographic for containers.
class Point {
public:
    Point() = default;
    explicit Point(std::size_t n) : c_(n) {}
    explicit Point(std::vector<Rat> c) : c_(std::move(c)) {}
    Point(std::initializer_list<Rat> c) : c_(c) {}

    static Point parse(const std::vector<std::string>& coords);

    std::size_t size() const { return c_.size(); }
    const Rat& operator[](std::size_t i) const { return c_[i]; }
    Rat& operator[](std::size_t i) { return c_[i]; }
    const std::vector<Rat>& coords() const { return c_; }
    auto begin() const { return c_.begin(); }
    auto end() const { return c_.end(); }

    std::string str() const;

    friend bool operator==(const Point&, const Point&) = default;
    friend auto operator<=>(const Point& a, const Point& b) { return a.c_ <=> b.c_; }

private:
    std::vector<Rat> c_;
};

void require_same_dim(const Point& a, const Point& b);

// Componentwise a <= b.
bool leq(const Point& a, const Point& b);
Point meet(const Point& a, const Point& b);
Point join(const Point& a, const Point& b);

Point operator+(const Point& a, const Point& b);
Point operator-(const Point& a, const Point& b);
Point operator*(const Rat& s, const Point& a);
Rat dot(const Point& a, const Point& b);
Rat sum(const Point& a);
Point zeros(std::size_t n);
bool is_zero(const Point& a);

std::ostream& operator<<(std::ostream& os, const Point& p);

struct PointHash {
    std::size_t operator()(const Point& p) const noexcept;
};

}  // namespace equistat
