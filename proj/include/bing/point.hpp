#pragma once

#include <optional>
#include <string>

#include "bing/algebra.hpp"

namespace bing {

// rational point of the closed upper half plane; y == 0 is the base line
struct Point {
  Rat x, y;

  Point() : x(0), y(0) {}
  Point(Rat px, Rat py) : x(std::move(px)), y(std::move(py)) {}

  bool on_base() const { return y == 0; }

  friend bool operator==(const Point& a, const Point& b) { return a.x == b.x && a.y == b.y; }
  friend bool operator!=(const Point& a, const Point& b) { return !(a == b); }
  friend bool operator<(const Point& a, const Point& b) {  // plain lex, for containers
    int c = cmp(a.x, b.x);
    if (c != 0) return c < 0;
    return a.y < b.y;
  }
};

inline QF3 proj_minus(const Point& z) { return {z.x, -z.y}; }
inline QF3 proj_plus(const Point& z) { return {z.x, z.y}; }

// inverse of z -> (proj_minus, proj_plus); requires s <= t
std::optional<Point> point_from_projections(const QF3& s, const QF3& t);

// z -> (a*x + b, a*y), a > 0; a homeomorphism of the space
Point affine_map(const Rat& a, const Rat& b, const Point& z);

Int point_height(const Point& z);  // max over |num|, den of both coordinates

std::string format_point(const Point& z);          // "x;y"
Point parse_point(const std::string& s);           // throws InputError

}  // namespace bing
