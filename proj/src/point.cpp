#include "bing/point.hpp"

#include "bing/errors.hpp"

namespace bing {

std::optional<Point> point_from_projections(const QF3& s, const QF3& t) {
  if (qf3_sign(t - s) < 0) throw InputError("point_from_projections: s > t");
  // s = x - sqrt3*y, t = x + sqrt3*y with x, y rational forces
  // s = (x, -y), t = (x, y) coordinatewise
  if (s.r0 != t.r0 || s.r1 != -t.r1) return std::nullopt;
  if (t.r1 < 0) return std::nullopt;
  return Point{s.r0, t.r1};
}

Point affine_map(const Rat& a, const Rat& b, const Point& z) {
  if (a <= 0) throw InputError("affine_map: scale must be positive");
  return {a * z.x + b, a * z.y};
}

Int point_height(const Point& z) {
  Int hx = rat_height(z.x), hy = rat_height(z.y);
  Int h = hx > hy ? hx : hy;
  return h > 1 ? h : Int(1);
}

std::string format_point(const Point& z) { return format_rat(z.x) + ";" + format_rat(z.y); }

Point parse_point(const std::string& s) {
  auto sep = s.find(';');
  if (sep == std::string::npos) throw InputError("bad point (want \"x;y\"): '" + s + "'");
  Rat x = parse_rat(s.substr(0, sep));
  Rat y = parse_rat(s.substr(sep + 1));
  if (y < 0) throw InputError("point below the base line: '" + s + "'");
  return {x, y};
}

}  // namespace bing
