#pragma once

// ===================================================================
// Exact arithmetic in Q(sqrt2, sqrt3).
//
// Three value kinds:
//   QF3     r0 + r1*sqrt3            (projections of points live here)
//   Cut     q + sqrt2                (interval endpoints; never meets QF3)
//   QuadSum p + q*sqrt2 + r*sqrt3 + s*sqrt6   (closure of everything above)
//
// {1, sqrt2, sqrt3, sqrt6} is a Q-basis, so a QuadSum is zero iff all four
// coordinates are zero; nonzero signs are resolved by refining rational
// enclosures of the three roots.
// ===================================================================

#include <optional>
#include <string>

#include "bing/rational.hpp"

namespace bing {

enum class Order { LT, EQ, GT };

inline Order order_of_sign(int s) {
  return s < 0 ? Order::LT : (s == 0 ? Order::EQ : Order::GT);
}
inline Order order_flip(Order o) {
  return o == Order::LT ? Order::GT : (o == Order::GT ? Order::LT : Order::EQ);
}

// ---- QF3: r0 + r1*sqrt3 -------------------------------------------

struct QF3 {
  Rat r0, r1;

  QF3() : r0(0), r1(0) {}
  QF3(Rat a, Rat b) : r0(std::move(a)), r1(std::move(b)) {}
  explicit QF3(const Rat& a) : r0(a), r1(0) {}

  bool is_rational() const { return r1 == 0; }

  friend QF3 operator+(const QF3& a, const QF3& b) { return {a.r0 + b.r0, a.r1 + b.r1}; }
  friend QF3 operator-(const QF3& a, const QF3& b) { return {a.r0 - b.r0, a.r1 - b.r1}; }
  friend QF3 operator-(const QF3& a) { return {-a.r0, -a.r1}; }
  friend QF3 operator*(const Rat& c, const QF3& a) { return {c * a.r0, c * a.r1}; }
  friend bool operator==(const QF3& a, const QF3& b) { return a.r0 == b.r0 && a.r1 == b.r1; }
  friend bool operator!=(const QF3& a, const QF3& b) { return !(a == b); }
};

QF3 qf3_conjugate(const QF3& v);               // r1 -> -r1
int qf3_sign(const QF3& v);                    // exact sign
Order qf3_compare(const QF3& a, const QF3& b);
bool qf3_less(const QF3& a, const QF3& b);     // strict order, for containers

// ---- Cut: q + sqrt2 -----------------------------------------------

struct Cut {
  Rat q;

  Cut() : q(0) {}
  explicit Cut(Rat v) : q(std::move(v)) {}

  friend bool operator==(const Cut& a, const Cut& b) { return a.q == b.q; }
  friend bool operator!=(const Cut& a, const Cut& b) { return a.q != b.q; }
  friend bool operator<(const Cut& a, const Cut& b) { return a.q < b.q; }
};

inline Order cut_compare_cut(const Cut& a, const Cut& b) {
  int c = cmp(a.q, b.q);
  return order_of_sign(c);
}

// sign of (c - v); never EQ because sqrt2 is not in Q + Q*sqrt3
Order cut_compare_qf3(const Cut& c, const QF3& v);

// ---- QuadSum: p + q*sqrt2 + r*sqrt3 + s*sqrt6 ---------------------

struct QuadSum {
  Rat p, q, r, s;

  QuadSum() : p(0), q(0), r(0), s(0) {}
  QuadSum(Rat a, Rat b, Rat c, Rat d)
      : p(std::move(a)), q(std::move(b)), r(std::move(c)), s(std::move(d)) {}
  explicit QuadSum(const Rat& a) : p(a), q(0), r(0), s(0) {}

  static QuadSum from_qf3(const QF3& v) { return {v.r0, Rat(0), v.r1, Rat(0)}; }
  static QuadSum from_cut(const Cut& c) { return {c.q, Rat(1), Rat(0), Rat(0)}; }

  bool is_zero() const { return p == 0 && q == 0 && r == 0 && s == 0; }
  bool is_rational() const { return q == 0 && r == 0 && s == 0; }

  friend QuadSum operator+(const QuadSum& a, const QuadSum& b) {
    return {a.p + b.p, a.q + b.q, a.r + b.r, a.s + b.s};
  }
  friend QuadSum operator-(const QuadSum& a, const QuadSum& b) {
    return {a.p - b.p, a.q - b.q, a.r - b.r, a.s - b.s};
  }
  friend QuadSum operator-(const QuadSum& a) { return {-a.p, -a.q, -a.r, -a.s}; }
  friend QuadSum operator*(const QuadSum& a, const QuadSum& b);
  friend QuadSum operator*(const Rat& c, const QuadSum& a) {
    return {c * a.p, c * a.q, c * a.r, c * a.s};
  }
  friend bool operator==(const QuadSum& a, const QuadSum& b) {
    return a.p == b.p && a.q == b.q && a.r == b.r && a.s == b.s;
  }

  QuadSum recip() const;  // exact field inverse; requires nonzero
};

int sign_quadsum(const Rat& p, const Rat& q, const Rat& r, const Rat& s);
int sign_quadsum(const QuadSum& w);

Int floor_quadsum(const QuadSum& w);
Int ceil_quadsum(const QuadSum& w);

// ---- interval helpers over QuadSum bounds -------------------------

// minimal-denominator rational in the open interval (a, b); b unbounded
// when b_inf. Among equal denominators: value closest to zero, then least.
Rat simplest_between(const QuadSum& a, const QuadSum& b, bool b_inf = false);

// least m/2^j with minimal j >= 0 such that a < m/2^j < b
Rat pick_dyadic_between(const QuadSum& a, const QuadSum& b);

}  // namespace bing
