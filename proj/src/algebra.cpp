#include "bing/algebra.hpp"

#include <cassert>
#include <cctype>

#include "bing/errors.hpp"

namespace bing {

// ---- rational text form -------------------------------------------

Rat parse_rat(const std::string& s) {
  size_t i = 0;
  auto digits = [&](size_t from) {
    size_t j = from;
    while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
    return j;
  };
  if (i < s.size() && s[i] == '-') ++i;
  size_t e = digits(i);
  if (e == i) throw InputError("bad rational: '" + s + "'");
  if (e < s.size()) {
    if (s[e] != '/') throw InputError("bad rational: '" + s + "'");
    size_t d = digits(e + 1);
    if (d == e + 1 || d != s.size()) throw InputError("bad rational: '" + s + "'");
    if (Int(s.substr(e + 1)) == 0) throw InputError("zero denominator: '" + s + "'");
  }
  Rat r(s);
  r.canonicalize();
  return r;
}

std::string format_rat(const Rat& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

// ---- enclosures of sqrt2, sqrt3, sqrt6 -----------------------------

namespace {

struct Enclosure {
  int d;
  Rat lo, hi;  // lo^2 < d < hi^2, both positive

  void refine() {
    Rat mid = (lo + hi) / 2;
    if (mid * mid < d)
      lo = mid;
    else
      hi = mid;
  }
};

// shared, monotonically refined; single-threaded by design
Enclosure g_s2{2, Rat(1), Rat(2)};
Enclosure g_s3{3, Rat(1), Rat(2)};
Enclosure g_s6{6, Rat(2), Rat(3)};

void term_bounds(const Rat& c, const Enclosure& e, Rat& lo, Rat& hi) {
  if (c >= 0) {
    lo += c * e.lo;
    hi += c * e.hi;
  } else {
    lo += c * e.hi;
    hi += c * e.lo;
  }
}

void bounds_of(const QuadSum& w, Rat& lo, Rat& hi) {
  lo = w.p;
  hi = w.p;
  if (w.q != 0) term_bounds(w.q, g_s2, lo, hi);
  if (w.r != 0) term_bounds(w.r, g_s3, lo, hi);
  if (w.s != 0) term_bounds(w.s, g_s6, lo, hi);
}

void refine_all() {
  g_s2.refine();
  g_s3.refine();
  g_s6.refine();
}

}  // namespace

// ---- QF3 ------------------------------------------------------------

QF3 qf3_conjugate(const QF3& v) { return {v.r0, -v.r1}; }

int qf3_sign(const QF3& v) {
  if (v.r1 == 0) return sgn(v.r0);
  if (v.r0 == 0) return sgn(v.r1);
  int s0 = sgn(v.r0), s1 = sgn(v.r1);
  if (s0 == s1) return s0;
  // mixed signs: |r0| vs sqrt3*|r1|, decided by squaring
  Rat a = v.r0 * v.r0;
  Rat b = 3 * v.r1 * v.r1;
  assert(a != b);  // would force sqrt3 rational
  return a > b ? s0 : s1;
}

Order qf3_compare(const QF3& a, const QF3& b) { return order_of_sign(qf3_sign(a - b)); }

bool qf3_less(const QF3& a, const QF3& b) { return qf3_sign(a - b) < 0; }

Order cut_compare_qf3(const Cut& c, const QF3& v) {
  return order_of_sign(sign_quadsum(c.q - v.r0, Rat(1), -v.r1, Rat(0)));
}

// ---- QuadSum ---------------------------------------------------------

QuadSum operator*(const QuadSum& a, const QuadSum& b) {
  // sqrt2*sqrt3 = sqrt6, sqrt2*sqrt6 = 2*sqrt3, sqrt3*sqrt6 = 3*sqrt2
  return {a.p * b.p + 2 * a.q * b.q + 3 * a.r * b.r + 6 * a.s * b.s,
          a.p * b.q + a.q * b.p + 3 * (a.r * b.s + a.s * b.r),
          a.p * b.r + a.r * b.p + 2 * (a.q * b.s + a.s * b.q),
          a.p * b.s + a.s * b.p + a.q * b.r + a.r * b.q};
}

QuadSum QuadSum::recip() const {
  assert(!is_zero());
  if (is_rational()) return QuadSum(Rat(1) / p);
  // multiply by the three nontrivial Galois conjugates; the product of
  // all four is rational
  QuadSum c2{p, -q, r, -s};
  QuadSum c3{p, q, -r, -s};
  QuadSum c6{p, -q, -r, s};
  QuadSum num = c2 * c3 * c6;
  QuadSum norm = *this * num;
  assert(norm.is_rational() && norm.p != 0);
  return (Rat(1) / norm.p) * num;
}

int sign_quadsum(const QuadSum& w) {
  if (w.is_zero()) return 0;  // coordinates form a Q-basis
  if (w.is_rational()) return sgn(w.p);
  Rat lo, hi;
  for (int it = 0; it < 100000; ++it) {
    bounds_of(w, lo, hi);
    if (lo > 0) return 1;
    if (hi < 0) return -1;
    refine_all();
  }
  assert(false && "sign_quadsum failed to converge");
  return 0;
}

int sign_quadsum(const Rat& p, const Rat& q, const Rat& r, const Rat& s) {
  return sign_quadsum(QuadSum{p, q, r, s});
}

Int floor_quadsum(const QuadSum& w) {
  if (w.is_rational()) return rat_floor(w.p);
  Rat lo, hi;
  for (int it = 0; it < 100000; ++it) {
    bounds_of(w, lo, hi);
    Int fl = rat_floor(lo), fh = rat_floor(hi);
    if (fl == fh) return fl;
    refine_all();
  }
  assert(false && "floor_quadsum failed to converge");
  return 0;
}

Int ceil_quadsum(const QuadSum& w) { return -floor_quadsum(-w); }

// ---- simplest rational in an interval --------------------------------

namespace {

Rat simplest_rec(const QuadSum& a, const QuadSum& b, bool b_inf, int depth) {
  assert(depth < 20000);
  Int a0 = floor_quadsum(a);
  if (b_inf) return Rat(a0 + 1);

  Int mLo = a0 + 1;
  Int mHi = ceil_quadsum(b) - 1;
  if (mLo <= mHi) {
    if (mLo <= 0 && 0 <= mHi) return Rat(0);
    return mLo > 0 ? Rat(mLo) : Rat(mHi);
  }

  // no integer inside: a, b share the floor a0 (or b == a0+1 exactly);
  // descend into the reciprocal of the fractional parts
  QuadSum fa = a - QuadSum(Rat(a0));
  QuadSum fb = b - QuadSum(Rat(a0));
  bool fa_zero = fa.is_zero();
  QuadSum tLo = fb.recip();
  QuadSum tHi = fa_zero ? QuadSum() : fa.recip();
  Rat t = simplest_rec(tLo, tHi, fa_zero, depth + 1);
  assert(t > 0);
  return Rat(a0) + Rat(1) / t;
}

}  // namespace

Rat simplest_between(const QuadSum& a, const QuadSum& b, bool b_inf) {
  assert(b_inf || sign_quadsum(b - a) > 0);
  return simplest_rec(a, b, b_inf, 0);
}

Rat pick_dyadic_between(const QuadSum& a, const QuadSum& b) {
  assert(sign_quadsum(b - a) > 0);
  Rat scale(1);
  for (long j = 0;; ++j, scale *= 2) {
    Int m = floor_quadsum(scale * a) + 1;
    Rat cand = Rat(m) / scale;
    if (sign_quadsum(b - QuadSum(cand)) > 0) return cand;
  }
}

}  // namespace bing
