#pragma once

// Standalone sign oracle for values p + q*sqrt2 + r*sqrt3 + s*sqrt6. Test
// support only. Deliberately shares no code with the library's comparison
// path: enclosures come from integer square roots of decimally scaled
// arguments, not from bisection.

#include <gmpxx.h>

#include <cstdlib>

namespace enclosure {

using Int = mpz_class;
using Rat = mpq_class;

// integer window [lo, lo+1] around sqrt(n) * 10^digits
inline Int sqrt_scaled_floor(unsigned n, unsigned long digits) {
  Int scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, 2 * digits);
  Int arg = scale * static_cast<long>(n);
  Int root;
  mpz_sqrt(root.get_mpz_t(), arg.get_mpz_t());
  return root;
}

inline int sign_sum(const Rat& p, const Rat& q, const Rat& r, const Rat& s) {
  if (p == 0 && q == 0 && r == 0 && s == 0) return 0;
  for (unsigned long digits = 24;; digits *= 2) {
    Int scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, digits);
    Rat lo = p * scale, hi = lo;
    auto take = [&](const Rat& coef, unsigned n) {
      if (coef == 0) return;
      Int l = sqrt_scaled_floor(n, digits);
      Int h = l + 1;
      if (coef > 0) {
        lo += coef * l;
        hi += coef * h;
      } else {
        lo += coef * h;
        hi += coef * l;
      }
    };
    take(q, 2);
    take(r, 3);
    take(s, 6);
    if (lo > 0) return 1;
    if (hi < 0) return -1;
    if (digits > 100000) std::abort();  // nonzero by the basis argument
  }
}

inline int sign_qf3(const Rat& r0, const Rat& r1) { return sign_sum(r0, 0, r1, 0); }

// a0 + a1*sqrt3 versus b0 + b1*sqrt3
inline int cmp_qf3(const Rat& a0, const Rat& a1, const Rat& b0, const Rat& b1) {
  return sign_sum(a0 - b0, 0, a1 - b1, 0);
}

// cut q + sqrt2 versus r0 + r1*sqrt3 (never equal)
inline int cmp_cut_qf3(const Rat& q, const Rat& r0, const Rat& r1) {
  return sign_sum(q - r0, 1, -r1, 0);
}

inline Int rat_floor(const Rat& v) {
  Int out;
  mpz_fdiv_q(out.get_mpz_t(), v.get_num_mpz_t(), v.get_den_mpz_t());
  return out;
}

inline Int floor_sum(const Rat& p, const Rat& q, const Rat& r, const Rat& s) {
  for (unsigned long digits = 24;; digits *= 2) {
    Int scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, digits);
    Rat lo = p * scale, hi = lo;
    auto take = [&](const Rat& coef, unsigned n) {
      if (coef == 0) return;
      Int l = sqrt_scaled_floor(n, digits);
      Int h = l + 1;
      if (coef > 0) {
        lo += coef * l;
        hi += coef * h;
      } else {
        lo += coef * h;
        hi += coef * l;
      }
    };
    take(q, 2);
    take(r, 3);
    take(s, 6);
    Int fl = rat_floor(lo / scale), fh = rat_floor(hi / scale);
    if (fl == fh) return fl;
    if (digits > 100000) std::abort();  // only an exact integer stalls, and
                                        // then both floors already agree
  }
}

}  // namespace enclosure
