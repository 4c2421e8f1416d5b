#pragma once

#include <gmpxx.h>

#include <string>

namespace bing {

using Int = mpz_class;
using Rat = mpq_class;

// "p/q" with q > 0 and gcd(|p|,q) = 1; plain "p" means p/1
Rat parse_rat(const std::string& s);
std::string format_rat(const Rat& r);

inline Int rat_floor(const Rat& r) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

inline Int rat_ceil(const Rat& r) {
  Int q;
  mpz_cdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

inline Rat pow2(long e) {  // 2^e for any sign of e
  Rat r(1);
  if (e >= 0)
    mpz_mul_2exp(r.get_num_mpz_t(), r.get_num_mpz_t(), e);
  else
    mpz_mul_2exp(r.get_den_mpz_t(), r.get_den_mpz_t(), -e);
  return r;
}

inline Int rat_height(const Rat& r) {  // max(|num|, den)
  Int n = abs(Int(r.get_num()));
  Int d(r.get_den());
  return n > d ? n : d;
}

}  // namespace bing
