#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "bing/algebra.hpp"
#include "bing/errors.hpp"
#include "support/enclosure.hpp"
#include "support/rng.hpp"

using namespace bing;

namespace {

int order_int(Order o) { return o == Order::LT ? -1 : o == Order::EQ ? 0 : 1; }

QuadSum qs(const Rat& p, const Rat& q, const Rat& r, const Rat& s) { return QuadSum{p, q, r, s}; }

}  // namespace

TEST_CASE("qf3 comparison") {
  CHECK(qf3_compare(QF3{Rat(0), Rat(0)}, QF3{Rat(0), Rat(0)}) == Order::EQ);
  // frozen oracle: sign(2 - sqrt3) = 1, sign(sqrt3 - 1) = 1
  CHECK(qf3_compare(QF3{Rat(2), Rat(0)}, QF3{Rat(0), Rat(1)}) == Order::GT);
  CHECK(qf3_compare(QF3{Rat(0), Rat(1)}, QF3{Rat(1), Rat(0)}) == Order::GT);
  CHECK(qf3_less(QF3{Rat(1), Rat(0)}, QF3{Rat(0), Rat(1)}));

  std::mt19937_64 g(101);
  for (int i = 0; i < 400; ++i) {
    QF3 a{testrng::rat(g, 30), testrng::rat(g, 30)};
    QF3 b{testrng::rat(g, 30), testrng::rat(g, 30)};
    CHECK(order_int(qf3_compare(a, b)) == enclosure::cmp_qf3(a.r0, a.r1, b.r0, b.r1));
    CHECK((qf3_compare(a, b) == Order::EQ) == (a.r0 == b.r0 && a.r1 == b.r1));
  }
}

TEST_CASE("quadsum sign") {
  CHECK(sign_quadsum(qs(Rat(0), Rat(0), Rat(0), Rat(0))) == 0);
  // frozen oracle: 1 + sqrt2 - sqrt3 > 0, sqrt6 - sqrt2 - sqrt3 < 0
  CHECK(sign_quadsum(qs(Rat(1), Rat(1), Rat(-1), Rat(0))) == 1);
  CHECK(sign_quadsum(qs(Rat(0), Rat(-1), Rat(-1), Rat(1))) == -1);

  std::mt19937_64 g(102);
  for (int i = 0; i < 400; ++i) {
    Rat p = testrng::rat(g, 40), q = testrng::rat(g, 40);
    Rat r = testrng::rat(g, 40), s = testrng::rat(g, 40);
    CHECK(sign_quadsum(p, q, r, s) == enclosure::sign_sum(p, q, r, s));
  }
  // zero only on the zero vector
  CHECK(sign_quadsum(Rat(1), Rat(0), Rat(0), Rat(0)) != 0);
  CHECK(sign_quadsum(Rat(0), Rat(1), Rat(0), Rat(0)) != 0);
  CHECK(sign_quadsum(Rat(-98), Rat(0), Rat(0), Rat(40)) != 0);
}

TEST_CASE("cut versus qf3 is never EQ") {
  // frozen oracle: sqrt2 > 1, sqrt2 < sqrt3, -10 + sqrt2 < 0
  CHECK(cut_compare_qf3(Cut{Rat(0)}, QF3{Rat(1), Rat(0)}) == Order::GT);
  CHECK(cut_compare_qf3(Cut{Rat(0)}, QF3{Rat(0), Rat(1)}) == Order::LT);
  CHECK(cut_compare_qf3(Cut{Rat(-10)}, QF3{Rat(0), Rat(0)}) == Order::LT);

  std::mt19937_64 g(103);
  for (int i = 0; i < 500; ++i) {
    Cut c{testrng::rat(g, 25)};
    QF3 v{testrng::rat(g, 25), testrng::rat(g, 25)};
    Order o = cut_compare_qf3(c, v);
    CHECK(o != Order::EQ);
    CHECK(order_int(o) == enclosure::cmp_cut_qf3(c.q, v.r0, v.r1));
  }
}

TEST_CASE("conjugation") {
  CHECK(qf3_conjugate(QF3{Rat(0), Rat(0)}) == QF3{Rat(0), Rat(0)});
  CHECK(qf3_conjugate(QF3{Rat(1), Rat(2)}) == QF3{Rat(1), Rat(-2)});
  QF3 v{Rat(1) / 2, Rat(-5)};
  CHECK(qf3_conjugate(qf3_conjugate(v)) == v);
}

TEST_CASE("mixed order is total and transitive") {
  // values are tagged: rational part carried as QuadSum coordinates so the
  // oracle can compare any two of them directly
  struct Val {
    Rat p, q, r;  // p + q*sqrt2 + r*sqrt3; cuts have q = 1, r = 0
    bool is_cut;
  };
  std::mt19937_64 g(104);
  auto make = [&](bool cut) {
    if (cut) return Val{testrng::rat(g, 20), Rat(1), Rat(0), true};
    return Val{testrng::rat(g, 20), Rat(0), testrng::rat(g, 20), false};
  };
  auto lib_cmp = [](const Val& a, const Val& b) -> int {
    if (a.is_cut && b.is_cut) return order_int(cut_compare_cut(Cut{a.p}, Cut{b.p}));
    if (a.is_cut) return order_int(cut_compare_qf3(Cut{a.p}, QF3{b.p, b.r}));
    if (b.is_cut) return -order_int(cut_compare_qf3(Cut{b.p}, QF3{a.p, a.r}));
    return order_int(qf3_compare(QF3{a.p, a.r}, QF3{b.p, b.r}));
  };
  std::uniform_int_distribution<int> coin(0, 1);
  for (int i = 0; i < 800; ++i) {
    Val a = make(coin(g)), b = make(coin(g)), c = make(coin(g));
    int ab = lib_cmp(a, b), ba = lib_cmp(b, a), bc = lib_cmp(b, c), ac = lib_cmp(a, c);
    CHECK(ab == -ba);
    CHECK(ab == enclosure::sign_sum(a.p - b.p, a.q - b.q, a.r - b.r, 0));
    if (ab <= 0 && bc <= 0) CHECK(ac <= 0);
    if (ab >= 0 && bc >= 0) CHECK(ac >= 0);
  }
}

TEST_CASE("arithmetic is exact") {
  std::mt19937_64 g(105);
  for (int i = 0; i < 300; ++i) {
    QF3 a{testrng::rat(g, 50), testrng::rat(g, 50)};
    QF3 b{testrng::rat(g, 50), testrng::rat(g, 50)};
    CHECK((a - b) + b == a);
    QuadSum u = qs(testrng::rat(g, 50), testrng::rat(g, 50), testrng::rat(g, 50),
                   testrng::rat(g, 50));
    QuadSum v = qs(testrng::rat(g, 50), testrng::rat(g, 50), testrng::rat(g, 50),
                   testrng::rat(g, 50));
    CHECK((u - v) + v == u);
    if (!u.is_zero()) {
      QuadSum w = u * u.recip();
      CHECK(w == qs(Rat(1), Rat(0), Rat(0), Rat(0)));
    }
  }
}

TEST_CASE("floors and ceilings") {
  // frozen oracle values
  CHECK(floor_quadsum(qs(Rat(0), Rat(1), Rat(1), Rat(0))) == 3);
  CHECK(floor_quadsum(qs(Rat(0), Rat(0), Rat(0), Rat(-1))) == -3);
  CHECK(floor_quadsum(qs(Rat(10), Rat(-1), Rat(0), Rat(0))) == 8);
  CHECK(floor_quadsum(qs(Rat(3) / 2, Rat(0), Rat(0), Rat(0))) == 1);

  std::mt19937_64 g(106);
  for (int i = 0; i < 300; ++i) {
    Rat p = testrng::rat(g, 30), q = testrng::rat(g, 30);
    Rat r = testrng::rat(g, 30), s = testrng::rat(g, 30);
    Int fl = floor_quadsum(qs(p, q, r, s));
    CHECK(fl == enclosure::floor_sum(p, q, r, s));
    Int cl = ceil_quadsum(qs(p, q, r, s));
    CHECK(fl <= cl);
    CHECK(cl - fl <= 1);
  }
}

TEST_CASE("simplest rational in a window") {
  // frozen oracle values
  CHECK(simplest_between(qs(Rat(0), Rat(0), Rat(0), Rat(0)), qs(Rat(1), Rat(0), Rat(0), Rat(0))) ==
        Rat(1) / 2);
  CHECK(simplest_between(qs(Rat(0), Rat(0), Rat(0), Rat(0)), qs(Rat(2), Rat(0), Rat(0), Rat(0))) ==
        Rat(1));
  CHECK(simplest_between(qs(Rat(-1), Rat(0), Rat(0), Rat(0)), qs(Rat(1), Rat(0), Rat(0), Rat(0))) ==
        Rat(0));
  CHECK(simplest_between(qs(Rat(0), Rat(1), Rat(0), Rat(0)), qs(Rat(0), Rat(0), Rat(1), Rat(0))) ==
        Rat(3) / 2);

  std::mt19937_64 g(107);
  for (int i = 0; i < 200; ++i) {
    Rat a = testrng::rat(g, 20), w = testrng::positive_rat(g, 20);
    QuadSum lo = qs(a, Rat(0), Rat(0), Rat(0));
    QuadSum hi = qs(a + w, Rat(0), Rat(0), Rat(0));
    Rat m = simplest_between(lo, hi);
    CHECK(a < m);
    CHECK(m < a + w);
    // nothing with a smaller denominator fits strictly inside
    for (Int den = 1; den < m.get_den(); ++den) {
      Int from = rat_ceil(a * den), to = rat_floor((a + w) * den);
      bool found = false;
      for (Int num = from; num <= to && !found; ++num) {
        Rat c = Rat(num) / Rat(den);
        if (a < c && c < a + w) found = true;
      }
      CHECK_FALSE(found);
    }
    Rat d = pick_dyadic_between(lo, hi);
    CHECK(a < d);
    CHECK(d < a + w);
    Int dd = d.get_den();
    while (dd % 2 == 0) dd /= 2;
    CHECK(dd == 1);
  }
}

TEST_CASE("rational parsing") {
  CHECK(parse_rat("3/4") == Rat(3) / 4);
  CHECK(parse_rat("-12") == Rat(-12));
  CHECK(format_rat(Rat(-3) / 7) == "-3/7");
  CHECK(format_rat(Rat(5)) == "5");
  CHECK(parse_rat("6/4") == Rat(3) / 2);  // canonicalized on parse
  CHECK_THROWS_AS(parse_rat("1/0"), InputError);
  CHECK_THROWS_AS(parse_rat("x"), InputError);
  CHECK_THROWS_AS(parse_rat(""), InputError);
}
