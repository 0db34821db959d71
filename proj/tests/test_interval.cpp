#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "synth/interval.hpp"
#include "synth/poly.hpp"

using namespace synth;

TEST_CASE("interval arithmetic basics") {
  Interval a(1, 2), b(-3, 4);
  REQUIRE((a + b).contains(Interval(-2, 6)));
  REQUIRE((a - b).contains(Interval(-3, 5)));
  REQUIRE((a * b).contains(Interval(-6, 8)));
  REQUIRE(pow(b, 2).lo == 0.0);
  REQUIRE(pow(b, 2).hi >= 16.0);
  REQUIRE(pow(Interval(-2, -1), 2).contains(Interval(1, 4)));
  REQUIRE(pow(Interval(-2, 1), 3).contains(Interval(-8, 1)));
}

TEST_CASE("enclosure of x^2 on [-1,2] covers the exact range") {
  Poly p = Poly::variable(Var::state(0)).pow(2);
  Interval e = interval_enclosure(p, {Interval(-1, 2)});
  REQUIRE(e.contains(Interval(0, 4)));
}

TEST_CASE("enclosure of a constant is the point") {
  Poly p = Poly::constant(5.0);
  Interval e = interval_enclosure(p, {Interval(-10, 3), Interval(0, 1)});
  REQUIRE(e.lo <= 5.0);
  REQUIRE(e.hi >= 5.0);
  REQUIRE(e.width() < 1e-9);
}

TEST_CASE("enclosure of (x-1)^2 + y^2 tightens under bisection") {
  Var x = Var::state(0), y = Var::state(1);
  Poly p = (Poly::variable(x) - Poly::constant(1.0)).pow(2) + Poly::variable(y).pow(2);
  Box box = {Interval(0, 2), Interval(-1, 1)};
  Interval whole = interval_enclosure(p, box);
  // true range is [0, 2]; grid sampling lower-bounds it
  double lo = 1e18, hi = -1e18;
  for (int i = 0; i <= 50; ++i)
    for (int j = 0; j <= 50; ++j) {
      double vx = 0.0 + 2.0 * i / 50, vy = -1.0 + 2.0 * j / 50;
      double v = p.eval(std::vector<double>{vx, vy});
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  REQUIRE(whole.lo <= lo + 1e-12);
  REQUIRE(whole.hi >= hi - 1e-12);

  auto [left, right] = box_bisect(box, 0);
  Interval split = Interval::hull(interval_enclosure(p, left), interval_enclosure(p, right));
  REQUIRE(split.width() <= whole.width() + 1e-12);
  REQUIRE(whole.contains(Interval(split.lo + 1e-12, split.hi - 1e-12)));
}

TEST_CASE("bisection hull never widens the enclosure") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> coef(-3.0, 3.0);
  for (int trial = 0; trial < 200; ++trial) {
    Poly p;
    for (int t = 0; t < 6; ++t) {
      Monomial m;
      int e0 = (int)(rng() % 4), e1 = (int)(rng() % 3);
      if (e0) m.emplace_back(Var::state(0), e0);
      if (e1) m.emplace_back(Var::state(1), e1);
      p.add_term(m, coef(rng));
    }
    std::uniform_real_distribution<double> b(-2.0, 2.0);
    double l0 = b(rng), l1 = b(rng);
    Box box = {Interval(l0, l0 + 1.5), Interval(l1, l1 + 0.8)};
    Interval whole = interval_enclosure(p, box);
    int dim = (int)(rng() % 2);
    auto [left, right] = box_bisect(box, dim);
    Interval split = Interval::hull(interval_enclosure(p, left), interval_enclosure(p, right));
    // allow one ulp of slop from outward rounding
    REQUIRE(split.lo >= whole.lo - 1e-9 * (1 + whole.mag()));
    REQUIRE(split.hi <= whole.hi + 1e-9 * (1 + whole.mag()));
  }
}

TEST_CASE("sampled values never escape the enclosure") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> coef(-10.0, 10.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const int nvars = 1 + (int)(rng() % 3);
    Poly p;
    for (int t = 0; t < 8; ++t) {
      Monomial m;
      for (int v = 0; v < nvars; ++v) {
        int e = (int)(rng() % 4);
        if (e) m.emplace_back(Var::state(v), e);
      }
      p.add_term(m, coef(rng));
    }
    Box box(nvars);
    std::uniform_real_distribution<double> b(-5.0, 5.0);
    for (int v = 0; v < nvars; ++v) {
      double lo = b(rng);
      box[v] = Interval(lo, lo + std::uniform_real_distribution<double>(0.0, 4.0)(rng));
    }
    Interval enc = interval_enclosure(p, box);
    std::vector<double> pt(nvars);
    for (int s = 0; s < 30; ++s) {
      for (int v = 0; v < nvars; ++v)
        pt[v] = std::uniform_real_distribution<double>(box[v].lo, box[v].hi)(rng);
      REQUIRE(enc.contains(p.eval(pt)));
    }
  }
}
