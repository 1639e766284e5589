#include <random>
#include <set>
#include <stdexcept>

#include "doctest.h"
#include "qvs/oracle.hpp"

using namespace qvs;

namespace {

Int I(long v) { return Int(v); }

}  // namespace

TEST_CASE("certified enumeration boxes for definite leading forms") {
  BiPoly s2 = parse_poly("x^2 + y^2");
  BiPoly q4 = parse_poly("x^4 + y^4");
  BiPoly q4x = parse_poly("x^4 + y^4 + x");

  CHECK(certified_box(s2, I(100)).value() == 14);
  CHECK(certified_box(s2, I(1000000)).value() == 1414);
  CHECK(certified_box(q4, I(1000000)).value() == 37);
  CHECK(certified_box(q4x, I(1000000)).value() == 38);

  // No bound without a positive definite leading form.
  CHECK(!certified_box(parse_poly("(x^2 - 2*y^2)^2 + x"), I(100)));
  CHECK(!certified_box(parse_poly("x^3 + y"), I(100)));
  CHECK(!certified_box(parse_poly("x^4 - y^4 + x"), I(100)));
  CHECK(!certified_box(parse_poly("x^2*y^2"), I(100)));
}

TEST_CASE("sums of two squares up to 100") {
  ValueTable t = enumerate_values(parse_poly("x^2 + y^2"), I(50), I(100));
  CHECK(t.exhaustive);
  CHECK(t.values.size() == 44);
  CHECK(t.values.front() == 0);
  CHECK(t.values.back() == 100);
  CHECK(t.contains(I(2)));
  CHECK(t.contains(I(25)));
  CHECK(t.contains(I(85)));
  CHECK(!t.contains(I(3)));
  CHECK(!t.contains(I(7)));
  CHECK(!t.contains(I(99)));
  CHECK(t.count_in(I(1), I(100)) == 43);
  CHECK(t.count_in(I(0), I(0)) == 1);
  CHECK(t.count_in(I(50), I(49)) == 0);
}

TEST_CASE("enumerate_values input validation") {
  BiPoly s2 = parse_poly("x^2 + y^2");
  CHECK_THROWS_AS(enumerate_values(s2, I(0), I(10)), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_values(s2, I(10), I(0)), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_values(parse_poly("1/2*x^2 + y"), I(5), I(10)),
                  std::invalid_argument);
  CHECK_THROWS_AS(enumerate_values(s2, I(5000), I(10)), std::runtime_error);

  // Indefinite leading form: never exhaustive, any box.
  CHECK(!enumerate_values(parse_poly("(x^2 - 2*y^2)^2 + x"), I(200), I(100)).exhaustive);
}

TEST_CASE("witnesses attain their values inside the box") {
  ValueTable t = enumerate_values(parse_poly("x^4 + y^4 + x"), I(30), I(1000000), true);
  REQUIRE(t.witnesses.size() == t.values.size());
  BiPoly F = parse_poly("x^4 + y^4 + x");
  std::mt19937 rng(12345);
  std::uniform_int_distribution<size_t> pick(0, t.values.size() - 1);
  for (int k = 0; k < 100; ++k) {
    size_t i = pick(rng);
    const auto& [wx, wy] = t.witnesses[i];
    CHECK(abs(wx) <= 30);
    CHECK(abs(wy) <= 30);
    CHECK(F.eval_int(wx, wy) == t.values[i]);
  }
  for (size_t i = 1; i < t.values.size(); ++i) CHECK(t.values[i - 1] < t.values[i]);
}

TEST_CASE("banded enumeration matches a naive double loop") {
  std::mt19937 rng(987654);
  std::uniform_int_distribution<int> coeff(-6, 6);
  std::uniform_int_distribution<int> boxd(5, 20);
  for (int trial = 0; trial < 20; ++trial) {
    BiPoly F;
    for (int i = 0; i <= 4; ++i)
      for (int j = 0; i + j <= 4; ++j)
        if (coeff(rng) > 0) F = F + BiPoly::monomial(Rat(coeff(rng)), i, j);
    if (F.is_zero()) F = parse_poly("x^2 - y");
    Int B = I(boxd(rng));
    Int N = I(500);

    std::set<Int> naive;
    for (Int x = -B; x <= B; ++x)
      for (Int y = -B; y <= B; ++y) {
        Int v = F.eval_int(x, y);
        if (abs(v) <= N) naive.insert(v);
      }
    std::vector<Int> expect(naive.begin(), naive.end());

    CHECK(enumerate_values(F, B, N, false, 1).values == expect);
    CHECK(enumerate_values(F, B, N, false, 7).values == expect);
    CHECK(enumerate_values(F, B, N, false, 64).values == expect);
    CHECK(enumerate_values(F, B, N, false, 1000).values == expect);
  }
}

TEST_CASE("missing progression values") {
  auto m1 = missing_value_search(parse_poly("x^4 + y^4"), I(1), I(0));
  REQUIRE(m1.has_value());
  CHECK(m1->value == 3);
  CHECK(m1->rigorous);

  auto m2 = missing_value_search(parse_poly("x^2 + y^2"), I(1), I(0));
  REQUIRE(m2.has_value());
  CHECK(m2->value == 3);
  CHECK(m2->rigorous);

  // 4Z from 3 upward: 4 = 4+0, 8 = 4+4, and 12 is a miss.
  auto m3 = missing_value_search(parse_poly("x^2 + y^2"), I(4), I(3));
  REQUIRE(m3.has_value());
  CHECK(m3->value == 12);
  CHECK(m3->rigorous);

  // No certified box here, so only a heuristic report.
  auto m4 = missing_value_search(parse_poly("(x^2 - 2*y^2)^2 + x"), I(1), I(0), I(4000000));
  REQUIRE(m4.has_value());
  CHECK(m4->value == 1);
  CHECK(!m4->rigorous);

  CHECK_THROWS_AS(missing_value_search(parse_poly("x^2 + y^2"), I(0), I(0)),
                  std::invalid_argument);
}

TEST_CASE("density counting and class fits") {
  BiPoly s2 = parse_poly("x^2 + y^2");
  std::vector<Int> Ns = {I(1000), I(10000), I(100000), I(1000000)};
  DensityFit f = density_table(s2, Ns, 2);
  REQUIRE(f.counts.size() == 4);
  CHECK(f.counts[0].second == 330);
  CHECK(f.counts[1].second == 2749);
  CHECK(f.counts[2].second == 24028);
  CHECK(f.counts[3].second == 216341);
  for (bool e : f.exhaustive) CHECK(e);
  CHECK(f.fitted == DensityClass::LandauLogHalf);
  CHECK(!f.tie);
  for (size_t i = 1; i < f.counts.size(); ++i)
    CHECK(f.counts[i - 1].second <= f.counts[i].second);

  std::vector<Int> Nq = {I(10000), I(100000), I(1000000)};
  DensityFit fq = density_table(parse_poly("x^4 + y^4"), Nq, 4);
  CHECK(fq.counts[0].second == 53);
  CHECK(fq.counts[1].second == 160);
  CHECK(fq.counts[2].second == 491);
  CHECK(fq.fitted == DensityClass::Sqrt);
  for (bool e : fq.exhaustive) CHECK(e);

  DensityFit fc = density_table(parse_poly("(x^2 - 2*y^2)^2 + (x^2 - 2*y^2)"), Nq, 4);
  CHECK(fc.counts[0].second == 62);
  CHECK(fc.counts[1].second == 175);
  CHECK(fc.counts[2].second == 506);
  CHECK(fc.fitted == DensityClass::Sqrt);
  CHECK(!fc.exhaustive[0]);
}

TEST_CASE("preferred density class breaks ties only") {
  BiPoly s2 = parse_poly("x^2 + y^2");
  std::vector<Int> Ns = {I(1000), I(10000), I(100000)};

  // A clearly worse class cannot take over.
  DensityFit fl = density_table(s2, Ns, 2, Rat(1, 4), DensityClass::Linear);
  CHECK(fl.fitted == DensityClass::LandauLogHalf);
  CHECK(!fl.tie);

  // With d = 2 the RootD shape coincides with Sqrt: a genuine tie the
  // preferred class wins, and the override is recorded.
  std::vector<Int> Nq = {I(10000), I(100000), I(1000000)};
  DensityFit ft = density_table(parse_poly("(x^2 - 2*y^2)^2 + (x^2 - 2*y^2)"), Nq, 2,
                                Rat(1, 4), DensityClass::RootD);
  CHECK(ft.fitted == DensityClass::RootD);
  CHECK(ft.tie);

  CHECK_THROWS_AS(density_table(s2, {}, 2), std::invalid_argument);
  CHECK_THROWS_AS(density_table(s2, {I(10), I(10)}, 2), std::invalid_argument);
}

TEST_CASE("density csv export") {
  BiPoly s2 = parse_poly("x^2 + y^2");
  DensityFit f = density_table(s2, {I(1000), I(10000)}, 2);
  CHECK(density_csv(f) == "N,count,exhaustive\n1000,330,1\n10000,2749,1\n");
}

TEST_CASE("annular sector lattice counts") {
  Direction xaxis = Direction::make_rational(I(1), I(0));
  Direction vert = Direction::make_vertical();
  Direction diag = Direction::make_rational(I(2), I(3));
  QuadIrr invrt2 = QuadIrr::make(I(0), I(1), I(2), I(2));  // slope 1/sqrt(2)
  Direction qd = Direction::make_quadratic(invrt2);

  CHECK(sector_count(xaxis, I(1024), 1, Rat(1)) == 98305);
  CHECK(sector_count(vert, I(1024), 1, Rat(1)) == 98305);
  CHECK(sector_count(diag, I(1024), 1, Rat(1)) == 98281);
  CHECK(sector_count(qd, I(1024), 1, Rat(1)) == 98271);
  CHECK(sector_count(xaxis, I(2048), 1, Rat(1)) == 279609);
  CHECK(sector_count(qd, I(1024), 2, Rat(1)) == 620959);

  // Reciprocal slopes see the same annulus through the axis swap.
  CHECK(sector_count(Direction::make_rational(I(1), I(5)), I(1024), 1, Rat(1)) ==
        sector_count(Direction::make_rational(I(5), I(1)), I(1024), 1, Rat(1)));

  // c = 0 keeps only points on the ray itself.
  CHECK(sector_count(xaxis, I(1024), 1, Rat(0)) == 1025);
  CHECK(sector_count(diag, I(1024), 1, Rat(0)) == 284);
  CHECK(sector_count(qd, I(1024), 1, Rat(0)) == 0);

  CHECK_THROWS_AS(sector_count(xaxis, I(1), 1, Rat(1)), std::invalid_argument);
  CHECK_THROWS_AS(sector_count(xaxis, I(1024), 0, Rat(1)), std::invalid_argument);
  CHECK_THROWS_AS(sector_count(xaxis, I(1024), 1, Rat(-1)), std::invalid_argument);
  CHECK_THROWS_AS(sector_count(xaxis, I(4), 1, Rat(100)), std::invalid_argument);
}

TEST_CASE("reducible specialization counts") {
  CHECK(reducible_specialization_count(parse_poly("x^2 - y"), I(100)) == 11);
  CHECK(reducible_specialization_count(parse_poly("x^2 - y"), I(10000)) == 101);
  CHECK(reducible_specialization_count(parse_poly("x^2 - y^2 - 1"), I(10000)) == 1);
  // Fibers of x*t - 1 are linear except the degenerate one at t = 0.
  CHECK(reducible_specialization_count(parse_poly("x*y - 1"), I(5)) == 1);
  // Degenerate fiber at 0 plus the three square leading values 1, 4, 9.
  CHECK(reducible_specialization_count(parse_poly("y*x^2 - 1"), I(10)) == 4);

  CHECK_THROWS_AS(reducible_specialization_count(parse_poly("y^2 + 1"), I(5)),
                  std::invalid_argument);
  CHECK_THROWS_AS(reducible_specialization_count(parse_poly("y*x - y^2"), I(5)),
                  std::invalid_argument);
  CHECK_THROWS_AS(reducible_specialization_count(parse_poly("x^2 - y"), I(-1)),
                  std::invalid_argument);
}
