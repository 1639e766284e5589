#include <doctest.h>

#include "qvs/contfrac.hpp"
#include "qvs/dioph.hpp"

using namespace qvs;

TEST_CASE("continued fractions") {
  auto r = cf_expand(Rat(17, 5));
  CHECK(r.head == std::vector<Int>{3, 2, 2});
  CHECK_FALSE(r.periodic());

  auto neg = cf_expand(Rat(-7, 2));
  CHECK(neg.head == std::vector<Int>{-4, 2});

  auto sqrt2 = cf_expand(QuadIrr::make(0, 1, 1, 2));
  CHECK(sqrt2.head == std::vector<Int>{1});
  CHECK(sqrt2.period == std::vector<Int>{2});

  auto golden = cf_expand(QuadIrr::make(1, 1, 2, 5));
  CHECK(golden.head == std::vector<Int>{1});
  CHECK(golden.period == std::vector<Int>{1});

  auto sqrt3 = cf_expand(QuadIrr::make(0, 1, 1, 3));
  CHECK(sqrt3.head == std::vector<Int>{1});
  CHECK(sqrt3.period == std::vector<Int>{1, 2});

  // Negative quadratic irrational: -sqrt(2) = [-2; 1, (1, 2)]... verified by
  // reconstruction through the convergents instead of frozen digits.
  auto negs = cf_expand(QuadIrr::make(0, -1, 1, 2));
  QuadExt val(0, -1, 2);
  auto cs = convergents(negs, 8);
  for (size_t i = 1; i < cs.size(); ++i) {
    QuadExt err = val - Rat(cs[i].p, cs[i].q);
    if (err.sgn() < 0) err = -err;
    CHECK(err.cmp(Rat(1, cs[i].q * cs[i].q)) < 0);
  }
}

TEST_CASE("convergents of sqrt2") {
  auto cf = cf_expand(QuadIrr::make(0, 1, 1, 2));
  auto cs = convergents(cf, 4);
  REQUIRE(cs.size() == 4);
  CHECK(cs[0].p == 1);
  CHECK(cs[0].q == 1);
  CHECK(cs[1].p == 3);
  CHECK(cs[1].q == 2);
  CHECK(cs[2].p == 7);
  CHECK(cs[2].q == 5);
  CHECK(cs[3].p == 17);
  CHECK(cs[3].q == 12);
}

TEST_CASE("badly approximable constants") {
  CHECK(badly_approximable_constant(cf_expand(QuadIrr::make(0, 1, 1, 2))) == Rat(1, 4));
  CHECK(badly_approximable_constant(cf_expand(QuadIrr::make(1, 1, 2, 5))) == Rat(1, 3));
  CHECK(badly_approximable_constant(cf_expand(QuadIrr::make(0, 1, 1, 3))) == Rat(1, 4));
}

TEST_CASE("direction pairs stay close to the line") {
  BinaryForm h = BinaryForm::from_bipoly(parse_poly("x^2 - 2*y^2"), 2);
  auto dirs = real_zero_directions(h);
  REQUIRE(dirs.size() == 2);
  auto pairs = direction_pairs(dirs[0], 6);
  REQUIRE(pairs.size() == 6);
  for (const auto& [u, v] : pairs) {
    CHECK(u >= 1);
    CHECK(abs(h.eval(Rat(u), Rat(v))) <= 1);  // Pell-bounded along the direction
  }
  // Pairs grow.
  CHECK(pairs.back().u > 10);
}

TEST_CASE("pell and automorphs") {
  auto s2 = pell_plus_one(2);
  CHECK(s2 == std::make_pair(Int(3), Int(2)));
  CHECK(pell_plus_one(3) == std::make_pair(Int(2), Int(1)));
  CHECK(pell_plus_one(8) == std::make_pair(Int(3), Int(1)));

  BinaryForm h = BinaryForm::from_bipoly(parse_poly("x^2 - 2*y^2"), 2);
  UnimodularMap m = form_automorph(h);
  CHECK(m.a == 3);
  CHECK(m.b == 4);
  CHECK(m.c == 2);
  CHECK(m.d == 3);
  // H is preserved: H(M(x, y)) = H(x, y).
  BiPoly hb = parse_poly("x^2 - 2*y^2");
  BiPoly pulled = hb.subs_linear(Rat(m.a), Rat(m.b), 0, Rat(m.c), Rat(m.d), 0);
  CHECK(pulled == hb);

  BinaryForm g = BinaryForm::from_bipoly(parse_poly("2*x^2 + x*y - 2*y^2"), 2);
  UnimodularMap mg = form_automorph(g);
  BiPoly gb = parse_poly("2*x^2 + x*y - 2*y^2");
  CHECK(gb.subs_linear(Rat(mg.a), Rat(mg.b), 0, Rat(mg.c), Rat(mg.d), 0) == gb);
}

TEST_CASE("automorph orbits in a congruence class") {
  BinaryForm h = BinaryForm::from_bipoly(parse_poly("x^2 - 2*y^2"), 2);
  UnimodularMap m = form_automorph(h);
  auto fam = automorph_orbit_in_class(m, {Int(3), Int(0)}, 4, 3, 0, 3, false);
  REQUIRE(fam.size() == 3);
  CHECK(fam[0] == std::make_pair(Int(3), Int(0)));
  CHECK(fam[1] == std::make_pair(Int(51), Int(36)));
  CHECK(fam[2] == std::make_pair(Int(1731), Int(1224)));
  for (const auto& [u, v] : fam) {
    CHECK(h.eval(Rat(u), Rat(v)) == 9);
    CHECK((u - 3) % 4 == 0);
    CHECK(v % 4 == 0);
  }
  // Backwards orbit hugs the conjugate direction but stays in class.
  auto back = automorph_orbit_in_class(m, {Int(3), Int(0)}, 4, 3, 0, 3, true);
  REQUIRE(back.size() == 3);
  CHECK(back[1] == std::make_pair(Int(51), Int(-36)));
}
