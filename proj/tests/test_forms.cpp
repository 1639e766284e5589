#include <doctest.h>

#include "qvs/binform.hpp"
#include "qvs/bipoly.hpp"

using namespace qvs;

TEST_CASE("polynomial parsing") {
  BiPoly f = parse_poly("x^2*y^2 + x^3 + x^2 + y");
  CHECK(f.degree() == 4);
  CHECK(f.coeff(2, 2) == 1);
  CHECK(f.coeff(0, 1) == 1);

  BiPoly g = parse_poly("(x^2 - 2*y^2)^2 + x");
  CHECK(g.coeff(4, 0) == 1);
  CHECK(g.coeff(2, 2) == -4);
  CHECK(g.coeff(0, 4) == 4);
  CHECK(g.coeff(1, 0) == 1);

  CHECK(parse_poly("-x + - y") == -BiPoly::var_x() - BiPoly::var_y());
  CHECK(parse_poly("1/2*x^2") == BiPoly::monomial(Rat(1, 2), 2, 0));
  CHECK(parse_poly("3/4") == BiPoly::constant(Rat(3, 4)));
  CHECK(parse_poly("2^3") == BiPoly::constant(8));

  CHECK_THROWS_AS(parse_poly("2x"), ParseError);
  CHECK_THROWS_AS(parse_poly("x/2"), ParseError);
  CHECK_THROWS_AS(parse_poly("x^y"), ParseError);
  CHECK_THROWS_AS(parse_poly("z"), ParseError);
  CHECK_THROWS_AS(parse_poly("(x"), ParseError);
  CHECK_THROWS_AS(parse_poly(""), ParseError);
}

TEST_CASE("bipoly basics") {
  BiPoly f = parse_poly("x^2*y + 3*x - y + 4");
  CHECK(f.eval(Rat(2), Rat(-1)) == -4 + 6 + 1 + 4);
  CHECK(f.eval_int(Int(2), Int(-1)) == 7);
  CHECK(f.degree() == 3);
  CHECK(f.homogeneous_part(3) == parse_poly("x^2*y"));
  CHECK(f.swap_xy() == parse_poly("y^2*x + 3*y - x + 4"));
  CHECK(parse_poly("x^2 - y^2").is_homogeneous());
  CHECK_FALSE(f.is_homogeneous());

  auto rows = f.by_powers_of_y();
  REQUIRE(rows.size() == 2);
  CHECK(rows[0] == UniPoly({Rat(4), Rat(3)}));
  CHECK(rows[1] == UniPoly({Rat(-1), Rat(0), Rat(1)}));
  CHECK(BiPoly::from_powers_of_y(rows) == f);

  UniPoly diag = f.restrict_line(0, 1, 1, -1);  // t -> f(t, 1 - t)
  CHECK(diag.eval(Rat(0)) == f.eval(Rat(0), Rat(1)));
  CHECK(diag.eval(Rat(5)) == f.eval(Rat(5), Rat(-4)));
}

TEST_CASE("normalization") {
  auto [n, info] = normalize(parse_poly("1/2*x^2 + 1/3*y - 5"));
  CHECK(info.shift == -5);
  CHECK(info.scale == 6);
  CHECK(n == parse_poly("3*x^2 + 2*y"));
  CHECK(n.coeff(0, 0) == 0);
  CHECK(n.is_integral());
}

TEST_CASE("unimodular maps") {
  UnimodularMap a = unimodular_from_linear(2, 3);
  CHECK(a.a == 2);
  CHECK(a.b == 3);
  CHECK(a.c == 1);
  CHECK(a.d == 2);
  UnimodularMap b = unimodular_from_linear(0, 1);
  CHECK(b.a == 0);
  CHECK(b.b == 1);
  CHECK(b.c == -1);
  CHECK(b.d == 0);
  CHECK(unimodular_from_linear(1, 0).det() == 1);

  // The form 2x + 3y becomes the first coordinate.
  BiPoly f = parse_poly("2*x + 3*y");
  CHECK(apply_unimodular(f, a) == BiPoly::var_x());

  // Value sets coincide: G(A(p)) = F(p).
  BiPoly g = apply_unimodular(parse_poly("x^2*y + x - y"), a);
  for (long x = -3; x <= 3; ++x)
    for (long y = -3; y <= 3; ++y) {
      auto [u, v] = a.apply(Int(x), Int(y));
      CHECK(g.eval_int(u, v) == parse_poly("x^2*y + x - y").eval_int(Int(x), Int(y)));
    }
}

TEST_CASE("form factorization") {
  BinaryForm h = BinaryForm::from_bipoly(parse_poly("(x^2 - 2*y^2)^2*(x^2 + y^2)"), 6);
  auto fac = factor_form(h);
  CHECK(fac.unit == 1);
  REQUIRE(fac.factors.size() == 2);
  CHECK(fac.factors[0].f == BinaryForm(2, {Rat(1), Rat(0), Rat(-2)}));
  CHECK(fac.factors[0].mult == 2);
  CHECK(fac.factors[1].f == BinaryForm(2, {Rat(1), Rat(0), Rat(1)}));
  CHECK(fac.factors[1].mult == 1);
  CHECK(fac.product() == h);

  auto fac2 = factor_form(BinaryForm::from_bipoly(parse_poly("x^4 + 2*x*y^3"), 4));
  REQUIRE(fac2.factors.size() == 2);
  CHECK(fac2.factors[0].f == BinaryForm(1, {Rat(1), Rat(0)}));  // x
  CHECK(fac2.factors[1].f.degree() == 3);
}

TEST_CASE("definiteness") {
  auto pd = definiteness(BinaryForm::from_bipoly(parse_poly("x^2 + y^2"), 2));
  CHECK(pd.kind == Definiteness::PositiveDefinite);

  auto nd = definiteness(BinaryForm::from_bipoly(parse_poly("-x^2 - 2*y^2"), 2));
  CHECK(nd.kind == Definiteness::NegativeDefinite);
  REQUIRE(nd.negative_point.has_value());

  auto ind = definiteness(BinaryForm::from_bipoly(parse_poly("x^2 - 2*y^2"), 2));
  CHECK(ind.kind == Definiteness::Indefinite);
  REQUIRE(ind.negative_point.has_value());
  auto [nx, ny] = *ind.negative_point;
  CHECK(BinaryForm::from_bipoly(parse_poly("x^2 - 2*y^2"), 2).eval(Rat(nx), Rat(ny)) < 0);

  auto psd = definiteness(BinaryForm::from_bipoly(parse_poly("x^2*y^2"), 4));
  CHECK(psd.kind == Definiteness::PositiveSemidefinite);
  REQUIRE(psd.zero_point.has_value());
  CHECK(psd.zero_point == std::make_pair(Int(1), Int(0)));

  auto quartic_ind = definiteness(BinaryForm::from_bipoly(parse_poly("x^4 + 2*x*y^3"), 4));
  CHECK(quartic_ind.kind == Definiteness::Indefinite);
  REQUIRE(quartic_ind.negative_point.has_value());

  auto pd4 = definiteness(BinaryForm::from_bipoly(parse_poly("x^4 + y^4"), 4));
  CHECK(pd4.kind == Definiteness::PositiveDefinite);

  auto psd4 =
      definiteness(BinaryForm::from_bipoly(parse_poly("(x^2 - 2*y^2)^2"), 4));
  CHECK(psd4.kind == Definiteness::PositiveSemidefinite);
  CHECK_FALSE(psd4.zero_point.has_value());  // irrational zero directions only
}

TEST_CASE("psd split and form divisibility") {
  BinaryForm g = BinaryForm::from_bipoly(parse_poly("(x^2 + y^2)*x^2"), 4);
  auto [p0, ftilde] = split_psd(g);
  CHECK(p0 == BinaryForm(2, {Rat(1), Rat(0), Rat(1)}));
  CHECK(ftilde == BinaryForm(2, {Rat(1), Rat(0), Rat(0)}));

  BinaryForm x = BinaryForm(1, {Rat(1), Rat(0)});
  BinaryForm x3y = BinaryForm::from_bipoly(parse_poly("x^3*y"), 4);
  CHECK(multiplicity_in(x, x3y) == 3);
  CHECK(divides_form(x, x3y));
  CHECK_FALSE(divides_form(BinaryForm(1, {Rat(1), Rat(1)}), x3y));

  BinaryForm zero;
  CHECK(form_gcd(BinaryForm::from_bipoly(parse_poly("x^2 - 2*y^2"), 2), zero) ==
        BinaryForm(2, {Rat(1), Rat(0), Rat(-2)}));
  CHECK(form_gcd(BinaryForm::from_bipoly(parse_poly("x^2*y"), 3),
                 BinaryForm::from_bipoly(parse_poly("x*y^2"), 3)) ==
        BinaryForm(2, {Rat(0), Rat(1), Rat(0)}));
}

TEST_CASE("zero directions and minimal forms") {
  BinaryForm h = BinaryForm::from_bipoly(parse_poly("x^2 - 2*y^2"), 2);
  auto dirs = real_zero_directions(h);
  REQUIRE(dirs.size() == 2);
  for (const auto& d : dirs) {
    CHECK_FALSE(d.rational);
    CHECK(minimal_form(d) == h);
    CHECK(sign_at_direction(h, d) == 0);
  }
  CHECK(dirs[0].qslope->conjugate() == *dirs[1].qslope);
  CHECK(dirs[0].qslope->D == 2);

  BinaryForm ind = BinaryForm::from_bipoly(parse_poly("x^2 + x*y - y^2"), 2);
  CHECK(sign_at_direction(ind, Direction::make_vertical()) == -1);
  CHECK(sign_at_direction(ind, Direction::make_rational(1, 1)) == 1);

  CHECK(minimal_form(Direction::make_rational(1, -1)) ==
        BinaryForm(1, {Rat(1), Rat(1)}));
  CHECK(minimal_form(Direction::make_vertical()) == BinaryForm(1, {Rat(1), Rat(0)}));

  auto vert = real_zero_directions(BinaryForm::from_bipoly(parse_poly("x^2"), 2));
  REQUIRE(vert.size() == 1);
  CHECK(vert[0].vertical);
  CHECK(vert[0] == Direction::make_rational(0, -5));

  // Antipodes are identified.
  CHECK(Direction::make_rational(1, 1) == Direction::make_rational(-2, -2));
}
