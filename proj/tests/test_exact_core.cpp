#include <doctest.h>

#include "qvs/numeric.hpp"
#include "qvs/resultant.hpp"
#include "qvs/unifactor.hpp"
#include "qvs/unipoly.hpp"
#include "qvs/uniroots.hpp"

using namespace qvs;

static UniPoly P(std::initializer_list<long> ascending) {
  std::vector<Rat> c;
  for (long v : ascending) c.emplace_back(v);
  return UniPoly(std::move(c));
}

TEST_CASE("integer helpers") {
  CHECK(floor_div(Int(7), Int(2)) == 3);
  CHECK(floor_div(Int(-7), Int(2)) == -4);
  CHECK(floor_div(Int(7), Int(-2)) == -4);
  CHECK(ceil_div(Int(7), Int(2)) == 4);
  CHECK(isqrt_floor(Int(99)) == 9);
  CHECK(iroot_floor(Int(1000000), 4) == 31);
  Int r;
  CHECK(is_square(Int(144), &r));
  CHECK(r == 12);
  CHECK_FALSE(is_square(Int(145)));
  Int s;
  CHECK(squarefree_part(Int(72), &s) == 2);
  CHECK(s == 6);
  CHECK(rat_from_string("-3/6") == Rat(-1, 2));
  CHECK(rat_to_string(Rat(-1, 2)) == "-1/2");
  CHECK(rat_to_string(Rat(4, 2)) == "2");
  CHECK_THROWS_AS(rat_from_string("1.5"), std::invalid_argument);
}

TEST_CASE("quadratic field elements") {
  QuadExt r2(0, 1, 2);  // sqrt(2)
  CHECK(r2.sgn() == 1);
  CHECK((-r2).sgn() == -1);
  CHECK((r2 * r2).a() == 2);
  CHECK((r2 * Rat(100)).floor() == 141);
  CHECK((-(r2 * Rat(100))).floor() == -142);
  QuadExt golden(Rat(1, 2), Rat(1, 2), 5);
  CHECK(golden * golden == golden + Rat(1));
  CHECK(golden.floor() == 1);
  // 1 + sqrt(2) has norm -1.
  QuadExt u(1, 1, 2);
  CHECK(u.norm() == -1);
  CHECK((u * u.conj()).a() == -1);
  CHECK(u.inverse() == QuadExt(-1, 1, 2));
  CHECK(QuadExt(Rat(3), Rat(-2), 2).sgn() == 1);    // 3 - 2 sqrt(2) > 0
  CHECK(QuadExt(Rat(14), Rat(-10), 2).sgn() == -1); // 14 - 10 sqrt(2) < 0
}

TEST_CASE("unipoly arithmetic and division") {
  UniPoly p = P({-2, 0, 1});  // t^2 - 2
  UniPoly q = P({1, 1});      // t + 1
  CHECK((p * q).degree() == 3);
  CHECK(p.eval(Rat(3)) == 7);
  auto [quo, rem] = p.divrem(q);
  CHECK(quo == P({-1, 1}));
  CHECK(rem == P({-1}));
  CHECK(UniPoly::gcd(p * q, q * q) == P({1, 1}));
  CHECK(p.compose_affine(1, 1) == P({-1, 2, 1}));
  CHECK(P({0, 2, 4}).content() == 2);
  CHECK(P({0, -2, -4}).primitive_part() == P({0, 1, 2}));
  CHECK((p * p * q).squarefree_part() == (p * q) * Rat(1));
}

TEST_CASE("sturm root counting") {
  UniPoly p = P({-2, 0, 1});
  CHECK(count_real_roots(p, Rat(0), Rat(2)) == 1);
  CHECK(count_real_roots(p) == 2);
  CHECK(count_real_roots(p, Rat(-2), Rat(2)) == 2);
  CHECK(count_real_roots(P({1, 0, 1})) == 0);
  // Closed-interval convention: endpoint roots count.
  CHECK(count_real_roots(P({-1, 1}), Rat(1), Rat(2)) == 1);
  CHECK(count_real_roots(P({-1, 1}), Rat(0), Rat(1)) == 1);
  // Repeated roots count once.
  CHECK(count_real_roots(P({1, 2, 1}), Rat(-3), Rat(3)) == 1);
  // sqrt(2) and sqrt(3) in [0, 2].
  UniPoly p46 = P({6, 0, -5, 0, 1});
  CHECK(count_real_roots(p46, Rat(0), Rat(2)) == 2);
}

TEST_CASE("root isolation and certified bounds") {
  UniPoly p = P({-2, 0, 1});
  auto ivs = isolate_real_roots(p);
  REQUIRE(ivs.size() == 2);
  CHECK(ivs[0].hi < ivs[1].lo);
  for (const auto& iv : ivs) {
    if (!iv.exact) CHECK(sign(p.eval(iv.lo)) * sign(p.eval(iv.hi)) == -1);
  }
  auto c = certified_lower_bound(P({1, 0, 1}), Rat(-1), Rat(1));
  REQUIRE(c.has_value());
  CHECK(*c == Rat(1, 2));
  CHECK_FALSE(certified_lower_bound(P({-2, 0, 1}), Rat(-1), Rat(1)).has_value());
  auto neg = find_negative_point(p);
  REQUIRE(neg.has_value());
  CHECK(p.eval(*neg) < 0);
  CHECK_FALSE(find_negative_point(P({1, 0, 1})).has_value());
  auto m = integer_minimum(P({0, -3, 1}));
  REQUIRE(m.has_value());
  CHECK(m->first == 1);
  CHECK(m->second == -2);
  CHECK_FALSE(integer_minimum(P({0, 1})).has_value());
}

TEST_CASE("factorization over Q") {
  UniPoly p = P({-2, 0, 1});  // irreducible
  UniPoly q = P({1, 1});
  auto f = uni_factor(p * q * q);
  CHECK(f.unit == 1);
  REQUIRE(f.factors.size() == 2);
  CHECK(f.factors[0].f == q);
  CHECK(f.factors[0].mult == 2);
  CHECK(f.factors[1].f == p);
  CHECK(f.factors[1].mult == 1);
  CHECK(f.product() == p * q * q);

  auto g = uni_factor(P({-2, -4, 6}));  // 2(t-1)(3t+1)
  CHECK(g.unit == 2);
  REQUIRE(g.factors.size() == 2);
  CHECK(g.factors[0].f == P({-1, 1}));
  CHECK(g.factors[1].f == P({1, 3}));

  CHECK(is_irreducible(P({1, 0, 0, 0, 1})));        // t^4 + 1
  CHECK(is_irreducible(P({2, 0, 0, 1})));           // t^3 + 2
  CHECK_FALSE(is_irreducible(P({1, 2, 3, 2, 1})));  // (t^2+t+1)^2

  // 2 + 2 split without rational roots.
  UniPoly a = P({1, 1, 1});    // t^2 + t + 1
  UniPoly b = P({-2, 0, 1});   // t^2 - 2
  auto h = uni_factor(a * b);
  REQUIRE(h.factors.size() == 2);
  CHECK(h.factors[0].f == b);
  CHECK(h.factors[1].f == a);

  // 3 + 3 split.
  UniPoly c1 = P({2, 0, 0, 1});   // t^3 + 2
  UniPoly c2 = P({-3, 1, 0, 1});  // t^3 + t - 3
  auto k = uni_factor(c1 * c2);
  REQUIRE(k.factors.size() == 2);
  CHECK(k.product() == c1 * c2);

  // Monomial and content bookkeeping: -4 t^3 (t^2 - 2).
  auto mfac = uni_factor(P({0, 0, 0, 8, 0, -4}));
  CHECK(mfac.unit == -4);
  REQUIRE(mfac.factors.size() == 2);
  CHECK(mfac.factors[0].f == P({0, 1}));
  CHECK(mfac.factors[0].mult == 3);
  CHECK(mfac.factors[1].f == P({-2, 0, 1}));
  CHECK(mfac.product() == P({0, 0, 0, 8, 0, -4}));
}

TEST_CASE("squarefree decomposition") {
  UniPoly p = P({-1, 1});  // t - 1
  UniPoly q = P({2, 1});   // t + 2
  auto parts = squarefree_decomposition(p * p * q * q * q);
  REQUIRE(parts.size() == 2);
  CHECK(parts[0].f == p);
  CHECK(parts[0].mult == 2);
  CHECK(parts[1].f == q);
  CHECK(parts[1].mult == 3);
}

TEST_CASE("resultants") {
  CHECK(resultant(P({-1, 1}), P({1, 1})) == 2);
  CHECK(resultant(P({-2, 0, 1}), P({-3, 0, 1})) == 1);
  // Shared root forces zero.
  CHECK(resultant(P({-2, 0, 1}), P({-2, 0, 1}) * P({1, 1})) == 0);
  // Res(p, q) with constant q: q^deg p.
  CHECK(resultant(P({-2, 0, 1}), P({3})) == 9);
}
