// Plane-curve helpers for the reducible-cofactor analysis: genus bookkeeping
// for cubics (with singular points of the projective closure), line-pencil
// parametrizations at a rational singularity, Mobius elimination, and exact
// integer points on conics.

#include "qvs/curves.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "qvs/binform.hpp"
#include "qvs/dioph.hpp"
#include "qvs/numeric.hpp"
#include "qvs/resultant.hpp"
#include "qvs/unifactor.hpp"
#include "qvs/uniroots.hpp"

namespace qvs {

namespace {

BiPoly d_dx(const BiPoly& P) {
  BiPoly r;
  for (const auto& [key, c] : P.terms())
    if (key.first > 0) r.set_coeff(key.first - 1, key.second, c * key.first);
  return r;
}

BiPoly d_dy(const BiPoly& P) {
  BiPoly r;
  for (const auto& [key, c] : P.terms())
    if (key.second > 0) r.set_coeff(key.first, key.second - 1, c * key.second);
  return r;
}

/// P(x0, y) as a polynomial in y.
UniPoly eval_x(const BiPoly& P, const Rat& x0) {
  std::vector<UniPoly> rows = P.by_powers_of_y();
  std::vector<Rat> c;
  c.reserve(rows.size());
  for (const UniPoly& row : rows) c.push_back(row.eval(x0));
  return UniPoly(c);
}

Rat cf(const UniPoly& p, int k) { return k <= p.degree() ? p.coeff(k) : Rat(0); }

Rat qdiv(const Int& a, const Int& b) {
  Rat q(a, b);
  q.canonicalize();
  return q;
}

std::vector<UniPoly> y_rows(const BiPoly& f) {
  std::vector<UniPoly> rows = f.by_powers_of_y();
  while (!rows.empty() && rows.back().is_zero()) rows.pop_back();
  return rows;
}

UniPoly det_laplace(const std::vector<std::vector<UniPoly>>& M) {
  size_t n = M.size();
  if (n == 0) return UniPoly::constant(1);
  if (n == 1) return M[0][0];
  UniPoly acc;
  for (size_t i = 0; i < n; ++i) {
    if (M[i][0].is_zero()) continue;
    std::vector<std::vector<UniPoly>> minor;
    minor.reserve(n - 1);
    for (size_t r = 0; r < n; ++r) {
      if (r == i) continue;
      std::vector<UniPoly> row(M[r].begin() + 1, M[r].end());
      minor.push_back(std::move(row));
    }
    UniPoly term = M[i][0] * det_laplace(minor);
    acc = (i % 2 == 0) ? acc + term : acc - term;
  }
  return acc;
}

/// Resultant of f and g with respect to y; entries are polynomials in x.
UniPoly res_y(const BiPoly& f, const BiPoly& g) {
  std::vector<UniPoly> a = y_rows(f), b = y_rows(g);
  if (a.empty() || b.empty()) return UniPoly();
  int m = static_cast<int>(a.size()) - 1, n = static_cast<int>(b.size()) - 1;
  if (m == 0 && n == 0) return UniPoly::constant(1);
  if (n == 0) {
    UniPoly r = UniPoly::constant(1);
    for (int i = 0; i < m; ++i) r = r * b[0];
    return r;
  }
  if (m == 0) {
    UniPoly r = UniPoly::constant(1);
    for (int i = 0; i < n; ++i) r = r * a[0];
    return r;
  }
  size_t dim = m + n;
  std::vector<std::vector<UniPoly>> S(dim, std::vector<UniPoly>(dim));
  for (int r = 0; r < n; ++r)
    for (int k = 0; k <= m; ++k) S[r][r + k] = a[m - k];
  for (int r = 0; r < m; ++r)
    for (int k = 0; k <= n; ++k) S[n + r][r + k] = b[n - k];
  return det_laplace(S);
}

std::vector<Int> divisors_of(const Int& n0, const Int& cap = Int(2000000)) {
  Int n = abs(n0);
  if (n == 0) throw std::domain_error("divisor enumeration of zero");
  std::vector<Int> small, large;
  for (Int d = 1; d * d <= n; ++d) {
    if (d > cap) throw std::domain_error("divisor bound too large to enumerate");
    if (n % d == 0) {
      small.push_back(d);
      if (d * d != n) large.push_back(n / d);
    }
  }
  for (auto it = large.rbegin(); it != large.rend(); ++it) small.push_back(*it);
  return small;
}

/// All rational roots, via the rational root theorem on the squarefree
/// primitive part.
std::vector<Rat> rational_roots(const UniPoly& p0) {
  std::vector<Rat> out;
  if (p0.degree() <= 0) return out;
  // strip powers of t
  std::vector<Rat> c = p0.coeffs();
  size_t low = 0;
  while (low < c.size() && c[low] == 0) ++low;
  if (low > 0) out.push_back(Rat(0));
  UniPoly p(std::vector<Rat>(c.begin() + low, c.end()));
  if (p.degree() <= 0) return out;
  UniPoly g = UniPoly::gcd(p, p.derivative());
  if (g.degree() >= 1) p = p.divexact(g);
  Int den(1);
  for (const Rat& q : p.coeffs()) den = lcm_int(den, qvs::den(q));
  Int a0 = num(p.coeff(0) * den), al = num(p.lead() * den);
  for (const Int& pn : divisors_of(a0))
    for (const Int& qd : divisors_of(al)) {
      for (int s = 0; s < 2; ++s) {
        Rat r = s ? qdiv(Int(-pn), qd) : qdiv(pn, qd);
        if (p.eval(r) == 0 &&
            std::find(out.begin(), out.end(), r) == out.end())
          out.push_back(r);
      }
    }
  std::sort(out.begin(), out.end());
  return out;
}

/// Integer roots of p via root isolation.
std::vector<Int> int_roots(const UniPoly& p) {
  std::vector<Int> out;
  if (p.degree() <= 0) return out;
  UniPoly g = UniPoly::gcd(p, p.derivative());
  UniPoly sf = g.degree() >= 1 ? p.divexact(g) : p;
  for (RootInterval iv : isolate_real_roots(p)) {
    while (!iv.exact && floor_rat(iv.hi) - ceil_rat(iv.lo) > 0)
      refine_interval(sf, iv, 2);
    for (Int k = ceil_rat(iv.lo); k <= floor_rat(iv.hi); ++k)
      if (p.eval(Rat(k)) == 0) out.push_back(k);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// Exact division of P by a*x + b*y + c when the remainder vanishes.
std::optional<BiPoly> divide_linear(const BiPoly& P, const Rat& a, const Rat& b,
                                    const Rat& c) {
  if (a == 0) {
    if (b == 0) return std::nullopt;
    auto q = divide_linear(P.swap_xy(), b, a, c);
    if (!q) return std::nullopt;
    return q->swap_xy();
  }
  std::vector<UniPoly> r = P.by_powers_of_x();  // coefficients in y
  int n = static_cast<int>(r.size()) - 1;
  if (n < 1) return std::nullopt;
  UniPoly tail({c, b});  // b*y + c
  std::vector<UniPoly> q(n);
  for (int k = n; k >= 1; --k) {
    UniPoly qk = r[k] * (Rat(1) / a);
    q[k - 1] = qk;
    r[k - 1] = r[k - 1] - qk * tail;
  }
  if (!r[0].is_zero()) return std::nullopt;
  BiPoly quot;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= q[i].degree(); ++j)
      if (q[i].coeff(j) != 0) quot.set_coeff(i, j, q[i].coeff(j));
  return quot;
}

struct LinePoly {
  Rat a, b, c;  // a*x + b*y + c
  BiPoly poly() const {
    return BiPoly::monomial(a, 1, 0) + BiPoly::monomial(b, 0, 1) + BiPoly::constant(c);
  }
};

/// One rational line factor of P (total degree >= 2), with the quotient.
std::optional<std::pair<LinePoly, BiPoly>> extract_line(const BiPoly& P) {
  int d = P.degree();
  BinaryForm top = BinaryForm::from_bipoly(P.homogeneous_part(d), d);
  FormFactorization fac = factor_form(top);
  for (const FormFactor& ff : fac.factors) {
    if (ff.f.degree() != 1) continue;
    Rat a = ff.f.coeff(0), b = ff.f.coeff(1);
    // Align so the direction form becomes the first coordinate, then look for
    // a constant shift c with (u + c) | P.
    UnimodularMap A = unimodular_from_linear(num(a), num(b));
    BiPoly G = apply_unimodular(P, A);
    std::vector<UniPoly> rows = y_rows(G);
    UniPoly common;
    for (const UniPoly& row : rows) common = UniPoly::gcd(common, row);
    for (const Rat& s : rational_roots(common)) {
      auto q = divide_linear(P, a, b, -s);
      if (q) return std::make_pair(LinePoly{a, b, -s}, *q);
    }
    // the pure form itself (c = 0) when the rows share the root 0
    if (!common.is_zero() && cf(common, 0) == 0) {
      auto q = divide_linear(P, a, b, Rat(0));
      if (q) return std::make_pair(LinePoly{a, b, Rat(0)}, *q);
    }
  }
  return std::nullopt;
}

std::optional<std::pair<Rat, Rat>> line_intersection(const LinePoly& f,
                                                     const LinePoly& g) {
  Rat det = f.a * g.b - f.b * g.a;
  if (det == 0) return std::nullopt;
  Rat x = (-f.c * g.b + f.b * g.c) / det;
  Rat y = (-f.a * g.c + f.c * g.a) / det;
  return std::make_pair(x, y);
}

void add_singular(PlaneCurveReport& rep, const Rat& x, const Rat& y, int w) {
  for (const SingularPoint& s : rep.singular)
    if (s.w == w && s.x == x && s.y == y) return;
  rep.singular.push_back({x, y, w});
}

void verify_param(const BiPoly& P, const CurveParam& pr) {
  int d = P.degree();
  std::vector<UniPoly> pow1{UniPoly::constant(1)}, pow2{UniPoly::constant(1)},
      powq{UniPoly::constant(1)};
  for (int i = 0; i < d; ++i) {
    pow1.push_back(pow1.back() * pr.R1);
    pow2.push_back(pow2.back() * pr.R2);
    powq.push_back(powq.back() * pr.Q1);
  }
  UniPoly acc;
  for (const auto& [key, c] : P.terms()) {
    int i = key.first, j = key.second;
    acc = acc + pow1[i] * pow2[j] * powq[d - i - j] * c;
  }
  if (!acc.is_zero())
    throw std::domain_error("pencil parametrization fails the curve identity");
}

}  // namespace

const char* curve_class_name(CurveClass c) {
  switch (c) {
    case CurveClass::ReducibleOverQ: return "reducible";
    case CurveClass::QbarReducible: return "conjugate-components";
    case CurveClass::GenusZero: return "genus-0";
    case CurveClass::GenusOne: return "genus-1";
  }
  return "?";
}

PlaneCurveReport cubic_curve_analysis(const BiPoly& P) {
  if (P.degree() != 3) throw std::domain_error("cubic curve analysis needs total degree 3");
  PlaneCurveReport rep;

  // Curves that are univariate in one coordinate are unions of parallel lines.
  if (P.degree_y() == 0 || P.degree_x() == 0) {
    bool swapped = P.degree_y() == 0;
    UniPoly p = swapped ? P.by_powers_of_y()[0] : P.by_powers_of_x()[0];
    UniFactorization fac = uni_factor(p);
    bool rational_line = false;
    for (const UniFactor& f : fac.factors) {
      BiPoly comp;
      for (int k = 0; k <= f.f.degree(); ++k) {
        if (f.f.coeff(k) == 0) continue;
        comp = comp + (swapped ? BiPoly::monomial(f.f.coeff(k), k, 0)
                               : BiPoly::monomial(f.f.coeff(k), 0, k));
      }
      for (int m = 0; m < f.mult; ++m) rep.components.push_back(comp);
      if (f.f.degree() == 1) rational_line = true;
    }
    rep.cls = rational_line ? CurveClass::ReducibleOverQ : CurveClass::QbarReducible;
    add_singular(rep, swapped ? Rat(0) : Rat(1), swapped ? Rat(1) : Rat(0), 0);
    rep.singular_count = 1;
    rep.note = "parallel lines in one coordinate";
    return rep;
  }

  if (auto split = extract_line(P)) {
    rep.cls = CurveClass::ReducibleOverQ;
    std::vector<LinePoly> lines{split->first};
    BiPoly rest = split->second;
    while (rest.degree() >= 2) {
      auto more = extract_line(rest);
      if (!more) break;
      lines.push_back(more->first);
      rest = more->second;
    }
    if (rest.degree() == 1)
      lines.push_back({rest.coeff(1, 0), rest.coeff(0, 1), rest.coeff(0, 0)});
    for (const LinePoly& L : lines) rep.components.push_back(L.poly());
    if (rest.degree() >= 2) rep.components.push_back(rest);
    // rational pairwise intersections are singular points of the union
    for (size_t i = 0; i < lines.size(); ++i)
      for (size_t j = i + 1; j < lines.size(); ++j)
        if (auto pt = line_intersection(lines[i], lines[j]))
          add_singular(rep, pt->first, pt->second, 1);
    if (rest.degree() >= 2) {
      for (const LinePoly& L : lines) {
        // intersect the line with the residual conic
        BiPoly conic = rest;
        UniPoly restr;
        if (L.b != 0) {
          // y = -(a x + c)/b
          std::vector<UniPoly> rows = conic.by_powers_of_y();
          UniPoly ylin({-L.c / L.b, -L.a / L.b});
          UniPoly acc, pw = UniPoly::constant(1);
          for (size_t j = 0; j < rows.size(); ++j) {
            acc = acc + rows[j] * pw;
            pw = pw * ylin;
          }
          restr = acc;
          for (const Rat& x : rational_roots(restr))
            add_singular(rep, x, ylin.eval(x), 1);
        } else {
          Rat x0 = -L.c / L.a;
          for (const Rat& y : rational_roots(eval_x(conic, x0)))
            add_singular(rep, x0, y, 1);
        }
      }
    }
    bool repeated = false;
    for (size_t i = 0; i < lines.size() && !repeated; ++i)
      for (size_t j = i + 1; j < lines.size(); ++j)
        if (lines[i].a * lines[j].b == lines[i].b * lines[j].a &&
            lines[i].a * lines[j].c == lines[i].c * lines[j].a &&
            lines[i].b * lines[j].c == lines[i].c * lines[j].b)
          repeated = true;
    rep.singular_count = static_cast<int>(rep.singular.size());
    rep.note = repeated ? "repeated line: the singular locus is one-dimensional"
                        : "rational components";
    return rep;
  }

  // Irreducible over Q from here on.
  BiPoly hom3 = P.homogeneous_part(3), hom2 = P.homogeneous_part(2);
  BinaryForm P3 = BinaryForm::from_bipoly(hom3, 3);
  FormFactorization fac3 = factor_form(P3);
  for (const FormFactor& ff : fac3.factors) {
    if (ff.f.degree() != 1 || ff.mult < 2) continue;
    // direction annihilating the factor
    Rat a = ff.f.coeff(0), b = ff.f.coeff(1);
    Rat ex = b, ey = -a;
    if (hom2.is_zero() || hom2.eval(ex, ey) == 0) add_singular(rep, ex, ey, 0);
  }
  BiPoly Px = d_dx(P), Py = d_dy(P);
  UniPoly Bx = res_y(P, Py);
  if (Bx.is_zero()) throw std::domain_error("unexpected resultant degeneracy");
  for (const Rat& xs : rational_roots(Bx)) {
    UniPoly g = UniPoly::gcd(UniPoly::gcd(eval_x(P, xs), eval_x(Px, xs)),
                             eval_x(Py, xs));
    for (const Rat& ys : rational_roots(g)) add_singular(rep, xs, ys, 1);
    if (g.degree() == 0) continue;
  }
  rep.singular_count = static_cast<int>(rep.singular.size());

  if (rep.singular.empty()) {
    rep.cls = CurveClass::GenusOne;
    rep.note = "no rational singular point";
    return rep;
  }
  if (rep.singular.size() >= 2) {
    rep.cls = CurveClass::QbarReducible;
    rep.note = "several singular points: the curve splits over the closure";
    return rep;
  }

  const SingularPoint& S = rep.singular[0];
  if (S.w == 1) {
    BiPoly P0 = P.shift(S.x, S.y);
    if (P0.coeff(0, 0) != 0 || !P0.homogeneous_part(1).is_zero())
      throw std::domain_error("recorded singular point fails the tangency test");
    BiPoly H2 = P0.homogeneous_part(2), H3 = P0.homogeneous_part(3);
    UniPoly A({H2.coeff(2, 0), H2.coeff(1, 1), H2.coeff(0, 2)});
    UniPoly B({H3.coeff(3, 0), H3.coeff(2, 1), H3.coeff(1, 2), H3.coeff(0, 3)});
    if (A.is_zero()) {
      rep.cls = CurveClass::QbarReducible;
      rep.note = "cone of conjugate lines through the singular point";
      return rep;
    }
    CurveParam pr;
    pr.R1 = B * S.x - A;
    pr.Q1 = B;
    pr.R2 = B * S.y - UniPoly::monomial(1, 1) * A;
    pr.Q2 = B;
    verify_param(P, pr);
    rep.cls = CurveClass::GenusZero;
    rep.param = pr;
    rep.note = "line pencil through the singular point";
    return rep;
  }

  // Singular point at infinity: after aligning its direction with the second
  // coordinate the curve is linear in that coordinate.
  Int a = num(S.x), b = num(S.y);
  Int g, r, s;
  mpz_gcdext(g.get_mpz_t(), r.get_mpz_t(), s.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  if (g != 1) throw std::domain_error("infinite singular direction is not primitive");
  UnimodularMap M{b, -a, r, s};  // det = b*s + a*r = 1
  BiPoly G = apply_unimodular(P, M);
  if (G.degree_y() == 0) {
    rep.cls = CurveClass::QbarReducible;
    rep.note = "parallel conjugate lines";
    return rep;
  }
  if (G.degree_y() != 1)
    throw std::domain_error("curve is not linear across its infinite singularity");
  std::vector<UniPoly> rows = y_rows(G);
  UniPoly D = rows[0], C = rows[1];
  CurveParam pr;
  // inverse map [[s, a], [-r, b]] applied to (t, -D/C)
  pr.R1 = UniPoly::monomial(Rat(s), 1) * C - D * Rat(a);
  pr.Q1 = C;
  pr.R2 = UniPoly::monomial(Rat(-r), 1) * C - D * Rat(b);
  pr.Q2 = C;
  verify_param(P, pr);
  rep.cls = CurveClass::GenusZero;
  rep.param = pr;
  rep.note = "parallel line pencil through the direction at infinity";
  return rep;
}

MobiusImage mobius_integer_points(const UniPoly& R1, const UniPoly& Q1,
                                  const UniPoly& R2, const UniPoly& Q2) {
  if (R1.degree() > 1 || Q1.degree() > 1)
    throw std::domain_error("x map is not a Mobius map");
  Rat r = cf(R1, 1), s = cf(R1, 0), u = cf(Q1, 1), v = cf(Q1, 0);
  if (r * v - s * u == 0) throw std::domain_error("x map is constant");
  // t = (v x - s) / (r - u x); substitute into y = R2/Q2 and clear powers.
  int d = std::max(std::max(R2.degree(), Q2.degree()), 0);
  UniPoly num_t({-s, v}), den_t({r, -u});
  std::vector<UniPoly> pn{UniPoly::constant(1)}, pd{UniPoly::constant(1)};
  for (int i = 0; i < d; ++i) {
    pn.push_back(pn.back() * num_t);
    pd.push_back(pd.back() * den_t);
  }
  UniPoly Rt2, Qt2;
  for (int i = 0; i <= d; ++i) {
    if (i <= R2.degree() && R2.coeff(i) != 0)
      Rt2 = Rt2 + pn[i] * pd[d - i] * R2.coeff(i);
    if (i <= Q2.degree() && Q2.coeff(i) != 0)
      Qt2 = Qt2 + pn[i] * pd[d - i] * Q2.coeff(i);
  }
  if (Qt2.is_zero()) throw std::domain_error("y map has a vanishing denominator");
  UniPoly g = UniPoly::gcd(Rt2, Qt2);
  if (g.degree() >= 1) {
    Rt2 = Rt2.divexact(g);
    Qt2 = Qt2.divexact(g);
  }
  MobiusImage out;
  out.Rt2 = Rt2;
  out.Qt2 = Qt2;
  if (Qt2.degree() == 0) {
    out.finite = false;
    if (Rt2.degree() <= 0) out.constant_y = cf(Rt2, 0) / Qt2.coeff(0);
    return out;
  }
  Int m(1);
  for (const Rat& c : Rt2.coeffs()) m = lcm_int(m, den(c));
  for (const Rat& c : Qt2.coeffs()) m = lcm_int(m, den(c));
  UniPoly Rh = Rt2 * Rat(m), Qh = Qt2 * Rat(m);
  Rat res = resultant(Rh, Qh);
  if (den(res) != 1) throw std::domain_error("resultant of integral maps is fractional");
  Int D = num(res);
  if (D == 0) throw std::domain_error("eliminated maps share a factor");
  out.divisor_bound = abs(D);
  std::set<std::pair<Int, Int>> pts;
  for (const Int& e : divisors_of(D)) {
    for (int sgn = 0; sgn < 2; ++sgn) {
      UniPoly target = Qh - UniPoly::constant(Rat(sgn ? Int(-e) : e));
      for (const Int& x : int_roots(target)) {
        Rat y = Rh.eval(Rat(x)) / Qh.eval(Rat(x));
        if (is_integer(y)) pts.insert({x, num(y)});
      }
    }
  }
  out.points.assign(pts.begin(), pts.end());
  return out;
}

namespace {

void push_point(std::set<std::pair<Int, Int>>& pts, const BiPoly& P, const Rat& x,
                const Rat& y) {
  if (!is_integer(x) || !is_integer(y)) return;
  if (P.eval(x, y) != 0) return;
  pts.insert({num(x), num(y)});
}

}  // namespace

ConicReport conic_integer_points(const BiPoly& P0) {
  if (P0.degree() != 2) throw std::domain_error("conic analysis needs total degree 2");
  Int m(1);
  for (const auto& [key, c] : P0.terms()) m = lcm_int(m, den(c));
  BiPoly P = P0 * Rat(m);
  Int A = num(P.coeff(2, 0)), B = num(P.coeff(1, 1)), C = num(P.coeff(0, 2));
  Int Dc = num(P.coeff(1, 0)), E = num(P.coeff(0, 1)), F = num(P.coeff(0, 0));
  ConicReport rep;
  std::set<std::pair<Int, Int>> pts;

  if (A == 0 && C == 0) {
    // B*x*y + D*x + E*y + F: (B*x + E)(B*y + D) = E*D - B*F
    Int c0 = E * Dc - B * F;
    rep.kind = "hyperbola";
    rep.note = "rectangular: divisor pinning";
    if (c0 == 0) throw std::domain_error("degenerate conic");
    for (const Int& e : divisors_of(c0))
      for (int sg = 0; sg < 2; ++sg) {
        Int e1 = sg ? Int(-e) : e, e2 = c0 / e1;
        push_point(pts, P, qdiv(e1 - E, B), qdiv(e2 - Dc, B));
      }
    rep.points.assign(pts.begin(), pts.end());
    rep.any_points = !rep.points.empty();
    return rep;
  }
  if (A == 0) {
    ConicReport sw = conic_integer_points(P0.swap_xy());
    rep = sw;
    rep.points.clear();
    for (const auto& [x, y] : sw.points) rep.points.push_back({y, x});
    std::sort(rep.points.begin(), rep.points.end());
    return rep;
  }

  Int Delta = B * B - 4 * A * C;
  if (Delta < 0) {
    rep.kind = "ellipse";
    // x is solvable only where the discriminant in x is non-negative
    UniPoly disc({Dc * Dc - 4 * A * F, 2 * B * Dc - 4 * A * E, Delta});
    Int ybound = floor_rat(cauchy_bound(disc)) + 1;
    for (Int y = -ybound; y <= ybound; ++y) {
      Rat dv = disc.eval(Rat(y));
      if (dv < 0) continue;
      Int root = iroot_floor(num(dv), 2);
      if (root * root != num(dv)) continue;
      for (int sg = 0; sg < 2; ++sg) {
        Int vtop = -(B * y + Dc) + (sg ? Int(-root) : root);
        Rat x = qdiv(vtop, 2 * A);
        push_point(pts, P, x, Rat(y));
      }
    }
    rep.points.assign(pts.begin(), pts.end());
    rep.any_points = !rep.points.empty();
    return rep;
  }

  Int G = 4 * A * E - 2 * B * Dc, c1 = 4 * A * F - Dc * Dc;
  if (Delta == 0) {
    rep.kind = "parabola";
    if (G == 0) throw std::domain_error("degenerate conic");
    // 4A*P = V^2 + G*y + c1 with V = 2A*x + B*y + D
    Int M = abs(2 * A * G);
    bool any = false;
    for (Int v0 = 0; v0 < M; ++v0) {
      Rat y = qdiv(Int(-(v0 * v0 + c1)), G);
      if (!is_integer(y)) continue;
      Rat x = (Rat(v0) - Rat(B) * y - Rat(Dc)) / Rat(2 * A);
      if (!is_integer(x)) continue;
      any = true;
      for (Int k = -3; k <= 3; ++k) {
        Int v = v0 + k * M;
        Rat yy = qdiv(Int(-(v * v + c1)), G);
        Rat xx = (Rat(v) - Rat(B) * yy - Rat(Dc)) / Rat(2 * A);
        push_point(pts, P, xx, yy);
      }
    }
    rep.points.assign(pts.begin(), pts.end());
    rep.any_points = any;
    rep.infinite = any;
    rep.x_unbounded = any;
    rep.note = "residue classes repeat with period " + M.get_str();
    return rep;
  }

  Int sq = iroot_floor(Delta, 2);
  if (sq * sq == Delta) {
    rep.kind = "hyperbola";
    rep.note = "square discriminant: divisor pinning";
    // (2s(V - s y) + G)(2s(V + s y) - G) = -4s^2 c1 - G^2, V = 2A*x + B*y + D
    Int c2 = -4 * sq * sq * c1 - G * G;
    if (c2 == 0) throw std::domain_error("degenerate conic");
    for (const Int& e : divisors_of(c2))
      for (int sg = 0; sg < 2; ++sg) {
        Int e1 = sg ? Int(-e) : e, e2 = c2 / e1;
        // alpha = V - s y, beta = V + s y
        Rat alpha = qdiv(e1 - G, 2 * sq), beta = qdiv(e2 + G, 2 * sq);
        Rat y = (beta - alpha) / Rat(Int(2 * sq));
        Rat V = (alpha + beta) / 2;
        Rat x = (V - Rat(B) * y - Rat(Dc)) / Rat(2 * A);
        push_point(pts, P, x, y);
      }
    rep.points.assign(pts.begin(), pts.end());
    rep.any_points = !rep.points.empty();
    return rep;
  }

  // Pell reduction: X^2 - Delta * Y^2 = c0 with X = 2*Delta*y - G, Y = 2*V.
  rep.kind = "hyperbola";
  rep.note = "Pell orbit";
  Int c0 = G * G + 4 * Delta * c1;
  auto [t, u] = pell_plus_one(Delta);
  auto decode = [&](const Int& X, const Int& Y) {
    Rat y = qdiv(X + G, 2 * Delta);
    Rat V = qdiv(Y, Int(2));
    Rat x = (V - Rat(B) * y - Rat(Dc)) / Rat(2 * A);
    push_point(pts, P, x, y);
  };
  if (c0 == 0) {
    decode(0, 0);
  } else {
    Int ymax = iroot_floor((u * u * abs(c0)) / (2 * (t - 1)), 2) + 2;
    std::vector<std::pair<Int, Int>> seeds;
    for (Int Y = 0; Y <= ymax; ++Y) {
      Int X2 = c0 + Delta * Y * Y;
      if (X2 < 0) continue;
      Int X = iroot_floor(X2, 2);
      if (X * X != X2) continue;
      seeds.push_back({X, Y});
      if (X != 0) seeds.push_back({-X, Y});
      if (Y != 0) {
        seeds.push_back({X, -Y});
        if (X != 0) seeds.push_back({-X, -Y});
      }
    }
    for (const auto& [X0, Y0] : seeds) {
      Int X = X0, Y = Y0;
      for (int k = 0; k <= 8; ++k) {
        decode(X, Y);
        Int Xn = t * X + u * Delta * Y, Yn = u * X + t * Y;
        X = Xn;
        Y = Yn;
      }
      X = X0;
      Y = Y0;
      for (int k = 0; k < 8; ++k) {
        Int Xn = t * X - u * Delta * Y, Yn = -u * X + t * Y;
        X = Xn;
        Y = Yn;
        decode(X, Y);
      }
    }
  }
  for (const auto& p : pts) {
    rep.points.push_back(p);
    if (rep.points.size() >= 64) break;
  }
  rep.any_points = !pts.empty();
  // an automorph power fixes every residue constraint, so one solution recurs
  rep.infinite = rep.any_points && c0 != 0;
  rep.x_unbounded = rep.infinite;
  return rep;
}

}  // namespace qvs
