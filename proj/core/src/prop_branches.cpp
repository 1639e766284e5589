// Fiber analysis at balanced zero directions of the quartic part: linear
// factors (transversal quadratic fibers), a fourth power of a line, and the
// square of an irreducible quadratic (conic orbits).
#include <algorithm>
#include <utility>

#include "classifier_internal.hpp"
#include "qvs/dioph.hpp"
#include "qvs/uniroots.hpp"

namespace qvs {
namespace detail {
namespace {

Int round_rat(const Rat& x) { return floor_rat(x + Rat(1, 2)); }

/// Smallest power-of-two U with p < U on all of R, certified by a root-free
/// Sturm count for U - p.  Requires p bounded above.
Rat sup_bound(const UniPoly& p) {
  if (p.is_zero()) return Rat(1);
  if (p.degree() == 0) return p.coeff(0) + 1;
  Rat U(1);
  for (int i = 0; i < 512; ++i) {
    UniPoly diff = UniPoly::constant(U) - p;
    if (diff.lead() > 0 && count_real_roots(diff) == 0) return U;
    U *= 2;
  }
  throw InternalInconsistency("no certified upper bound for a bounded polynomial");
}

}  // namespace

Aligned align_to(const BiPoly& N, const BinaryForm& line) {
  UnimodularMap A = unimodular_from_linear(num(line.coeff(0)), num(line.coeff(1)));
  BiPoly G = apply_unimodular(N, A);
  auto rows = G.by_powers_of_y();
  while (!rows.empty() && rows.back().is_zero()) rows.pop_back();
  return {A, std::move(G), std::move(rows)};
}

std::vector<Candidate> vertical_fiber(const Aligned& al, const Int& u0, int side,
                                      const std::string& tag) {
  std::vector<Candidate> cands;
  Int v = 1;
  for (int k = 0; k < 64; ++k) {
    auto p = al.A.apply_inverse(u0, side * v);
    cands.push_back({p.first, p.second,
                     tag + "=" + u0.get_str() + ", v=" + (side < 0 ? "-" : "") +
                         "2^" + std::to_string(k)});
    v *= 2;
  }
  return cands;
}

/// Lattice points hugging the conic H = const in the residue class needed to
/// pin the completed square: x = (X - m1)/d, y = (Y - m2)/d with (X, Y) on
/// an automorph orbit.  Seeds near all four asymptotic rays.
std::vector<Candidate> conic_streams(const BinaryForm& H, const Rat& q1,
                                     const Rat& q2, size_t per) {
  Int d = lcm_int(den(q1), den(q2));
  Int m1 = num(q1 * Rat(d)), m2 = num(q2 * Rat(d));
  UnimodularMap M = form_automorph(H);
  std::vector<std::pair<Int, Int>> seeds = {{m1, m2}};
  for (const auto& xi : real_zero_directions(H)) {
    auto ps = direction_pairs(xi, 14);
    const auto& w = ps.back();
    seeds.push_back({Int(m1 + d * w.u), Int(m2 + d * w.v)});
    seeds.push_back({Int(m1 - d * w.u), Int(m2 - d * w.v)});
  }
  std::vector<Candidate> cands;
  int si = 0;
  for (const auto& s : seeds) {
    for (bool back : {false, true}) {
      auto orbit = automorph_orbit_in_class(M, s, d, m1, m2, per, back);
      for (size_t j = 0; j < orbit.size(); ++j) {
        Int x = Int(orbit[j].first - m1) / d;
        Int y = Int(orbit[j].second - m2) / d;
        cands.push_back({x, y,
                         "conic orbit, seed " + std::to_string(si) +
                             (back ? ", backward" : ", forward") + ", step " +
                             std::to_string(j)});
      }
    }
    ++si;
  }
  return cands;
}

BalancedLinearOutcome branch_balanced_linear(Ctx& c, const BinaryForm& H) {
  BalancedLinearOutcome out;
  step(c.rep, "balanced-linear-fiber", {{"factor", H.to_string()}});
  Aligned al = align_to(c.N, H);
  if (al.rows.size() != 3)
    throw InternalInconsistency("balanced linear factor: transversal degree != 2");
  const UniPoly& g0 = al.rows[0];
  const UniPoly& g1 = al.rows[1];
  const UniPoly& g2 = al.rows[2];
  if (g2.degree() != 2 || g2.lead() <= 0)
    throw InternalInconsistency("balanced linear factor: bad leading fiber row");
  const Rat gamma = g2.lead();
  Int hA = num(H.coeff(0)), hB = num(H.coeff(1));

  // Fibers u = w where the quadratic coefficient is not positive.  Outside
  // this window g2(w) >= 1 on integers.
  Int W = floor_rat(cauchy_bound(g2)) + 1;
  for (Int w = -W; w <= W; ++w) {
    Rat v2 = g2.eval(Rat(w));
    if (v2 > 0) continue;
    if (v2 < 0) {
      c.rep.verdict = Verdict::UnboundedBelow;
      c.rep.leaf = "fiber-negative-parabola";
      step(c.rep, c.rep.leaf,
           {{"fiber", H.to_string() + "=" + w.get_str()},
            {"quadratic_coefficient", rat_to_string(v2)}});
      int side = g1.eval(Rat(w)) > 0 ? -1 : 1;
      c.rep.descent = require_descent(
          c.N, vertical_fiber(al, w, side, H.to_string()), c.opt.witness_target,
          "fiber with negative quadratic coefficient: a downward parabola");
      out.done = true;
      return out;
    }
    Rat v1 = g1.eval(Rat(w));
    if (v1 != 0) {
      c.rep.verdict = Verdict::UnboundedBelow;
      c.rep.leaf = "fiber-linear-residue";
      step(c.rep, c.rep.leaf,
           {{"fiber", H.to_string() + "=" + w.get_str()},
            {"slope", rat_to_string(v1)}});
      int side = v1 > 0 ? -1 : 1;
      c.rep.descent = require_descent(
          c.N, vertical_fiber(al, w, side, H.to_string()), c.opt.witness_target,
          "fiber with vanishing quadratic coefficient and nonzero slope");
      out.done = true;
      return out;
    }
    Rat v0 = g0.eval(Rat(w));
    if (!is_integer(v0)) throw InternalInconsistency("non-integral line value");
    out.lines.push_back({hA, hB, w, num(v0)});
  }

  // Complete the square in the fiber variable: for u in the class a (mod m)
  // and v = theta' - q(u), the value is E + theta'*h + theta'^2*g2 at u.
  auto qr = g1.divrem(g2 * Rat(2));
  const UniPoly& qq = qr.first;
  const UniPoly& hh = qr.second;
  UniPoly E = g0 - qq * g1 + qq * qq * g2;
  int edeg = E.is_zero() ? -1 : E.degree();

  Rat alpha = qq.degree() >= 1 ? qq.coeff(1) : Rat(0);
  Int m = den(alpha);
  Int J = 0;
  if (edeg < 3) {
    Rat e2 = edeg >= 2 ? E.coeff(2) : Rat(0);
    J = 2;
    if (e2 < 0) J = 3 + iroot_floor(ceil_rat(-e2 / gamma), 2);
  } else if (edeg == 4 && E.lead() > 0) {
    m = 0;  // every shifted fiber polynomial has positive quartic lead
  }
  for (Int aa = 0; aa < m; ++aa) {
    Rat qa = qq.eval(Rat(aa));
    Rat theta0 = qa - Rat(round_rat(qa));
    for (Int j = -J; j <= J; ++j) {
      Rat th = theta0 + Rat(j);
      UniPoly Gaj = E + hh * th + g2 * (th * th);
      int gd = Gaj.is_zero() ? -1 : Gaj.degree();
      if (gd < 1 || (gd % 2 == 0 && Gaj.lead() > 0)) continue;
      if (gd % 2 == 0 && Gaj.lead() == 0)
        throw InternalInconsistency("unnormalized fiber polynomial");
      c.rep.verdict = Verdict::UnboundedBelow;
      c.rep.leaf = "fiber-shift-descent";
      step(c.rep, c.rep.leaf,
           {{"class", aa.get_str() + " mod " + m.get_str()},
            {"offset", rat_to_string(th)},
            {"along", Gaj.to_string("u")}});
      int side = gd % 2 == 1 ? -sign(Gaj.lead()) : 1;
      std::vector<Candidate> cands;
      Int stepu = 1;
      for (int k = 0; k < 64; ++k) {
        Int u = aa + m * side * stepu;
        Rat vv = th - qq.eval(Rat(u));
        if (!is_integer(vv)) throw InternalInconsistency("fiber shift not integral");
        auto p = al.A.apply_inverse(u, num(vv));
        cands.push_back({p.first, p.second,
                         "u=" + aa.get_str() + (side < 0 ? "-" : "+") + m.get_str() +
                             "*2^" + std::to_string(k) + ", v at offset " +
                             rat_to_string(th)});
        stepu *= 2;
      }
      c.rep.descent = require_descent(
          c.N, cands, c.opt.witness_target,
          "arithmetic progression of fibers, vertex offset " + rat_to_string(th));
      out.done = true;
      return out;
    }
  }

  // All fibers bounded below; certify a bound when one has a closed form.
  UniPoly P = g1 * g1 - g2 * g0 * Rat(4);
  if (edeg == 4 && E.lead() > 0) {
    UniPoly drop = (hh * hh) * Rat(1, 4) - E;  // G >= E - h^2/4 pointwise
    out.bound = sup_bound(drop);
    out.clauses.push_back("direction of " + H.to_string() +
                          ": shifted fibers grow quartically; values >= -" +
                          rat_to_string(*out.bound));
  } else if (P.is_zero() || P.degree() == 0 ||
             (P.degree() % 2 == 0 && P.lead() < 0)) {
    Rat U = sup_bound(P);
    if (U < 0) U = 0;
    out.bound = U / 4;
    out.clauses.push_back(
        "direction of " + H.to_string() + ": fiber discriminant bounded above by " +
        rat_to_string(U) + ", so values >= -" + rat_to_string(*out.bound) +
        " on these fibers");
  } else {
    out.clauses.push_back("direction of " + H.to_string() +
                          ": every shifted fiber class certified bounded below "
                          "(positive quadratic growth past the vertex offsets)");
  }
  if (out.bound) {
    for (const auto& l : out.lines) {
      Rat neg((Int(-l.value)));
      if (neg > *out.bound) out.bound = neg;
    }
  }
  return out;
}

void branch_quartic_linear_power(Ctx& c, const BinaryForm& L) {
  step(c.rep, "quartic-power-fiber", {{"line", L.to_string()}});
  Aligned al = align_to(c.N, L);
  if (al.rows.size() > 3)
    throw InternalInconsistency("quartic line power: transversal degree > 2");
  UniPoly g0 = al.rows.size() > 0 ? al.rows[0] : UniPoly();
  UniPoly g1 = al.rows.size() > 1 ? al.rows[1] : UniPoly();
  UniPoly g2 = al.rows.size() > 2 ? al.rows[2] : UniPoly();
  if (!g2.is_zero() && g2.degree() != 0)
    throw InternalInconsistency("quartic line power: nonconstant square term");
  Rat b = g2.is_zero() ? Rat(0) : g2.coeff(0);

  if (b < 0) {
    c.rep.verdict = Verdict::UnboundedBelow;
    c.rep.leaf = "fiber-vertical-parabola";
    step(c.rep, c.rep.leaf, {{"square_coefficient", rat_to_string(b)}});
    int side = g1.eval(Rat(0)) > 0 ? -1 : 1;
    c.rep.descent = require_descent(
        c.N, vertical_fiber(al, 0, side, L.to_string()), c.opt.witness_target,
        "transversal parabola with negative leading coefficient");
    return;
  }
  if (b == 0) {
    Int u0 = 0;
    while (g1.eval(Rat(u0)) == 0) {
      u0 = u0 >= 0 ? Int(-(u0 + 1)) : Int(-u0);
      if (u0 > g1.degree() + 1)
        throw InternalInconsistency("vanishing transversal slope everywhere");
    }
    c.rep.verdict = Verdict::UnboundedBelow;
    c.rep.leaf = "fiber-vertical-linear";
    step(c.rep, c.rep.leaf,
         {{"fiber", L.to_string() + "=" + u0.get_str()},
          {"slope", rat_to_string(g1.eval(Rat(u0)))}});
    int side = g1.eval(Rat(u0)) > 0 ? -1 : 1;
    c.rep.descent = require_descent(
        c.N, vertical_fiber(al, u0, side, L.to_string()), c.opt.witness_target,
        "exactly linear fiber in the transversal variable");
    return;
  }

  UniPoly P = g1 * g1 - g0 * (4 * b);
  int pd = P.is_zero() ? -1 : P.degree();
  if (pd <= 0) {
    // 4b N = (2b v + g1(u))^2 - p0 exactly.
    Rat p0 = P.is_zero() ? Rat(0) : P.coeff(0);
    BiPoly Wb = BiPoly::monomial(2 * b, 0, 1);
    for (int k = 0; k <= g1.degree(); ++k)
      Wb = Wb + BiPoly::monomial(g1.coeff(k), k, 0);
    BiPoly inner = apply_unimodular(Wb, al.A.inverse());
    set_composition(c, {-p0 / (4 * b), Rat(0), Rat(1) / (4 * b)}, inner,
                    "fiber-square-composition");
    return;
  }
  if (pd % 2 == 1 || P.lead() > 0) {
    c.rep.verdict = Verdict::UnboundedBelow;
    c.rep.leaf = "fiber-discriminant-descent";
    step(c.rep, c.rep.leaf, {{"discriminant", P.to_string("u")}});
    int side = pd % 2 == 1 ? sign(P.lead()) : 1;
    std::vector<Candidate> cands;
    Int u = 1;
    for (int k = 0; k < 64; ++k) {
      Int uu = side * u;
      Int v = round_rat(-g1.eval(Rat(uu)) / (2 * b));
      auto p = al.A.apply_inverse(uu, v);
      cands.push_back({p.first, p.second,
                       "u=" + (side < 0 ? std::string("-") : std::string("")) +
                           "2^" + std::to_string(k) + ", v rounded to the vertex"});
      u *= 2;
    }
    c.rep.descent = require_descent(
        c.N, cands, c.opt.witness_target,
        "growing discriminant beats the rounding defect: 4b*N <= b^2 - P(u)");
    return;
  }
  if (pd == 2) {
    // P = e u^2 + f u + g with e < 0:
    // 16 b |e| N = 4|e| (2b v + g1(u))^2 + (2e u + f)^2 - (f^2 - 4 e g).
    Rat e = P.coeff(2), f = P.coeff(1), g = P.coeff(0);
    c.rep.verdict = Verdict::SparseValues;
    c.rep.leaf = "fiber-two-square-identity";
    step(c.rep, c.rep.leaf, {{"discriminant", P.to_string("u")}});
    auto sp = make_sparse(c, DensityClass::LandauLogHalf, Rat(1, 4), 1, {});
    Rat k0 = f * f - 4 * e * g;
    Rat denom = 16 * b * (-e);
    Rat lb = k0 / denom;
    sp.lower_bound = lb > 0 ? lb : Rat(0);
    sp.clauses.push_back(
        "exact identity: " + rat_to_string(denom) + "*N + " + rat_to_string(-k0) +
        " = " + rat_to_string(4 * (-e)) + "*(" + rat_to_string(2 * b) + "*v + g1(u))^2" +
        " + (" + rat_to_string(2 * e) + "*u + " + rat_to_string(f) + ")^2" +
        " in the coordinates aligned to " + L.to_string() +
        "; values land in a positive definite norm form");
    c.rep.sparse = std::move(sp);
    return;
  }
  // pd == 4 with negative lead: defect grows quartically but only along the
  // single direction; sectors shrink like T^(-1/4).
  c.rep.verdict = Verdict::SparseValues;
  c.rep.leaf = "fiber-quartic-defect-sparse";
  step(c.rep, c.rep.leaf, {{"discriminant", P.to_string("u")}});
  auto sp = make_sparse(c, DensityClass::PowerOneMinusLambda, Rat(1, 8), 2,
                        real_zero_directions(c.F4));
  Rat U = sup_bound(P);
  if (U < 0) U = 0;
  Rat lb = U / (4 * b);
  sp.lower_bound = lb;
  sp.clauses.push_back("fiber discriminant bounded above by " + rat_to_string(U) +
                       ": N >= -" + rat_to_string(*sp.lower_bound) + " everywhere");
  c.rep.sparse = std::move(sp);
}

void branch_double_quadratic(Ctx& c, const BinaryForm& H) {
  step(c.rep, "quadratic-pair-fiber", {{"factor", H.to_string()}});
  Rat a4 = divide_form(c.F4, H * H).coeff(0);
  BinaryForm L = divide_form(c.F3, H);
  BinaryForm ell = L * (Rat(1) / (2 * a4));
  Rat hA = H.coeff(0), hB = H.coeff(1), hC = H.coeff(2);
  Rat d0 = 4 * hA * hC - hB * hB;  // = -disc(H), nonzero
  Rat l1 = ell.coeff(0), l2 = ell.coeff(1);
  Rat q1 = (2 * hC * l1 - hB * l2) / d0;
  Rat q2 = (2 * hA * l2 - hB * l1) / d0;
  Rat q3 = -(hA * q1 * q1 + hB * q1 * q2 + hC * q2 * q2);
  c.rep.completion = SquareCompletion{q1, q2, q3, H};

  // N = a4 P^2 + Q2 + F1 with P = H + ell = H(x+q1, y+q2) + q3.
  BinaryForm a_ell2 = (ell * ell) * a4;
  std::vector<Rat> qc(3);
  for (int k = 0; k <= 2; ++k)
    qc[k] = c.F2.coeff(k) - (a_ell2.degree() == 2 ? a_ell2.coeff(k) : Rat(0));
  BinaryForm Q2(2, qc);

  auto orbit_descent = [&](const char* leaf, const char* family) {
    c.rep.verdict = Verdict::UnboundedBelow;
    c.rep.leaf = leaf;
    c.rep.descent = require_descent(c.N, conic_streams(H, q1, q2, 40),
                                    c.opt.witness_target, family);
  };

  if (!Q2.is_zero() && !divides_form(H, Q2)) {
    auto dirs = real_zero_directions(H);
    int s0 = sign_at_direction(Q2, dirs[0]);
    int s1 = sign_at_direction(Q2, dirs[1]);
    if (s0 == 0 || s1 == 0)
      throw InternalInconsistency("residual vanishes at a conjugate direction");
    if (s0 < 0 || s1 < 0) {
      step(c.rep, "pair-negative-residual-orbit",
           {{"residual", Q2.to_string()},
            {"signs", std::to_string(s0) + "," + std::to_string(s1)}});
      orbit_descent("pair-negative-residual-orbit",
                    "conic orbit pinning the completed square; the residual "
                    "quadratic is negative along a conjugate direction");
      return;
    }
    c.rep.verdict = Verdict::SparseValues;
    c.rep.leaf = "pair-positive-residual-sparse";
    step(c.rep, c.rep.leaf, {{"residual", Q2.to_string()}});
    auto sp = make_sparse(c, DensityClass::PowerOneMinusLambda, Rat(1, 4), 1, dirs);
    sp.clauses.push_back(
        "residual quadratic " + Q2.to_string() +
        " is positive at both conjugate zero directions of " + H.to_string() +
        "; values near those directions stay above a growing parabola");
    c.rep.sparse = std::move(sp);
    return;
  }

  Rat q0 = Q2.is_zero() ? Rat(0) : divide_form(Q2, H).coeff(0);
  // N = a4 P^2 + q0 P + Mstar with Mstar = F1 - q0 ell.
  BinaryForm q0ell = ell * q0;
  std::vector<Rat> mc(2);
  for (int k = 0; k <= 1; ++k)
    mc[k] = c.F1.coeff(k) - (q0ell.degree() == 1 ? q0ell.coeff(k) : Rat(0));
  BinaryForm Mstar(1, mc);
  if (Mstar.is_zero()) {
    Int dd = lcm_int(den(l1), den(l2));
    BiPoly inner = (H.to_bipoly() + ell.to_bipoly()) * Rat(dd);
    set_composition(c, {Rat(0), q0 / Rat(dd), a4 / Rat(Int(dd * dd))}, inner,
                    "pair-square-composition");
    return;
  }
  step(c.rep, "pair-linear-residual-orbit", {{"residual", Mstar.to_string()}});
  orbit_descent("pair-linear-residual-orbit",
                "conic orbit pinning the completed square; the leftover linear "
                "part is unbounded below along a pinned-value ray");
}

}  // namespace detail
}  // namespace qvs
