// Degree <= 2 classification and quadratic square completion.
#include <utility>

#include "classifier_internal.hpp"

namespace qvs {

using detail::Candidate;
using detail::step;

std::optional<SquareCompletion> complete_square_quadratic(const BiPoly& Q) {
  BinaryForm Q2 = detail::hom_part(Q, 2);
  if (Q2.is_zero()) return std::nullopt;
  Rat a = Q2.coeff(0), b = Q2.coeff(1), c = Q2.coeff(2);
  Rat disc = b * b - 4 * a * c;
  if (disc == 0) return std::nullopt;
  Rat d = Q.coeff(1, 0), e = Q.coeff(0, 1);
  SquareCompletion comp;
  comp.q2form = Q2;
  comp.q1 = -(2 * c * d - b * e) / disc;
  comp.q2 = -(-b * d + 2 * a * e) / disc;
  // Q(x, y) = Q2(x + q1, y + q2) + q3; evaluate at (-q1, -q2).
  comp.q3 = Q.eval(-comp.q1, -comp.q2);
  return comp;
}

namespace {

// Descent along t -> t*z0 for a quadratic with Q2(z0) < 0, or generic fall
// back through both signs.
std::vector<Candidate> ray_candidates(const std::pair<Int, Int>& z0, int count) {
  std::vector<Candidate> cands;
  Int t = 1;
  for (int k = 0; k < count; ++k) {
    cands.push_back({t * z0.first, t * z0.second,
                     "t*(" + z0.first.get_str() + "," + z0.second.get_str() +
                         "), t=2^" + std::to_string(k)});
    t *= 2;
  }
  return cands;
}

}  // namespace

Report classify_quadratic(const BiPoly& F, const AnalyzeOptions& opt) {
  Report rep;
  rep.input = F;
  auto [N, norm] = normalize(F);
  rep.normalized = N;
  rep.norm = norm;
  int deg = N.degree();
  step(rep, "normalize",
       {{"scale", norm.scale.get_str()}, {"shift", rat_to_string(norm.shift)}});
  if (deg <= 0 || deg > 2) throw UnsupportedDegree(deg);
  detail::Ctx c{N, detail::hom_part(N, 4), detail::hom_part(N, 3),
                detail::hom_part(N, 2), detail::hom_part(N, 1), opt, rep};

  if (deg == 1) {
    step(rep, "degree-gate", {{"degree", "1"}});
    BinaryForm L = c.F1;
    std::pair<Int, Int> e = {1, 0};
    if (L.eval(1, 0) == 0) e = {0, 1};
    int s = sign(L.eval(Rat(e.first), Rat(e.second)));
    std::pair<Int, Int> z0 = {-s * e.first, -s * e.second};
    rep.verdict = Verdict::UnboundedBelow;
    rep.leaf = "odd-degree-ray";
    step(rep, rep.leaf, {{"direction", "(" + z0.first.get_str() + "," + z0.second.get_str() + ")"}});
    rep.descent = detail::require_descent(N, ray_candidates(z0, 64), opt.witness_target,
                                          "t -> N(t*z0), linear with negative slope");
    detail::finish_statement(rep);
    return rep;
  }

  step(rep, "degree-gate", {{"degree", "2"}});
  BinaryForm Q2 = c.F2;
  DefinitenessReport def = definiteness(Q2);
  switch (def.kind) {
    case Definiteness::Indefinite:
    case Definiteness::NegativeDefinite:
    case Definiteness::NegativeSemidefinite: {
      step(rep, "quadratic-form-sign", {{"sign", "negative somewhere"}});
      rep.verdict = Verdict::UnboundedBelow;
      rep.leaf = "quadratic-negative-ray";
      auto z0 = *def.negative_point;
      step(rep, rep.leaf,
           {{"point", "(" + z0.first.get_str() + "," + z0.second.get_str() + ")"},
            {"Q2", rat_to_string(Q2.eval(Rat(z0.first), Rat(z0.second)))}});
      rep.completion = complete_square_quadratic(N);
      rep.descent = detail::require_descent(
          N, ray_candidates(z0, 64), opt.witness_target,
          "t -> N(t*z0): leading term t^2*Q2(z0) with Q2(z0) < 0");
      break;
    }
    case Definiteness::PositiveSemidefinite: {
      step(rep, "quadratic-form-sign", {{"sign", "semidefinite"}});
      // Q2 = a*L^2; align L with the first coordinate.
      auto [P0, Ftilde] = split_psd(Q2);
      FormFactorization fac = factor_form(Ftilde);
      const BinaryForm& L = fac.factors.front().f;
      UnimodularMap A = unimodular_from_linear(num(L.coeff(0)), num(L.coeff(1)));
      BiPoly G = apply_unimodular(N, A);
      Rat ecoef = G.coeff(0, 1);
      step(rep, "degenerate-direction",
           {{"line", L.to_string()}, {"transversal", rat_to_string(ecoef)}});
      if (ecoef != 0) {
        rep.verdict = Verdict::UnboundedBelow;
        rep.leaf = "degenerate-direction-linear";
        int s = sign(ecoef);
        step(rep, rep.leaf,
             {{"travel", s > 0 ? "v -> -infinity" : "v -> +infinity"}});
        std::vector<Candidate> cands;
        Int t = 1;
        for (int k = 0; k < 64; ++k) {
          auto z = A.apply_inverse(0, -s * t);
          cands.push_back({z.first, z.second, "line L=0, v=-sign*2^" + std::to_string(k)});
          t *= 2;
        }
        rep.descent = detail::require_descent(
            N, cands, opt.witness_target,
            "N restricted to the zero line of Q2 is linear and nonconstant");
      } else {
        // Values come from one univariate quadratic in the L-coordinate.
        std::vector<Rat> outer = {G.coeff(0, 0), G.coeff(1, 0), G.coeff(2, 0)};
        BiPoly inner = BiPoly::monomial(Rat(Int(A.a)), 1, 0) +
                       BiPoly::monomial(Rat(Int(A.b)), 0, 1);
        rep.leaf = "degenerate-direction-univariate";
        detail::set_composition(c, outer, inner, rep.leaf);
        rep.sparse = detail::make_sparse(c, DensityClass::Sqrt, Rat(1, 2), 1, {});
      }
      break;
    }
    case Definiteness::PositiveDefinite: {
      step(rep, "quadratic-form-sign", {{"sign", "positive definite"}});
      rep.verdict = Verdict::SparseValues;
      rep.leaf = "positive-quadratic-completion";
      rep.completion = complete_square_quadratic(N);
      step(rep, rep.leaf,
           {{"q1", rat_to_string(rep.completion->q1)},
            {"q2", rat_to_string(rep.completion->q2)},
            {"q3", rat_to_string(rep.completion->q3)}});
      rep.sparse = detail::make_sparse(c, DensityClass::LandauLogHalf, Rat(0), 1, {});
      rep.sparse->lower_bound = -rep.completion->q3;
      break;
    }
  }
  detail::finish_statement(rep);
  return rep;
}

}  // namespace qvs
