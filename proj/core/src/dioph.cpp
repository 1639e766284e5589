#include "qvs/dioph.hpp"

namespace qvs {

std::vector<ApproxPair> direction_pairs(const Direction& xi, size_t count) {
  if (xi.rational)
    throw std::domain_error("direction_pairs: rational direction");
  ContinuedFraction cf = cf_expand(*xi.qslope);
  QuadExt alpha = xi.qslope->value();
  std::vector<ApproxPair> out;
  for (const auto& [p, q] : convergents(cf, count + 1)) {
    if (q < 1) continue;
    // Exact check |alpha q - p| < 1/q; drops at most the zeroth convergent.
    QuadExt err = alpha * Rat(q) - Rat(p);
    if (err.sgn() < 0) err = -err;
    if (err.cmp(Rat(1) / Rat(q)) >= 0) continue;
    out.push_back({q, p});
    if (out.size() == count) break;
  }
  return out;
}

std::pair<Int, Int> pell_plus_one(const Int& N) {
  if (N <= 1 || is_square(N)) throw std::invalid_argument("pell_plus_one: bad N");
  ContinuedFraction cf = cf_expand(QuadIrr::make(0, 1, 1, N));
  // Fundamental solution appears among the first few period multiples.
  size_t horizon = 4 * (cf.head.size() + cf.period.size()) + 8;
  for (const auto& [p, q] : convergents(cf, horizon)) {
    if (q >= 1 && p * p - N * q * q == 1) return {p, q};
  }
  throw std::runtime_error("pell_plus_one: fundamental solution not found");
}

UnimodularMap form_automorph(const BinaryForm& H) {
  if (H.degree() != 2 || !H.is_integral())
    throw std::invalid_argument("form_automorph: need an integral quadratic form");
  Int A = num(H.coeff(0)), B = num(H.coeff(1)), C = num(H.coeff(2));
  Int disc = B * B - 4 * A * C;
  if (disc <= 0 || is_square(disc))
    throw std::invalid_argument("form_automorph: discriminant must be positive non-square");
  auto [p, q] = pell_plus_one(disc);
  // (t, u) = (2p, 2q) solves t^2 - disc u^2 = 4; the standard automorph is
  // [[(t - B u)/2, -C u], [A u, (t + B u)/2]].
  UnimodularMap M{p - B * q, -2 * C * q, 2 * A * q, p + B * q};
  if (M.det() != 1) throw std::logic_error("form_automorph: det != 1");
  return M;
}

std::vector<std::pair<Int, Int>> automorph_orbit_in_class(
    const UnimodularMap& M, std::pair<Int, Int> z0, const Int& d, const Int& m1,
    const Int& m2, size_t count, bool backwards) {
  UnimodularMap S = backwards ? M.inverse() : M;
  auto step = [&](std::pair<Int, Int>& z) { z = S.apply(z.first, z.second); };
  auto in_class = [&](const std::pair<Int, Int>& z) {
    return (z.first - m1) % d == 0 && (z.second - m2) % d == 0;
  };

  // The orbit mod d is eventually periodic with period at most d^2 states;
  // search one full sweep for the class, then ride the period.
  size_t limit = 4000000;
  if (auto dd = to_long(d * d); dd && *dd < 1000000)
    limit = 4 * static_cast<size_t>(*dd) + 8;
  std::pair<Int, Int> z = z0;
  size_t t0 = 0;
  bool found = false;
  for (size_t t = 0; t <= limit; ++t) {
    if (in_class(z)) {
      t0 = t;
      found = true;
      break;
    }
    step(z);
  }
  if (!found) return {};

  // Period of the mod-d state starting from z_{t0}.
  std::pair<Int, Int> zmod{((z.first % d) + d) % d, ((z.second % d) + d) % d};
  std::pair<Int, Int> w = z;
  size_t period = 0;
  for (size_t t = 1; t <= limit; ++t) {
    step(w);
    if ((((w.first % d) + d) % d) == zmod.first &&
        (((w.second % d) + d) % d) == zmod.second) {
      period = t;
      break;
    }
  }
  if (period == 0) return {};

  std::vector<std::pair<Int, Int>> out;
  out.reserve(count);
  for (size_t i = 0; i < count; ++i) {
    out.push_back(z);
    for (size_t s = 0; s < period; ++s) step(z);
  }
  return out;
}

}  // namespace qvs
