#include "qvs/unifactor.hpp"

#include <algorithm>

namespace qvs {

namespace {

std::vector<Int> divisors(const Int& n) {
  Int a = abs(n);
  std::vector<Int> out;
  for (Int d = 1; d * d <= a; ++d) {
    if (a % d != 0) continue;
    out.push_back(d);
    if (d * d != a) out.push_back(a / d);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ceil of the 2-norm, for factor coefficient bounds.
Int norm2_ceil(const UniPoly& p) {
  Rat s = 0;
  for (const auto& c : p.coeffs()) s += c * c;
  Int r = isqrt_floor(num(s) / den(s));
  while (r * r < num(s) / den(s) + 1) ++r;
  return r;
}

// Strip all rational roots of the squarefree primitive integral q.
void strip_rational_roots(UniPoly& q, std::vector<UniPoly>& out) {
  bool again = true;
  while (again && q.degree() >= 1) {
    again = false;
    for (const Int& b : divisors(num(q.lead()))) {
      for (const Int& a0 : divisors(num(q.coeff(0)))) {
        for (int s = -1; s <= 1; s += 2) {
          Rat r = Rat(s * a0) / Rat(b);
          if (q.eval(r) != 0) continue;
          UniPoly lin({Rat(-s * a0), Rat(b)});
          lin = lin.primitive_part();
          out.push_back(lin);
          q = q.divexact(lin).primitive_part();
          again = true;
          break;
        }
        if (again) break;
      }
      if (again) break;
    }
  }
}

// Quadratic divisor of a rootless squarefree primitive q (degree 4..6), if any.
std::optional<UniPoly> find_quadratic_factor(const UniPoly& q) {
  Int B = norm2_ceil(q) * pow_int(2, q.degree());
  for (const Int& a2 : divisors(num(q.lead()))) {
    for (const Int& a0d : divisors(num(q.coeff(0)))) {
      for (int s = -1; s <= 1; s += 2) {
        Int a0 = s * a0d;
        for (Int a1 = -B; a1 <= B; ++a1) {
          if (gcd_int(gcd_int(a2, a1), a0) != 1) continue;
          UniPoly cand({Rat(a0), Rat(a1), Rat(a2)});
          if (q.divisible_by(cand)) return cand;
        }
      }
    }
  }
  return std::nullopt;
}

// 3+3 split of a degree-6 q with no rational roots and no quadratic factor.
std::optional<UniPoly> find_cubic_split(const UniPoly& q) {
  Int B = norm2_ceil(q) * pow_int(2, q.degree());
  Int c6 = num(q.lead()), c0 = num(q.coeff(0));
  Rat c5 = q.coeff(5), c4 = q.coeff(4), c1 = q.coeff(1);
  for (const Int& b3 : divisors(c6)) {
    if (c6 % b3 != 0) continue;
    Int d3 = c6 / b3;
    for (const Int& b0a : divisors(c0)) {
      for (int s = -1; s <= 1; s += 2) {
        Int b0 = s * b0a;
        Int d0 = c0 / b0;
        for (Int b2 = -B; b2 <= B; ++b2) {
          // t^5:  b3 d2 + b2 d3 = c5
          Rat d2r = (c5 - Rat(b2 * d3)) / Rat(b3);
          if (!is_integer(d2r)) continue;
          Int d2 = num(d2r);
          // t^1:  d0 b1 + b0 d1 = c1
          // t^4:  d3 b1 + b3 d1 = c4 - b2 d2
          Rat rhs4 = c4 - Rat(b2 * d2);
          Int det = d0 * b3 - b0 * d3;
          if (det != 0) {
            Rat b1r = (c1 * Rat(b3) - rhs4 * Rat(b0)) / Rat(det);
            Rat d1r = (rhs4 * Rat(d0) - c1 * Rat(d3)) / Rat(det);
            if (!is_integer(b1r) || !is_integer(d1r)) continue;
            UniPoly cand({Rat(b0), b1r, Rat(b2), Rat(b3)});
            if (q.divisible_by(cand)) return cand;
          } else {
            for (Int b1 = -B; b1 <= B; ++b1) {
              Rat d1r = (rhs4 - Rat(d3 * b1)) / Rat(b3);
              if (!is_integer(d1r)) continue;
              if (Rat(d0 * b1) + Rat(b0) * d1r != c1) continue;
              UniPoly cand({Rat(b0), Rat(b1), Rat(b2), Rat(b3)});
              if (q.divisible_by(cand)) return cand;
            }
          }
        }
      }
    }
  }
  return std::nullopt;
}

// Irreducible factors of a squarefree primitive integral q, degree >= 1.
std::vector<UniPoly> factor_squarefree(UniPoly q) {
  std::vector<UniPoly> out;
  // t^k has been handled by the caller (constant term nonzero here except deg 1).
  strip_rational_roots(q, out);
  while (q.degree() >= 4) {
    auto quad = find_quadratic_factor(q);
    if (!quad) break;
    out.push_back(*quad);
    q = q.divexact(*quad).primitive_part();
  }
  if (q.degree() == 6) {
    auto cub = find_cubic_split(q);
    if (cub) {
      out.push_back(*cub);
      q = q.divexact(*cub).primitive_part();
    }
  }
  // Remaining q: irreducible (deg 2, 3 rootless; deg 4..6 with no small split).
  if (q.degree() >= 1) out.push_back(q);
  return out;
}

bool factor_order(const UniFactor& x, const UniFactor& y) {
  if (x.f.degree() != y.f.degree()) return x.f.degree() < y.f.degree();
  for (int k = 0; k <= x.f.degree(); ++k) {
    if (x.f.coeff(k) != y.f.coeff(k)) return x.f.coeff(k) < y.f.coeff(k);
  }
  return false;
}

}  // namespace

UniPoly UniFactorization::product() const {
  UniPoly p = UniPoly::constant(unit);
  for (const auto& fac : factors)
    for (int i = 0; i < fac.mult; ++i) p = p * fac.f;
  return p;
}

std::vector<UniFactor> squarefree_decomposition(const UniPoly& p) {
  std::vector<UniFactor> out;
  if (p.is_zero() || p.degree() == 0) return out;
  // Yun's algorithm over Q.
  UniPoly f = p;
  UniPoly g = UniPoly::gcd(f, f.derivative());
  UniPoly w = f.divexact(g);
  int i = 1;
  while (w.degree() >= 1) {
    UniPoly y = UniPoly::gcd(w, g);
    UniPoly z = w.divexact(y);
    if (z.degree() >= 1) out.push_back({z.primitive_part(), i});
    w = y;
    if (!g.is_zero() && g.degree() >= 1) g = g.divexact(y);
    ++i;
  }
  return out;
}

UniFactorization uni_factor(const UniPoly& p) {
  if (p.is_zero()) throw std::domain_error("uni_factor: zero polynomial");
  UniFactorization out;
  out.unit = p.lead() / abs(p.lead()) * p.content();
  if (p.degree() == 0) {
    out.unit = p.coeff(0);
    return out;
  }
  UniPoly w = p.primitive_part();

  // Monomial part.
  int tpow = 0;
  while (w.coeff(0) == 0) {
    std::vector<Rat> shifted(w.coeffs().begin() + 1, w.coeffs().end());
    w = UniPoly(std::move(shifted));
    ++tpow;
  }
  if (tpow > 0) out.factors.push_back({UniPoly({Rat(0), Rat(1)}), tpow});

  for (const auto& [sf, mult] : squarefree_decomposition(w)) {
    for (const auto& f : factor_squarefree(sf)) out.factors.push_back({f, mult});
  }
  if (w.degree() == 0) {
    // w was a pure monomial; nothing further.
  }
  std::sort(out.factors.begin(), out.factors.end(), factor_order);
  return out;
}

bool is_irreducible(const UniPoly& p) {
  if (p.is_zero() || p.degree() == 0)
    throw std::domain_error("is_irreducible: needs degree >= 1");
  auto f = uni_factor(p);
  return f.factors.size() == 1 && f.factors[0].mult == 1;
}

}  // namespace qvs
