#include "qvs/uniroots.hpp"

#include <algorithm>

namespace qvs {

namespace {

int variations_at(const std::vector<UniPoly>& chain, const Rat& x) {
  int v = 0, prev = 0;
  for (const auto& p : chain) {
    int s = sign(p.eval(x));
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++v;
    prev = s;
  }
  return v;
}

// Sign at +inf (dir=+1) or -inf (dir=-1).
int sign_at_infinity(const UniPoly& p, int dir) {
  if (p.is_zero()) return 0;
  int s = sign(p.lead());
  if (dir < 0 && (p.degree() & 1)) s = -s;
  return s;
}

int variations_at_infinity(const std::vector<UniPoly>& chain, int dir) {
  int v = 0, prev = 0;
  for (const auto& p : chain) {
    int s = sign_at_infinity(p, dir);
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++v;
    prev = s;
  }
  return v;
}

// Roots of the squarefree polynomial in the half-open interval (a, b].
int count_open_closed(const std::vector<UniPoly>& chain, const Rat& a, const Rat& b) {
  return variations_at(chain, a) - variations_at(chain, b);
}

// An interior point of (a, b) that is not a root of sf.
Rat non_root_split(const UniPoly& sf, const Rat& a, const Rat& b) {
  int n = sf.degree() + 3;
  for (int j = 1; j < n; ++j) {
    Rat t = a + (b - a) * Rat(j) / Rat(n);
    if (sf.eval(t) != 0) return t;
  }
  throw std::logic_error("non_root_split: exhausted candidates");
}

}  // namespace

std::vector<UniPoly> sturm_chain(const UniPoly& p) {
  std::vector<UniPoly> chain;
  UniPoly a = p.squarefree_part();
  if (a.is_zero() || a.degree() == 0) return chain;
  chain.push_back(a);
  chain.push_back(a.derivative());
  while (!chain.back().is_zero()) {
    const UniPoly& s = chain[chain.size() - 2];
    const UniPoly& t = chain.back();
    UniPoly r = s.divrem(t).second;
    if (r.is_zero()) break;
    chain.push_back(-r);
  }
  return chain;
}

int count_real_roots(const UniPoly& p, const Rat& a, const Rat& b) {
  if (p.is_zero()) throw std::domain_error("count_real_roots: zero polynomial");
  if (a > b) throw std::invalid_argument("count_real_roots: empty interval");
  if (p.degree() == 0) return 0;
  UniPoly sf = p.squarefree_part();
  auto chain = sturm_chain(p);
  int n = count_open_closed(chain, a, b);
  if (sf.eval(a) == 0) ++n;
  return n;
}

int count_real_roots(const UniPoly& p) {
  if (p.is_zero()) throw std::domain_error("count_real_roots: zero polynomial");
  if (p.degree() == 0) return 0;
  auto chain = sturm_chain(p);
  return variations_at_infinity(chain, -1) - variations_at_infinity(chain, +1);
}

Rat cauchy_bound(const UniPoly& p) {
  if (p.is_zero() || p.degree() == 0) return 1;
  Rat m = 0;
  for (int k = 0; k < p.degree(); ++k) m = std::max(m, Rat(abs(p.coeff(k) / p.lead())));
  return m + 1;
}

std::vector<RootInterval> isolate_real_roots(const UniPoly& p) {
  std::vector<RootInterval> out;
  if (p.is_zero() || p.degree() == 0) return out;
  UniPoly sf = p.squarefree_part();
  auto chain = sturm_chain(p);
  Rat M = cauchy_bound(sf);

  // Depth-first split of (a, b] intervals whose endpoints are non-roots
  // (|root| < M, so -M and splits chosen non-root qualify).
  std::vector<std::pair<Rat, Rat>> stack{{-M, M}};
  while (!stack.empty()) {
    auto [a, b] = stack.back();
    stack.pop_back();
    int n = count_open_closed(chain, a, b);
    if (n == 0) continue;
    if (n == 1) {
      // Try to pin a rational root cheaply; otherwise keep the interval.
      Rat mid = (a + b) / 2;
      if (sf.eval(mid) == 0) {
        out.push_back({mid, mid, true});
      } else {
        out.push_back({a, b, false});
      }
      continue;
    }
    Rat t = non_root_split(sf, a, b);
    stack.push_back({t, b});
    stack.push_back({a, t});
  }
  std::sort(out.begin(), out.end(),
            [](const RootInterval& x, const RootInterval& y) { return x.lo < y.lo; });

  // Enforce pairwise-disjoint closed intervals.
  for (size_t i = 0; i + 1 < out.size(); ++i) {
    while (out[i].hi >= out[i + 1].lo) {
      refine_interval(sf, out[i], 1);
      refine_interval(sf, out[i + 1], 1);
    }
  }
  return out;
}

void refine_interval(const UniPoly& sf, RootInterval& iv, int steps) {
  auto chain = sturm_chain(sf);
  for (int s = 0; s < steps && !iv.exact; ++s) {
    Rat mid = (iv.lo + iv.hi) / 2;
    if (sf.eval(mid) == 0) {
      iv = {mid, mid, true};
      return;
    }
    if (count_open_closed(chain, iv.lo, mid) == 1) {
      iv.hi = mid;
    } else {
      iv.lo = mid;
    }
  }
}

std::optional<Rat> certified_lower_bound(const UniPoly& p, const Rat& lo, const Rat& hi,
                                         int max_halvings) {
  if (p.is_zero()) return std::nullopt;
  Rat c = 1;
  for (int i = 0; i <= max_halvings; ++i, c /= 2) {
    if (p.eval(lo) <= c) continue;
    UniPoly shifted = p - UniPoly::constant(c);
    if (count_real_roots(shifted, lo, hi) == 0) return c;
  }
  return std::nullopt;
}

std::optional<Rat> find_negative_point(const UniPoly& p) {
  if (p.is_zero()) return std::nullopt;
  if (p.degree() == 0) return sign(p.lead()) < 0 ? std::optional<Rat>(0) : std::nullopt;

  Rat M = cauchy_bound(p);
  std::vector<Rat> candidates{-M, M, 0};
  auto ivs = isolate_real_roots(p);
  for (auto& iv : ivs) refine_interval(p.squarefree_part(), iv, 4);
  for (size_t i = 0; i < ivs.size(); ++i) {
    candidates.push_back(ivs[i].lo);
    candidates.push_back(ivs[i].hi);
    if (i + 1 < ivs.size()) candidates.push_back((ivs[i].hi + ivs[i + 1].lo) / 2);
  }
  for (const auto& t : candidates)
    if (sign(p.eval(t)) < 0) return t;
  return std::nullopt;
}

std::optional<std::pair<Int, Rat>> integer_minimum(const UniPoly& p) {
  if (p.is_zero()) return std::make_pair(Int(0), Rat(0));
  if (p.degree() == 0) return std::make_pair(Int(0), p.coeff(0));
  if ((p.degree() & 1) || sign(p.lead()) < 0) return std::nullopt;
  // Interior extrema lie below the Cauchy bound of p'.
  Rat M = cauchy_bound(p.derivative());
  Int lo = floor_rat(-M) - 1, hi = ceil_rat(M) + 1;
  Int best_t = lo;
  Rat best = p.eval(Rat(lo));
  for (Int t = lo + 1; t <= hi; ++t) {
    Rat v = p.eval(Rat(t));
    if (v < best) {
      best = v;
      best_t = t;
    }
  }
  return std::make_pair(best_t, best);
}

}  // namespace qvs
