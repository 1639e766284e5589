#include "qvs/contfrac.hpp"

#include <map>

namespace qvs {

Int ContinuedFraction::digit(size_t k) const {
  if (k < head.size()) return head[k];
  if (period.empty()) throw std::out_of_range("ContinuedFraction: finite expansion");
  return period[(k - head.size()) % period.size()];
}

std::string ContinuedFraction::to_string() const {
  std::string out = "[";
  for (size_t i = 0; i < head.size(); ++i) {
    if (i) out += i == 1 ? "; " : ", ";
    out += head[i].get_str();
  }
  if (!period.empty()) {
    out += head.size() <= 1 ? "; (" : ", (";
    for (size_t i = 0; i < period.size(); ++i) {
      if (i) out += ", ";
      out += period[i].get_str();
    }
    out += ")";
  }
  out += "]";
  return out;
}

ContinuedFraction cf_expand(const Rat& x) {
  ContinuedFraction cf;
  Int a = num(x), b = den(x);
  for (;;) {
    Int q = floor_div(a, b);
    cf.head.push_back(q);
    Int r = a - q * b;
    if (r == 0) break;
    a = b;
    b = r;
  }
  return cf;
}

ContinuedFraction cf_expand(const QuadIrr& x) {
  // State (P, Q) for alpha_i = (P + sqrt(N)) / Q with Q | N - P^2.
  Int N = x.q * x.q * x.D;
  Int P = x.p, Q = x.r;
  if (x.q < 0) {
    P = -P;
    Q = -Q;
  }
  if ((N - P * P) % Q != 0) {
    P *= abs(Q);
    N *= Q * Q;
    Q *= abs(Q);
  }
  Int s;
  Int D = squarefree_part(N, &s);  // sqrt(N) = s sqrt(D)

  ContinuedFraction cf;
  std::vector<Int> digits;
  std::map<std::pair<Int, Int>, size_t> seen;
  for (size_t i = 0; i < 100000; ++i) {
    if (i > 0) {
      auto it = seen.find({P, Q});
      if (it != seen.end()) {
        size_t start = it->second;
        cf.head.assign(digits.begin(), digits.begin() + start);
        cf.period.assign(digits.begin() + start, digits.end());
        return cf;
      }
      seen[{P, Q}] = i;
    }
    Int a = QuadExt(Rat(P) / Rat(Q), Rat(s) / Rat(Q), D).floor();
    digits.push_back(a);
    P = a * Q - P;
    Q = (N - P * P) / Q;
  }
  throw std::runtime_error("cf_expand: period not found");
}

std::vector<Convergent> convergents(const ContinuedFraction& cf, size_t count) {
  std::vector<Convergent> out;
  Int p0 = 0, p1 = 1, q0 = 1, q1 = 0;  // (p_{-2}, p_{-1}), (q_{-2}, q_{-1})
  size_t total = cf.periodic() ? count : std::min(count, cf.head.size());
  for (size_t k = 0; k < total; ++k) {
    Int a = cf.digit(k);
    Int p = a * p1 + p0;
    Int q = a * q1 + q0;
    out.push_back({p, q});
    p0 = p1;
    p1 = p;
    q0 = q1;
    q1 = q;
  }
  return out;
}

Rat badly_approximable_constant(const ContinuedFraction& cf) {
  if (!cf.periodic())
    throw std::domain_error("badly_approximable_constant: rational input");
  Int best = 0;
  for (size_t i = 1; i < cf.head.size(); ++i) best = std::max(best, cf.head[i]);
  for (const Int& a : cf.period) best = std::max(best, a);
  return Rat(1) / Rat(best + 2);
}

}  // namespace qvs
