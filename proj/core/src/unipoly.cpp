#include "qvs/unipoly.hpp"

#include <algorithm>

namespace qvs {

namespace {
const Rat kZero = 0;
}

UniPoly::UniPoly(std::vector<Rat> ascending) : c_(std::move(ascending)) { trim(); }

UniPoly UniPoly::constant(const Rat& c) { return UniPoly({c}); }

UniPoly UniPoly::monomial(const Rat& c, int k) {
  std::vector<Rat> v(k + 1, Rat(0));
  v[k] = c;
  return UniPoly(std::move(v));
}

void UniPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

const Rat& UniPoly::coeff(int k) const {
  if (k < 0 || k >= static_cast<int>(c_.size())) return kZero;
  return c_[k];
}

const Rat& UniPoly::lead() const {
  if (c_.empty()) return kZero;
  return c_.back();
}

UniPoly UniPoly::operator+(const UniPoly& o) const {
  std::vector<Rat> r(std::max(c_.size(), o.c_.size()), Rat(0));
  for (size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
  for (size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
  return UniPoly(std::move(r));
}

UniPoly UniPoly::operator-(const UniPoly& o) const { return *this + (-o); }

UniPoly UniPoly::operator-() const {
  std::vector<Rat> r = c_;
  for (auto& x : r) x = -x;
  return UniPoly(std::move(r));
}

UniPoly UniPoly::operator*(const UniPoly& o) const {
  if (is_zero() || o.is_zero()) return UniPoly();
  std::vector<Rat> r(c_.size() + o.c_.size() - 1, Rat(0));
  for (size_t i = 0; i < c_.size(); ++i)
    for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  return UniPoly(std::move(r));
}

UniPoly UniPoly::operator*(const Rat& s) const {
  if (s == 0) return UniPoly();
  std::vector<Rat> r = c_;
  for (auto& x : r) x *= s;
  return UniPoly(std::move(r));
}

Rat UniPoly::eval(const Rat& t) const {
  Rat v = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) v = v * t + *it;
  return v;
}

QuadExt UniPoly::eval(const QuadExt& t) const {
  QuadExt v(Rat(0), Rat(0), t.D());
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) v = v * t + *it;
  return v;
}

UniPoly UniPoly::derivative() const {
  if (c_.size() <= 1) return UniPoly();
  std::vector<Rat> r(c_.size() - 1);
  for (size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * Rat(static_cast<long>(i));
  return UniPoly(std::move(r));
}

UniPoly UniPoly::compose_affine(const Rat& a, const Rat& b) const {
  // Horner in (a t + b).
  UniPoly lin({b, a});
  UniPoly v;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) v = v * lin + constant(*it);
  return v;
}

UniPoly UniPoly::reversed() const {
  std::vector<Rat> r(c_.rbegin(), c_.rend());
  return UniPoly(std::move(r));
}

UniPoly UniPoly::scale_arg(const Rat& s) const {
  std::vector<Rat> r = c_;
  Rat p = 1;
  for (size_t i = 0; i < r.size(); ++i) {
    r[i] *= p;
    p *= s;
  }
  return UniPoly(std::move(r));
}

std::pair<UniPoly, UniPoly> UniPoly::divrem(const UniPoly& d) const {
  if (d.is_zero()) throw std::domain_error("UniPoly::divrem: zero divisor");
  UniPoly r = *this;
  if (r.degree() < d.degree()) return {UniPoly(), r};
  std::vector<Rat> q(r.degree() - d.degree() + 1, Rat(0));
  while (!r.is_zero() && r.degree() >= d.degree()) {
    int k = r.degree() - d.degree();
    Rat f = r.lead() / d.lead();
    q[k] = f;
    r = r - UniPoly::monomial(f, k) * d;
  }
  return {UniPoly(std::move(q)), r};
}

UniPoly UniPoly::divexact(const UniPoly& d) const {
  auto [q, r] = divrem(d);
  if (!r.is_zero()) throw std::domain_error("UniPoly::divexact: inexact");
  return q;
}

bool UniPoly::divisible_by(const UniPoly& d) const { return divrem(d).second.is_zero(); }

UniPoly UniPoly::gcd(const UniPoly& p, const UniPoly& q) {
  UniPoly a = p, b = q;
  while (!b.is_zero()) {
    UniPoly r = a.divrem(b).second;
    a = b;
    b = r;
  }
  if (a.is_zero()) return a;
  return a * (Rat(1) / a.lead());
}

Rat UniPoly::content() const {
  if (is_zero()) throw std::domain_error("UniPoly::content: zero polynomial");
  Int g = 0, l = 1;
  for (const auto& x : c_) {
    if (x == 0) continue;
    g = gcd_int(g, num(x));
    l = lcm_int(l, den(x));
  }
  return Rat(g) / Rat(l);
}

UniPoly UniPoly::primitive_part() const {
  Rat c = content();
  if (sign(lead()) < 0) c = -c;
  return *this * (Rat(1) / c);
}

bool UniPoly::is_integral() const {
  return std::all_of(c_.begin(), c_.end(), [](const Rat& x) { return is_integer(x); });
}

UniPoly UniPoly::squarefree_part() const {
  if (is_zero() || degree() == 0) return *this;
  UniPoly g = gcd(*this, derivative());
  if (g.degree() == 0) {
    UniPoly m = *this;
    return m * (Rat(1) / m.lead());
  }
  UniPoly q = divexact(g);
  return q * (Rat(1) / q.lead());
}

std::string UniPoly::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::string out;
  for (int k = degree(); k >= 0; --k) {
    const Rat& a = coeff(k);
    if (a == 0) continue;
    if (!out.empty()) out += sign(a) > 0 ? " + " : " - ";
    else if (sign(a) < 0) out += "-";
    Rat ab = abs(a);
    if (ab != 1 || k == 0) out += rat_to_string(ab);
    if (k > 0) {
      if (ab != 1) out += "*";
      out += var;
      if (k > 1) out += "^" + std::to_string(k);
    }
  }
  return out;
}

}  // namespace qvs
