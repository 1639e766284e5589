#include "qvs/numeric.hpp"

#include <cctype>

namespace qvs {

Int floor_div(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  if (sign(b) < 0) {
    // mpz_fdiv rounds toward -inf with respect to b's sign convention;
    // normalize so the result is floor of the real quotient.
    Int r = a - q * b;
    if (r != 0 && ((r < 0) != (b < 0))) q -= 1;
  }
  return q;
}

Int ceil_div(const Int& a, const Int& b) { return -floor_div(-a, b); }

Int floor_rat(const Rat& q) { return floor_div(num(q), den(q)); }
Int ceil_rat(const Rat& q) { return -floor_rat(-q); }

Int isqrt_floor(const Int& n) {
  if (n < 0) throw std::invalid_argument("isqrt_floor: negative");
  Int r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

Int iroot_floor(const Int& n, unsigned k) {
  if (n < 0) throw std::invalid_argument("iroot_floor: negative");
  if (k == 0) throw std::invalid_argument("iroot_floor: k must be >= 1");
  Int r;
  mpz_root(r.get_mpz_t(), n.get_mpz_t(), k);
  return r;
}

bool is_square(const Int& n, Int* root) {
  if (n < 0) return false;
  Int r = isqrt_floor(n);
  if (r * r != n) return false;
  if (root) *root = r;
  return true;
}

Int squarefree_part(const Int& n, Int* square_root) {
  if (n <= 0) throw std::invalid_argument("squarefree_part: need n > 0");
  Int d = 1, s = 1, m = n;
  for (Int p = 2; p * p <= m; p += (p == 2 ? 1 : 2)) {
    if (m % p != 0) continue;
    int e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    if (e & 1) d *= p;
    for (int i = 0; i < e / 2; ++i) s *= p;
  }
  d *= m;  // leftover prime (exponent 1)
  if (square_root) *square_root = s;
  return d;
}

Int pow_int(const Int& base, unsigned e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

Rat pow_rat(const Rat& base, unsigned e) {
  Rat r = 1;
  Rat b = base;
  unsigned k = e;
  while (k) {
    if (k & 1) r *= b;
    b *= b;
    k >>= 1;
  }
  return r;
}

Rat rat_from_string(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("rat_from_string: empty");
  for (size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    bool ok = std::isdigit(static_cast<unsigned char>(c)) || c == '/' ||
              ((c == '-' || c == '+') && (i == 0 || s[i - 1] == '/'));
    if (!ok) throw std::invalid_argument("rat_from_string: bad character in '" + s + "'");
  }
  Rat q;
  if (q.set_str(s, 10) != 0) throw std::invalid_argument("rat_from_string: '" + s + "'");
  if (q.get_den() == 0) throw std::invalid_argument("rat_from_string: zero denominator");
  q.canonicalize();
  return q;
}

std::string rat_to_string(const Rat& q) {
  Rat c = q;
  c.canonicalize();
  if (is_integer(c)) return num(c).get_str();
  return num(c).get_str() + "/" + den(c).get_str();
}

std::optional<long> to_long(const Int& n) {
  if (!n.fits_slong_p()) return std::nullopt;
  return n.get_si();
}

QuadExt::QuadExt(Rat a, Rat b, Int D) : a_(std::move(a)), b_(std::move(b)), D_(std::move(D)) {
  if (D_ <= 1) throw std::invalid_argument("QuadExt: D must exceed 1");
}

QuadExt QuadExt::operator+(const QuadExt& o) const { return QuadExt(a_ + o.a_, b_ + o.b_, D_); }
QuadExt QuadExt::operator-(const QuadExt& o) const { return QuadExt(a_ - o.a_, b_ - o.b_, D_); }

QuadExt QuadExt::operator*(const QuadExt& o) const {
  return QuadExt(a_ * o.a_ + b_ * o.b_ * Rat(D_), a_ * o.b_ + b_ * o.a_, D_);
}

QuadExt QuadExt::operator-() const { return QuadExt(-a_, -b_, D_); }

QuadExt QuadExt::inverse() const {
  Rat n = norm();
  if (n == 0) throw std::domain_error("QuadExt::inverse: zero element");
  return QuadExt(a_ / n, -b_ / n, D_);
}

QuadExt QuadExt::operator+(const Rat& r) const { return QuadExt(a_ + r, b_, D_); }
QuadExt QuadExt::operator-(const Rat& r) const { return QuadExt(a_ - r, b_, D_); }
QuadExt QuadExt::operator*(const Rat& r) const { return QuadExt(a_ * r, b_ * r, D_); }

Rat QuadExt::norm() const { return a_ * a_ - b_ * b_ * Rat(D_); }

int QuadExt::sgn() const {
  int sa = sign(a_), sb = sign(b_);
  if (sb == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  // Opposite signs: compare |a| with |b|sqrt(D) via squares.
  int c = sign(a_ * a_ - b_ * b_ * Rat(D_));
  return c == 0 ? 0 : c * sa;
}

int QuadExt::cmp(const Rat& r) const { return (*this - r).sgn(); }

bool QuadExt::operator==(const QuadExt& o) const {
  // sqrt(D) irrational, so components determine the value.
  return a_ == o.a_ && b_ == o.b_ && D_ == o.D_;
}

Int QuadExt::floor() const {
  if (b_ == 0) return floor_rat(a_);
  // Integer part of b*sqrt(D) from floor(sqrt(b^2 D)) with sign fixup,
  // then a two-step correction for the rational shift.
  Int bn = num(b_), bd = den(b_);
  Int inner = bn * bn * D_;
  Int s = isqrt_floor(inner);
  Int guess = sign(b_) > 0 ? floor_div(s, bd) : -floor_div(s, bd) - 1;
  guess += floor_rat(a_);
  // guess is within 2 of the answer; correct by exact comparison.
  while (cmp(Rat(guess + 1)) >= 0) guess += 1;
  while (cmp(Rat(guess)) < 0) guess -= 1;
  return guess;
}

std::string QuadExt::to_string() const {
  if (b_ == 0) return rat_to_string(a_);
  std::string out;
  if (a_ != 0) out += rat_to_string(a_) + (sign(b_) > 0 ? " + " : " - ");
  else if (sign(b_) < 0) out += "-";
  Rat ab = abs(b_);
  if (ab != 1) out += rat_to_string(ab) + "*";
  out += "sqrt(" + D_.get_str() + ")";
  return out;
}

}  // namespace qvs
