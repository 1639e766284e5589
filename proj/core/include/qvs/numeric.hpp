// Exact scalar arithmetic: arbitrary-precision integers and rationals,
// integer root extraction, and elements of real quadratic fields.
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace qvs {

using Int = mpz_class;
using Rat = mpq_class;

inline Int gcd_int(const Int& a, const Int& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline Int lcm_int(const Int& a, const Int& b) {
  Int l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

inline int sign(const Int& a) { return sgn(a); }
inline int sign(const Rat& a) { return sgn(a); }

inline Int num(const Rat& q) { return Int(q.get_num()); }
inline Int den(const Rat& q) { return Int(q.get_den()); }

inline bool is_integer(const Rat& q) { return q.get_den() == 1; }

/// floor(a/b) for integers, b != 0.
Int floor_div(const Int& a, const Int& b);
/// ceil(a/b) for integers, b != 0.
Int ceil_div(const Int& a, const Int& b);

Int floor_rat(const Rat& q);
Int ceil_rat(const Rat& q);

/// floor(sqrt(n)), n >= 0.
Int isqrt_floor(const Int& n);
/// floor(n^(1/k)), n >= 0, k >= 1.
Int iroot_floor(const Int& n, unsigned k);
/// Exact square test; fills *root with the non-negative square root when true.
bool is_square(const Int& n, Int* root = nullptr);

/// n = d * s^2 with d squarefree (n > 0).  Returns d, stores s if asked.
Int squarefree_part(const Int& n, Int* square_root = nullptr);

Int pow_int(const Int& base, unsigned e);
Rat pow_rat(const Rat& base, unsigned e);

/// Parse "a" or "a/b" (b > 0 after canonicalization).  Throws std::invalid_argument.
Rat rat_from_string(const std::string& s);
/// Canonical form: "a" when integral, else "a/b" with b > 1.
std::string rat_to_string(const Rat& q);

/// Conversion guarded against overflow.
std::optional<long> to_long(const Int& n);

/// Element a + b*sqrt(D) of Q(sqrt(D)); D > 1 squarefree and not a square.
/// All comparisons and floors are exact.
class QuadExt {
 public:
  QuadExt(Rat a, Rat b, Int D);

  const Rat& a() const { return a_; }
  const Rat& b() const { return b_; }
  const Int& D() const { return D_; }

  QuadExt operator+(const QuadExt& o) const;
  QuadExt operator-(const QuadExt& o) const;
  QuadExt operator*(const QuadExt& o) const;
  QuadExt operator-() const;
  QuadExt inverse() const;  // requires nonzero

  QuadExt operator+(const Rat& r) const;
  QuadExt operator-(const Rat& r) const;
  QuadExt operator*(const Rat& r) const;

  QuadExt conj() const { return QuadExt(a_, -b_, D_); }
  Rat norm() const;  // a^2 - b^2 D

  bool is_zero() const { return a_ == 0 && b_ == 0; }
  bool is_rational() const { return b_ == 0; }
  /// Sign of the real value: -1, 0, or +1.
  int sgn() const;

  int cmp(const QuadExt& o) const { return (*this - o).sgn(); }
  int cmp(const Rat& r) const;
  bool operator<(const QuadExt& o) const { return cmp(o) < 0; }
  bool operator==(const QuadExt& o) const;

  /// Largest integer <= value.
  Int floor() const;

  std::string to_string() const;

 private:
  Rat a_, b_;
  Int D_;
};

}  // namespace qvs
