// Dense univariate polynomials over Q, coefficients stored ascending.
#pragma once

#include <string>
#include <vector>

#include "qvs/numeric.hpp"

namespace qvs {

class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<Rat> ascending);
  static UniPoly constant(const Rat& c);
  /// Monomial c * t^k.
  static UniPoly monomial(const Rat& c, int k);

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const Rat& coeff(int k) const;
  const Rat& lead() const;
  const std::vector<Rat>& coeffs() const { return c_; }

  UniPoly operator+(const UniPoly& o) const;
  UniPoly operator-(const UniPoly& o) const;
  UniPoly operator*(const UniPoly& o) const;
  UniPoly operator-() const;
  UniPoly operator*(const Rat& s) const;
  bool operator==(const UniPoly& o) const { return c_ == o.c_; }

  Rat eval(const Rat& t) const;
  QuadExt eval(const QuadExt& t) const;

  UniPoly derivative() const;
  /// p(a*t + b).
  UniPoly compose_affine(const Rat& a, const Rat& b) const;
  /// t^deg * p(1/t) (coefficients reversed).
  UniPoly reversed() const;
  /// p(s*t) with coefficient k scaled by s^k.
  UniPoly scale_arg(const Rat& s) const;

  /// Quotient and remainder over Q; divisor nonzero.
  std::pair<UniPoly, UniPoly> divrem(const UniPoly& d) const;
  /// Exact division; throws if the remainder is nonzero.
  UniPoly divexact(const UniPoly& d) const;
  bool divisible_by(const UniPoly& d) const;

  /// gcd over Q, normalized monic (gcd(0,0) = 0).
  static UniPoly gcd(const UniPoly& p, const UniPoly& q);

  /// Positive rational c with p/c integral and primitive (p nonzero).
  Rat content() const;
  /// p/content with positive leading coefficient; sign recorded separately by callers.
  UniPoly primitive_part() const;
  bool is_integral() const;

  /// Product of distinct irreducible factors (monic normalization).
  UniPoly squarefree_part() const;

  std::string to_string(const std::string& var = "t") const;

 private:
  void trim();
  std::vector<Rat> c_;  // c_[k] multiplies t^k; invariant: c_.back() != 0
};

}  // namespace qvs
