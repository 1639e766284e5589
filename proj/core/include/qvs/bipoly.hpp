// Sparse bivariate polynomials over Q, the input-surface parser, and
// integer linear/affine substitutions.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qvs/unipoly.hpp"

namespace qvs {

class BiPoly {
 public:
  using Key = std::pair<int, int>;  // (i, j) for x^i y^j

  BiPoly() = default;
  static BiPoly constant(const Rat& c);
  static BiPoly monomial(const Rat& c, int i, int j);
  static BiPoly var_x() { return monomial(1, 1, 0); }
  static BiPoly var_y() { return monomial(1, 0, 1); }

  const std::map<Key, Rat>& terms() const { return t_; }
  Rat coeff(int i, int j) const;
  void set_coeff(int i, int j, const Rat& c);

  bool is_zero() const { return t_.empty(); }
  /// Total degree; -1 for the zero polynomial.
  int degree() const;
  int degree_x() const;
  int degree_y() const;

  BiPoly operator+(const BiPoly& o) const;
  BiPoly operator-(const BiPoly& o) const;
  BiPoly operator*(const BiPoly& o) const;
  BiPoly operator-() const;
  BiPoly operator*(const Rat& s) const;
  bool operator==(const BiPoly& o) const { return t_ == o.t_; }

  BiPoly pow(unsigned e) const;

  Rat eval(const Rat& x, const Rat& y) const;
  Int eval_int(const Int& x, const Int& y) const;  // requires integral coefficients

  /// Terms of total degree exactly d.
  BiPoly homogeneous_part(int d) const;
  bool is_homogeneous() const;

  bool is_integral() const;
  /// Positive rational c with p/c integral primitive (p nonzero).
  Rat content() const;

  BiPoly swap_xy() const;
  /// F(x + a, y + b).
  BiPoly shift(const Rat& a, const Rat& b) const;
  /// F(a*x + b*y + e, c*x + d*y + f).
  BiPoly subs_linear(const Rat& a, const Rat& b, const Rat& e, const Rat& c, const Rat& d,
                     const Rat& f) const;

  /// Restriction to a parametrized line: t -> F(x0 + t*dx, y0 + t*dy).
  UniPoly restrict_line(const Rat& x0, const Rat& y0, const Int& dx, const Int& dy) const;

  /// Coefficients as polynomials in x, indexed by the power of y.
  std::vector<UniPoly> by_powers_of_y() const;
  std::vector<UniPoly> by_powers_of_x() const;
  static BiPoly from_powers_of_y(const std::vector<UniPoly>& coeffs);

  std::string to_string() const;

 private:
  void put(int i, int j, const Rat& c);  // additive
  std::map<Key, Rat> t_;                 // invariant: no zero values stored
};

/// Row-major integer matrix [[a, b], [c, d]] with det = +-1.
struct UnimodularMap {
  Int a, b, c, d;
  Int det() const { return a * d - b * c; }
  UnimodularMap inverse() const;
  /// (x, y) -> (a x + b y, c x + d y).
  std::pair<Int, Int> apply(const Int& x, const Int& y) const;
  std::pair<Int, Int> apply_inverse(const Int& x, const Int& y) const;
};

/// G = F(A^{-1} (u,v)); value sets of F and G over Z^2 coincide.
BiPoly apply_unimodular(const BiPoly& F, const UnimodularMap& A);

/// Map with first row (a, b)/g where g = gcd; second row canonical
/// (0 <= c < |first-row a| when that entry is nonzero).
UnimodularMap unimodular_from_linear(const Int& a, const Int& b);

struct ParseError : std::runtime_error {
  size_t pos;
  ParseError(const std::string& msg, size_t p) : std::runtime_error(msg), pos(p) {}
};

/// Grammar: rational literals (a or a/b), x, y, + - * ^ and parentheses;
/// ^ binds tighter than *; exponents are non-negative integer literals;
/// no implicit multiplication.
BiPoly parse_poly(const std::string& text);

/// N = scale*(F - shift) with shift = F(0,0): integral, N(0,0) = 0, scale > 0.
struct Normalization {
  Int scale;
  Rat shift;
};
std::pair<BiPoly, Normalization> normalize(const BiPoly& F);

std::string bipoly_brief(const BiPoly& F);

}  // namespace qvs
