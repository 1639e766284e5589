// Binary forms (homogeneous bivariate polynomials): factorization over Q,
// exact definiteness with integer witnesses, and real zero directions with
// rational or quadratic-irrational slope.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qvs/bipoly.hpp"
#include "qvs/unifactor.hpp"

namespace qvs {

/// (p + q*sqrt(D)) / r with r > 0, gcd(p, q, r) = 1, D > 1 squarefree, q != 0.
struct QuadIrr {
  Int p, q, r, D;

  /// Canonicalizes; inner need not be squarefree (p + q*sqrt(inner))/r.
  static QuadIrr make(Int p, Int q, Int r, Int inner);
  QuadExt value() const;
  QuadIrr conjugate() const;
  bool operator==(const QuadIrr& o) const;
  std::string to_string() const;
};

/// A point direction with antipodes identified: vertical (0, 1) or a slope
/// dy/dx that is rational or a real quadratic irrational.
struct Direction {
  bool vertical = false;
  bool rational = true;
  Rat slope;                      // when rational && !vertical
  std::optional<QuadIrr> qslope;  // when !rational

  static Direction make_vertical();
  static Direction make_rational(const Int& dx, const Int& dy);  // (dx,dy) != 0
  static Direction make_quadratic(QuadIrr s);

  /// Canonical primitive integer vector (dx > 0, or (0,1)); rational only.
  std::pair<Int, Int> primitive_vector() const;

  bool operator==(const Direction& o) const;
  std::string to_string() const;
};

class BinaryForm {
 public:
  BinaryForm() : d_(0), a_{Rat(0)} {}
  /// a[k] multiplies x^(d-k) y^k; size d+1.
  BinaryForm(int d, std::vector<Rat> a);
  static BinaryForm from_bipoly(const BiPoly& F, int d);
  static BinaryForm constant(const Rat& c) { return BinaryForm(0, {c}); }

  int degree() const { return d_; }
  bool is_zero() const;
  bool is_constant_one() const { return d_ == 0 && a_[0] == 1; }
  const Rat& coeff(int k) const { return a_[k]; }

  BiPoly to_bipoly() const;
  Rat eval(const Rat& x, const Rat& y) const;

  BinaryForm operator*(const BinaryForm& o) const;
  BinaryForm operator*(const Rat& s) const;
  BinaryForm pow(unsigned e) const;
  bool operator==(const BinaryForm& o) const { return d_ == o.d_ && a_ == o.a_; }

  bool is_integral() const;
  Rat content() const;
  /// Primitive with positive first nonzero coefficient.
  BinaryForm primitive() const;

  /// G = x^mx * y^my * core, with core(t, 1) = p(t), p(0) != 0, deg p = d-mx-my.
  struct Split {
    int mx, my;
    UniPoly p;
  };
  Split split() const;
  static BinaryForm join(const Split& s);

  /// G(t, 1).
  UniPoly dehom_y() const;
  /// G(1, t).
  UniPoly dehom_x() const;

  std::string to_string() const;

 private:
  int d_;
  std::vector<Rat> a_;
};

struct FormFactor {
  BinaryForm f;  // primitive integral, irreducible over Q, canonical sign
  int mult;
};

struct FormFactorization {
  Rat unit;
  std::vector<FormFactor> factors;  // sorted by (degree, coefficient list)
  BinaryForm product() const;
};

/// Complete factorization into irreducible forms (nonzero input).
FormFactorization factor_form(const BinaryForm& G);

enum class Definiteness {
  PositiveDefinite,
  PositiveSemidefinite,  // PSD but not PD
  NegativeSemidefinite,  // NSD but not ND
  NegativeDefinite,
  Indefinite,
};

struct DefinitenessReport {
  Definiteness kind;
  /// Integer point with G < 0 (present for ND/NSD/Indefinite).
  std::optional<std::pair<Int, Int>> negative_point;
  /// Nontrivial integer zero (present when a rational zero direction exists).
  std::optional<std::pair<Int, Int>> zero_point;
};

/// Even-degree nonzero forms only.
DefinitenessReport definiteness(const BinaryForm& G);

/// For a PSD (not PD) form: G = P0 * Ftilde with Ftilde the primitive product
/// of the real-rooted factors (even multiplicities) and P0 positive definite
/// or a positive constant.
std::pair<BinaryForm, BinaryForm> split_psd(const BinaryForm& G);

bool divides_form(const BinaryForm& h, const BinaryForm& g);
/// Exact quotient (h | g required).
BinaryForm divide_form(const BinaryForm& g, const BinaryForm& h);
/// Largest k with h^k | g (h nonconstant, g nonzero).
int multiplicity_in(const BinaryForm& h, const BinaryForm& g);
/// Primitive gcd with positive leading sign; form_gcd(G, 0) = primitive(G).
BinaryForm form_gcd(const BinaryForm& g1, const BinaryForm& g2);

/// Directions (up to antipode) where G vanishes on the real plane.
/// Requires every real-rooted irreducible factor to have degree <= 2.
std::vector<Direction> real_zero_directions(const BinaryForm& G);

/// Sign of G on the ray of the direction (even degree: antipode-independent).
int sign_at_direction(const BinaryForm& G, const Direction& dir);

/// The primitive irreducible form vanishing exactly at the direction (and its
/// conjugate, in the quadratic case).
BinaryForm minimal_form(const Direction& dir);

}  // namespace qvs
