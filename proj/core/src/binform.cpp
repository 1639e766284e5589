#include "qvs/binform.hpp"

#include <algorithm>

#include "qvs/uniroots.hpp"

namespace qvs {

QuadIrr QuadIrr::make(Int p, Int q, Int r, Int inner) {
  if (r == 0 || q == 0) throw std::invalid_argument("QuadIrr: degenerate");
  if (inner <= 0) throw std::invalid_argument("QuadIrr: inner radicand must be positive");
  Int s;
  Int D = squarefree_part(inner, &s);
  if (D == 1) throw std::invalid_argument("QuadIrr: radicand is a perfect square");
  q *= s;
  if (r < 0) {
    p = -p;
    q = -q;
    r = -r;
  }
  Int g = gcd_int(gcd_int(p, q), r);
  return QuadIrr{p / g, q / g, r / g, D};
}

QuadExt QuadIrr::value() const { return QuadExt(Rat(p) / Rat(r), Rat(q) / Rat(r), D); }

QuadIrr QuadIrr::conjugate() const { return QuadIrr{p, -q, r, D}; }

bool QuadIrr::operator==(const QuadIrr& o) const {
  return p == o.p && q == o.q && r == o.r && D == o.D;
}

std::string QuadIrr::to_string() const { return value().to_string(); }

Direction Direction::make_vertical() {
  Direction d;
  d.vertical = true;
  d.rational = true;
  return d;
}

Direction Direction::make_rational(const Int& dx, const Int& dy) {
  if (dx == 0 && dy == 0) throw std::invalid_argument("Direction: zero vector");
  if (dx == 0) return make_vertical();
  Direction d;
  d.vertical = false;
  d.rational = true;
  d.slope = Rat(dy) / Rat(dx);
  return d;
}

Direction Direction::make_quadratic(QuadIrr s) {
  Direction d;
  d.vertical = false;
  d.rational = false;
  d.qslope = std::move(s);
  return d;
}

std::pair<Int, Int> Direction::primitive_vector() const {
  if (!rational) throw std::domain_error("Direction: irrational slope has no integer vector");
  if (vertical) return {0, 1};
  return {den(slope), num(slope)};
}

bool Direction::operator==(const Direction& o) const {
  if (vertical != o.vertical || rational != o.rational) return false;
  if (vertical) return true;
  if (rational) return slope == o.slope;
  return *qslope == *o.qslope;
}

std::string Direction::to_string() const {
  if (vertical) return "vertical";
  if (rational) return "slope " + rat_to_string(slope);
  return "slope " + qslope->to_string();
}

BinaryForm::BinaryForm(int d, std::vector<Rat> a) : d_(d), a_(std::move(a)) {
  if (static_cast<int>(a_.size()) != d_ + 1)
    throw std::invalid_argument("BinaryForm: need d+1 coefficients");
}

BinaryForm BinaryForm::from_bipoly(const BiPoly& F, int d) {
  std::vector<Rat> a(d + 1, Rat(0));
  for (const auto& [k, c] : F.terms()) {
    if (k.first + k.second != d) continue;
    a[k.second] = c;
  }
  return BinaryForm(d, std::move(a));
}

bool BinaryForm::is_zero() const {
  return std::all_of(a_.begin(), a_.end(), [](const Rat& c) { return c == 0; });
}

BiPoly BinaryForm::to_bipoly() const {
  BiPoly r;
  for (int k = 0; k <= d_; ++k) r.set_coeff(d_ - k, k, a_[k]);
  return r;
}

Rat BinaryForm::eval(const Rat& x, const Rat& y) const {
  Rat acc = 0;
  for (int k = 0; k <= d_; ++k) {
    if (a_[k] == 0) continue;
    acc += a_[k] * pow_rat(x, d_ - k) * pow_rat(y, k);
  }
  return acc;
}

BinaryForm BinaryForm::operator*(const BinaryForm& o) const {
  std::vector<Rat> r(d_ + o.d_ + 1, Rat(0));
  for (int i = 0; i <= d_; ++i)
    for (int j = 0; j <= o.d_; ++j) r[i + j] += a_[i] * o.a_[j];
  return BinaryForm(d_ + o.d_, std::move(r));
}

BinaryForm BinaryForm::operator*(const Rat& s) const {
  std::vector<Rat> r = a_;
  for (auto& c : r) c *= s;
  return BinaryForm(d_, std::move(r));
}

BinaryForm BinaryForm::pow(unsigned e) const {
  BinaryForm r = constant(1);
  BinaryForm b = *this;
  while (e) {
    if (e & 1) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}

bool BinaryForm::is_integral() const {
  return std::all_of(a_.begin(), a_.end(), [](const Rat& c) { return is_integer(c); });
}

Rat BinaryForm::content() const {
  if (is_zero()) throw std::domain_error("BinaryForm::content: zero form");
  Int g = 0, l = 1;
  for (const auto& c : a_) {
    if (c == 0) continue;
    g = gcd_int(g, num(c));
    l = lcm_int(l, den(c));
  }
  return Rat(g) / Rat(l);
}

BinaryForm BinaryForm::primitive() const {
  Rat c = content();
  for (const auto& x : a_) {
    if (x == 0) continue;
    if (sign(x) < 0) c = -c;
    break;
  }
  return *this * (Rat(1) / c);
}

BinaryForm::Split BinaryForm::split() const {
  if (is_zero()) throw std::domain_error("BinaryForm::split: zero form");
  // a_[k] multiplies x^(d-k) y^k: y-multiplicity is the least nonzero index,
  // x-multiplicity is d minus the greatest.
  int kmin = 0;
  while (a_[kmin] == 0) ++kmin;
  int kmax = d_;
  while (a_[kmax] == 0) --kmax;
  int my = kmin, mx = d_ - kmax;
  int e = kmax - kmin;
  std::vector<Rat> p(e + 1, Rat(0));
  for (int i = 0; i <= e; ++i) p[i] = a_[kmax - i];
  return Split{mx, my, UniPoly(std::move(p))};
}

BinaryForm BinaryForm::join(const Split& s) {
  int e = s.p.degree();
  int d = s.mx + s.my + e;
  std::vector<Rat> a(d + 1, Rat(0));
  for (int i = 0; i <= e; ++i) {
    // core term x^i y^(e-i); total x-power i + mx, y-power e - i + my.
    int k = (e - i) + s.my;  // y-power index in a
    a[k] = s.p.coeff(i);
  }
  return BinaryForm(d, std::move(a));
}

UniPoly BinaryForm::dehom_y() const {
  std::vector<Rat> c(d_ + 1, Rat(0));
  for (int k = 0; k <= d_; ++k) c[d_ - k] = a_[k];
  return UniPoly(std::move(c));
}

UniPoly BinaryForm::dehom_x() const { return UniPoly(a_); }

std::string BinaryForm::to_string() const { return to_bipoly().to_string(); }

BinaryForm FormFactorization::product() const {
  BinaryForm r = BinaryForm::constant(unit);
  for (const auto& fac : factors)
    for (int i = 0; i < fac.mult; ++i) r = r * fac.f;
  return r;
}

namespace {

// Homogenize a degree-m unipoly factor: sum f_i x^i y^(m-i).
BinaryForm homogenize(const UniPoly& f) {
  int m = f.degree();
  std::vector<Rat> a(m + 1, Rat(0));
  for (int i = 0; i <= m; ++i) a[m - i] = f.coeff(i);
  return BinaryForm(m, std::move(a));
}

bool form_order(const FormFactor& x, const FormFactor& y) {
  if (x.f.degree() != y.f.degree()) return x.f.degree() < y.f.degree();
  for (int k = 0; k <= x.f.degree(); ++k)
    if (x.f.coeff(k) != y.f.coeff(k)) return x.f.coeff(k) < y.f.coeff(k);
  return false;
}

bool has_real_root(const BinaryForm& f) {
  // Irreducible factor: x, y, or a core factor; x and y always vanish somewhere.
  auto s = f.split();
  if (s.mx > 0 || s.my > 0) return true;
  if (s.p.degree() == 0) return false;
  if (s.p.degree() & 1) return true;
  return count_real_roots(s.p) > 0;
}

}  // namespace

FormFactorization factor_form(const BinaryForm& G) {
  if (G.is_zero()) throw std::domain_error("factor_form: zero form");
  FormFactorization out;
  if (G.degree() == 0) {
    out.unit = G.coeff(0);
    return out;
  }
  auto s = G.split();
  UniFactorization uf = uni_factor(s.p);
  out.unit = uf.unit;
  if (s.mx > 0) out.factors.push_back({BinaryForm(1, {Rat(1), Rat(0)}), s.mx});
  if (s.my > 0) out.factors.push_back({BinaryForm(1, {Rat(0), Rat(1)}), s.my});
  for (const auto& fac : uf.factors) {
    if (fac.f.degree() == 0) continue;
    if (fac.f.coeff(0) == 0)
      throw std::logic_error("factor_form: core had a monomial factor");
    out.factors.push_back({homogenize(fac.f), fac.mult});
  }
  std::sort(out.factors.begin(), out.factors.end(), form_order);
  return out;
}

DefinitenessReport definiteness(const BinaryForm& G) {
  if (G.is_zero() || (G.degree() & 1))
    throw std::domain_error("definiteness: need a nonzero even-degree form");
  auto fac = factor_form(G);
  bool any_real = false, any_odd_real = false;
  for (const auto& [f, m] : fac.factors) {
    if (!has_real_root(f)) continue;
    any_real = true;
    if (m & 1) any_odd_real = true;
  }
  int u = sign(fac.unit);

  DefinitenessReport rep;
  if (any_odd_real) {
    rep.kind = Definiteness::Indefinite;
  } else if (any_real) {
    rep.kind = u > 0 ? Definiteness::PositiveSemidefinite : Definiteness::NegativeSemidefinite;
  } else {
    rep.kind = u > 0 ? Definiteness::PositiveDefinite : Definiteness::NegativeDefinite;
  }

  // Integer zero witness: rational zero directions come only from linear factors.
  if (any_real) {
    for (const auto& [f, m] : fac.factors) {
      if (f.degree() != 1) continue;
      Int zx = -num(f.coeff(1)), zy = num(f.coeff(0));
      if (zx < 0 || (zx == 0 && zy < 0)) {
        zx = -zx;
        zy = -zy;
      }
      rep.zero_point = std::make_pair(zx, zy);
      break;
    }
  }

  // Negative integer witness for forms that take negative values.
  if (rep.kind == Definiteness::Indefinite || rep.kind == Definiteness::NegativeDefinite ||
      rep.kind == Definiteness::NegativeSemidefinite) {
    if (sign(G.coeff(G.degree())) < 0) {
      rep.negative_point = std::make_pair(Int(0), Int(1));
    } else {
      auto t = find_negative_point(G.dehom_y());
      if (!t) throw std::logic_error("definiteness: missing negative witness");
      rep.negative_point = std::make_pair(num(*t), den(*t));
    }
  }
  return rep;
}

std::pair<BinaryForm, BinaryForm> split_psd(const BinaryForm& G) {
  auto fac = factor_form(G);
  BinaryForm ftilde = BinaryForm::constant(1);
  for (const auto& [f, m] : fac.factors) {
    if (!has_real_root(f)) continue;
    if (m & 1) throw std::domain_error("split_psd: input not PSD");
    ftilde = ftilde * f.pow(m);
  }
  BinaryForm p0 = divide_form(G, ftilde);
  return {p0, ftilde};
}

bool divides_form(const BinaryForm& h, const BinaryForm& g) {
  if (h.is_zero()) return g.is_zero();
  if (g.is_zero()) return true;
  if (h.degree() > g.degree()) return false;
  auto sh = h.split(), sg = g.split();
  return sh.mx <= sg.mx && sh.my <= sg.my && sg.p.divisible_by(sh.p);
}

BinaryForm divide_form(const BinaryForm& g, const BinaryForm& h) {
  auto sh = h.split(), sg = g.split();
  if (sh.mx > sg.mx || sh.my > sg.my)
    throw std::domain_error("divide_form: inexact monomial part");
  BinaryForm::Split q{sg.mx - sh.mx, sg.my - sh.my, sg.p.divexact(sh.p)};
  return BinaryForm::join(q);
}

int multiplicity_in(const BinaryForm& h, const BinaryForm& g) {
  if (h.degree() == 0) throw std::domain_error("multiplicity_in: constant divisor");
  if (g.is_zero()) throw std::domain_error("multiplicity_in: zero form");
  int m = 0;
  BinaryForm cur = g;
  while (divides_form(h, cur) && cur.degree() >= h.degree()) {
    cur = divide_form(cur, h);
    ++m;
  }
  return m;
}

BinaryForm form_gcd(const BinaryForm& g1, const BinaryForm& g2) {
  if (g1.is_zero() && g2.is_zero()) return BinaryForm(0, {Rat(0)});
  if (g1.is_zero()) return g2.primitive();
  if (g2.is_zero()) return g1.primitive();
  auto s1 = g1.split(), s2 = g2.split();
  UniPoly pg = UniPoly::gcd(s1.p, s2.p);
  BinaryForm::Split s{std::min(s1.mx, s2.mx), std::min(s1.my, s2.my), pg};
  return BinaryForm::join(s).primitive();
}

std::vector<Direction> real_zero_directions(const BinaryForm& G) {
  std::vector<Direction> out;
  auto fac = factor_form(G);
  for (const auto& [f, m] : fac.factors) {
    if (!has_real_root(f)) continue;
    auto s = f.split();
    if (s.mx == 1 && f.degree() == 1) {
      out.push_back(Direction::make_vertical());  // factor x: zero at (0, 1)
      continue;
    }
    if (s.my == 1 && f.degree() == 1) {
      out.push_back(Direction::make_rational(1, 0));  // factor y
      continue;
    }
    if (f.degree() == 1) {
      // f = f1 x + f0 y vanishes at (-f0, f1).
      out.push_back(Direction::make_rational(-num(f.coeff(1)), num(f.coeff(0))));
      continue;
    }
    if (f.degree() == 2) {
      // Slopes (-f1 -+ sqrt(disc)) / (2 f0) from f2 t^2 + f1 t + f0, t = x/y.
      Int f2 = num(f.coeff(0)), f1 = num(f.coeff(1)), f0 = num(f.coeff(2));
      Int disc = f1 * f1 - 4 * f0 * f2;
      for (int sgn2 : {+1, -1})
        out.push_back(Direction::make_quadratic(QuadIrr::make(-f1, sgn2, 2 * f0, disc)));
      continue;
    }
    throw std::domain_error("real_zero_directions: real-rooted factor of degree > 2");
  }
  return out;
}

int sign_at_direction(const BinaryForm& G, const Direction& dir) {
  if (dir.vertical) return sign(G.coeff(G.degree()));
  if (dir.rational) {
    auto [dx, dy] = dir.primitive_vector();
    return sign(G.eval(Rat(dx), Rat(dy)));
  }
  QuadExt s = dir.qslope->value();
  return G.dehom_x().eval(s).sgn();
}

BinaryForm minimal_form(const Direction& dir) {
  if (dir.vertical) return BinaryForm(1, {Rat(1), Rat(0)});
  if (dir.rational) {
    auto [dx, dy] = dir.primitive_vector();
    return BinaryForm(1, {Rat(dy), Rat(-dx)}).primitive();
  }
  const QuadIrr& s = *dir.qslope;
  // (r s - p)^2 = q^2 D with s = y/x:
  // (p^2 - q^2 D) x^2 - 2 p r x y + r^2 y^2.
  Rat a0 = Rat(s.p * s.p - s.q * s.q * s.D);
  return BinaryForm(2, {a0, Rat(-2 * s.p * s.r), Rat(s.r * s.r)}).primitive();
}

}  // namespace qvs
