#include "qvs/bipoly.hpp"

#include <algorithm>
#include <cctype>

namespace qvs {

BiPoly BiPoly::constant(const Rat& c) { return monomial(c, 0, 0); }

BiPoly BiPoly::monomial(const Rat& c, int i, int j) {
  BiPoly p;
  if (c != 0) p.t_[{i, j}] = c;
  return p;
}

Rat BiPoly::coeff(int i, int j) const {
  auto it = t_.find({i, j});
  return it == t_.end() ? Rat(0) : it->second;
}

void BiPoly::set_coeff(int i, int j, const Rat& c) {
  if (c == 0)
    t_.erase({i, j});
  else
    t_[{i, j}] = c;
}

void BiPoly::put(int i, int j, const Rat& c) {
  if (c == 0) return;
  auto [it, fresh] = t_.try_emplace({i, j}, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) t_.erase(it);
  }
}

int BiPoly::degree() const {
  int d = -1;
  for (const auto& [k, c] : t_) d = std::max(d, k.first + k.second);
  return d;
}

int BiPoly::degree_x() const {
  int d = -1;
  for (const auto& [k, c] : t_) d = std::max(d, k.first);
  return d;
}

int BiPoly::degree_y() const {
  int d = -1;
  for (const auto& [k, c] : t_) d = std::max(d, k.second);
  return d;
}

BiPoly BiPoly::operator+(const BiPoly& o) const {
  BiPoly r = *this;
  for (const auto& [k, c] : o.t_) r.put(k.first, k.second, c);
  return r;
}

BiPoly BiPoly::operator-(const BiPoly& o) const { return *this + (-o); }

BiPoly BiPoly::operator-() const {
  BiPoly r = *this;
  for (auto& [k, c] : r.t_) c = -c;
  return r;
}

BiPoly BiPoly::operator*(const BiPoly& o) const {
  BiPoly r;
  for (const auto& [k1, c1] : t_)
    for (const auto& [k2, c2] : o.t_)
      r.put(k1.first + k2.first, k1.second + k2.second, c1 * c2);
  return r;
}

BiPoly BiPoly::operator*(const Rat& s) const {
  BiPoly r;
  if (s == 0) return r;
  r = *this;
  for (auto& [k, c] : r.t_) c *= s;
  return r;
}

BiPoly BiPoly::pow(unsigned e) const {
  BiPoly r = constant(1);
  BiPoly b = *this;
  while (e) {
    if (e & 1) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}

Rat BiPoly::eval(const Rat& x, const Rat& y) const {
  // Horner over y-grouped coefficients.
  Rat acc = 0;
  auto rows = by_powers_of_y();
  for (auto it = rows.rbegin(); it != rows.rend(); ++it) acc = acc * y + it->eval(x);
  return acc;
}

Int BiPoly::eval_int(const Int& x, const Int& y) const {
  Rat v = eval(Rat(x), Rat(y));
  if (!is_integer(v)) throw std::domain_error("eval_int: non-integral value");
  return num(v);
}

BiPoly BiPoly::homogeneous_part(int d) const {
  BiPoly r;
  for (const auto& [k, c] : t_)
    if (k.first + k.second == d) r.t_[k] = c;
  return r;
}

bool BiPoly::is_homogeneous() const {
  if (t_.empty()) return true;
  int d = degree();
  return homogeneous_part(d) == *this;
}

bool BiPoly::is_integral() const {
  return std::all_of(t_.begin(), t_.end(),
                     [](const auto& kv) { return is_integer(kv.second); });
}

Rat BiPoly::content() const {
  if (t_.empty()) throw std::domain_error("BiPoly::content: zero polynomial");
  Int g = 0, l = 1;
  for (const auto& [k, c] : t_) {
    g = gcd_int(g, num(c));
    l = lcm_int(l, den(c));
  }
  return Rat(g) / Rat(l);
}

BiPoly BiPoly::swap_xy() const {
  BiPoly r;
  for (const auto& [k, c] : t_) r.t_[{k.second, k.first}] = c;
  return r;
}

BiPoly BiPoly::shift(const Rat& a, const Rat& b) const {
  return subs_linear(1, 0, a, 0, 1, b);
}

BiPoly BiPoly::subs_linear(const Rat& a, const Rat& b, const Rat& e, const Rat& c,
                           const Rat& d, const Rat& f) const {
  BiPoly X = monomial(a, 1, 0) + monomial(b, 0, 1) + constant(e);
  BiPoly Y = monomial(c, 1, 0) + monomial(d, 0, 1) + constant(f);
  int dx = degree_x(), dy = degree_y();
  std::vector<BiPoly> xp(std::max(dx, 0) + 1), yp(std::max(dy, 0) + 1);
  xp[0] = constant(1);
  for (int i = 1; i <= dx; ++i) xp[i] = xp[i - 1] * X;
  yp[0] = constant(1);
  for (int j = 1; j <= dy; ++j) yp[j] = yp[j - 1] * Y;
  BiPoly r;
  for (const auto& [k, co] : t_) r = r + xp[k.first] * yp[k.second] * co;
  return r;
}

UniPoly BiPoly::restrict_line(const Rat& x0, const Rat& y0, const Int& dx,
                              const Int& dy) const {
  std::vector<UniPoly> xp(std::max(degree_x(), 0) + 1), yp(std::max(degree_y(), 0) + 1);
  UniPoly lx({x0, Rat(dx)}), ly({y0, Rat(dy)});
  xp[0] = UniPoly::constant(1);
  for (size_t i = 1; i < xp.size(); ++i) xp[i] = xp[i - 1] * lx;
  yp[0] = UniPoly::constant(1);
  for (size_t j = 1; j < yp.size(); ++j) yp[j] = yp[j - 1] * ly;
  UniPoly r;
  for (const auto& [k, c] : t_) r = r + xp[k.first] * yp[k.second] * c;
  return r;
}

std::vector<UniPoly> BiPoly::by_powers_of_y() const {
  std::vector<std::vector<Rat>> rows(std::max(degree_y(), 0) + 1);
  for (const auto& [k, c] : t_) {
    auto& row = rows[k.second];
    if (static_cast<int>(row.size()) <= k.first) row.resize(k.first + 1, Rat(0));
    row[k.first] = c;
  }
  std::vector<UniPoly> out;
  out.reserve(rows.size());
  for (auto& row : rows) out.emplace_back(std::move(row));
  return out;
}

std::vector<UniPoly> BiPoly::by_powers_of_x() const { return swap_xy().by_powers_of_y(); }

BiPoly BiPoly::from_powers_of_y(const std::vector<UniPoly>& coeffs) {
  BiPoly r;
  for (size_t j = 0; j < coeffs.size(); ++j)
    for (int i = 0; i <= coeffs[j].degree(); ++i)
      r.put(i, static_cast<int>(j), coeffs[j].coeff(i));
  return r;
}

std::string BiPoly::to_string() const {
  if (t_.empty()) return "0";
  // Order terms by total degree descending, then x-degree descending.
  std::vector<std::pair<Key, Rat>> v(t_.begin(), t_.end());
  std::sort(v.begin(), v.end(), [](const auto& p, const auto& q) {
    int dp = p.first.first + p.first.second, dq = q.first.first + q.first.second;
    if (dp != dq) return dp > dq;
    return p.first.first > q.first.first;
  });
  std::string out;
  for (const auto& [k, c] : v) {
    if (!out.empty()) out += sign(c) > 0 ? " + " : " - ";
    else if (sign(c) < 0) out += "-";
    Rat ac = abs(c);
    bool coeff_shown = (ac != 1) || (k.first == 0 && k.second == 0);
    if (coeff_shown) out += rat_to_string(ac);
    auto app = [&](const char* v_, int e) {
      if (e == 0) return;
      out += v_;
      if (e > 1) out += "^" + std::to_string(e);
    };
    if (coeff_shown && (k.first || k.second)) out += "*";
    app("x", k.first);
    if (k.first && k.second) out += "*";
    app("y", k.second);
  }
  return out;
}

UnimodularMap UnimodularMap::inverse() const {
  Int e = det();
  if (e != 1 && e != -1) throw std::domain_error("UnimodularMap: det not +-1");
  return UnimodularMap{e * d, e * -b, e * -c, e * a};
}

std::pair<Int, Int> UnimodularMap::apply(const Int& x, const Int& y) const {
  return {a * x + b * y, c * x + d * y};
}

std::pair<Int, Int> UnimodularMap::apply_inverse(const Int& x, const Int& y) const {
  UnimodularMap inv = inverse();
  return inv.apply(x, y);
}

BiPoly apply_unimodular(const BiPoly& F, const UnimodularMap& A) {
  UnimodularMap inv = A.inverse();
  return F.subs_linear(Rat(inv.a), Rat(inv.b), 0, Rat(inv.c), Rat(inv.d), 0);
}

UnimodularMap unimodular_from_linear(const Int& a_in, const Int& b_in) {
  if (a_in == 0 && b_in == 0)
    throw std::invalid_argument("unimodular_from_linear: zero form");
  Int g = gcd_int(a_in, b_in);
  Int a = a_in / g, b = b_in / g;
  Int s, t, gg;
  mpz_gcdext(gg.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  // a*s + b*t = 1; rows (a, b) and (-t, s) give det = a*s + b*t = 1.
  Int c = -t, d = s;
  if (a != 0) {
    // Canonical representative: 0 <= c < |a|.
    Int k = floor_div(c, abs(a));
    if (a > 0) {
      c -= k * a;
      d -= k * b;
    } else {
      c += k * a;
      d += k * b;
    }
  } else if (d != 0) {
    // a == 0, b = +-1, c = -b fixed; canonicalize d to 0.
    Int k = d * b;  // d = k*b since b = +-1
    c -= 0;
    d -= k * b;
  }
  UnimodularMap A{a, b, c, d};
  if (A.det() != 1) throw std::logic_error("unimodular_from_linear: det != 1");
  return A;
}

namespace {

class Parser {
 public:
  explicit Parser(const std::string& s) : s_(s) {}

  BiPoly parse() {
    BiPoly e = expr();
    skip_ws();
    if (pos_ != s_.size()) throw ParseError("unexpected trailing input", pos_);
    return e;
  }

 private:
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  BiPoly expr() {
    bool neg = false;
    // Leading sign(s).
    for (;;) {
      if (eat('+')) continue;
      if (eat('-')) {
        neg = !neg;
        continue;
      }
      break;
    }
    BiPoly acc = term();
    if (neg) acc = -acc;
    for (;;) {
      if (eat('+')) {
        acc = acc + term();
      } else if (eat('-')) {
        acc = acc - term();
      } else {
        break;
      }
    }
    return acc;
  }

  BiPoly term() {
    BiPoly acc = power();
    while (eat('*')) acc = acc * power();
    return acc;
  }

  BiPoly power() {
    BiPoly base = atom();
    if (eat('^')) {
      skip_ws();
      size_t at = pos_;
      Int e = integer_literal();
      if (e < 0 || e > 64) throw ParseError("exponent out of range", at);
      base = base.pow(static_cast<unsigned>(e.get_ui()));
    }
    return base;
  }

  BiPoly atom() {
    skip_ws();
    if (pos_ >= s_.size()) throw ParseError("unexpected end of input", pos_);
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      BiPoly e = expr();
      if (!eat(')')) throw ParseError("expected ')'", pos_);
      return e;
    }
    if (c == 'x') {
      ++pos_;
      return BiPoly::var_x();
    }
    if (c == 'y') {
      ++pos_;
      return BiPoly::var_y();
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return BiPoly::constant(rational_literal());
    if (c == '-' || c == '+') {
      // Unary sign directly before an atom (inside a product).
      ++pos_;
      BiPoly a = atom();
      return c == '-' ? -a : a;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", pos_);
  }

  Int integer_literal() {
    skip_ws();
    size_t start = pos_;
    std::string digits;
    if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) digits += s_[pos_++];
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
      digits += s_[pos_++];
    if (digits.empty() || digits == "-" || digits == "+")
      throw ParseError("expected integer", start);
    return Int(digits);
  }

  Rat rational_literal() {
    Int n = integer_literal();
    if (pos_ < s_.size() && s_[pos_] == '/') {
      ++pos_;
      size_t at = pos_;
      Int d = integer_literal();
      if (d <= 0) throw ParseError("denominator must be positive", at);
      Rat q(n, d);
      q.canonicalize();
      return q;
    }
    return Rat(n);
  }

  const std::string& s_;
  size_t pos_ = 0;
};

}  // namespace

BiPoly parse_poly(const std::string& text) { return Parser(text).parse(); }

std::pair<BiPoly, Normalization> normalize(const BiPoly& F) {
  Rat shift = F.coeff(0, 0);
  BiPoly G = F - BiPoly::constant(shift);
  Int scale = 1;
  for (const auto& [k, c] : G.terms()) scale = lcm_int(scale, den(c));
  return {G * Rat(scale), Normalization{scale, shift}};
}

std::string bipoly_brief(const BiPoly& F) { return F.to_string(); }

}  // namespace qvs
