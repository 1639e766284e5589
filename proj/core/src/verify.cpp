// Replays a serialized report against a fresh parse of its own input. Every
// recorded number is re-derived (witness values, line tables, counts,
// identities); the verifier never trusts the report, only re-checks it.
#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "classifier_internal.hpp"
#include "json.hpp"
#include "qvs/certificate.hpp"
#include "qvs/curves.hpp"
#include "qvs/oracle.hpp"

namespace qvs {

namespace {

using Json = nlohmann::json;

struct BadField {
  std::string what;
};

Rat parse_rat(const Json& v) {
  if (!v.is_string()) throw BadField{"rational not a string"};
  try {
    Rat q(v.get<std::string>());
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    throw BadField{"unparsable rational " + v.get<std::string>()};
  }
}

Int parse_int(const Json& v) {
  if (!v.is_string()) throw BadField{"integer not a string"};
  try {
    return Int(v.get<std::string>());
  } catch (const std::invalid_argument&) {
    throw BadField{"unparsable integer " + v.get<std::string>()};
  }
}

BiPoly parse_poly_terms(const Json& v) {
  if (!v.is_array()) throw BadField{"polynomial not a term array"};
  BiPoly p;
  for (const auto& t : v) {
    if (!t.is_array() || t.size() != 3) throw BadField{"malformed term"};
    int i = t[0].get<int>(), j = t[1].get<int>();
    if (i < 0 || j < 0) throw BadField{"negative exponent"};
    p.set_coeff(i, j, parse_rat(t[2]));
  }
  return p;
}

UniPoly parse_upoly(const Json& v) {
  if (!v.is_array()) throw BadField{"row not an array"};
  std::vector<Rat> cs;
  for (const auto& c : v) cs.push_back(parse_rat(c));
  return UniPoly(std::move(cs));
}

BinaryForm parse_form(const Json& v) {
  int d = v.at("degree").get<int>();
  if (d < 0 || d > 8) throw BadField{"form degree out of range"};
  const Json& cj = v.at("coeffs");
  if (!cj.is_array() || static_cast<int>(cj.size()) != d + 1)
    throw BadField{"form coefficient count"};
  std::vector<Rat> cs;
  for (const auto& c : cj) cs.push_back(parse_rat(c));
  return BinaryForm(d, std::move(cs));
}

bool ipair_eq(const Json& v, const std::pair<Int, Int>& p) {
  return v.is_array() && v.size() == 2 && parse_int(v[0]) == p.first &&
         parse_int(v[1]) == p.second;
}

Direction parse_dir(const Json& v) {
  if (v.at("vertical").get<bool>()) return Direction::make_vertical();
  if (v.at("rational").get<bool>()) {
    Rat s = parse_rat(v.at("slope"));
    return Direction::make_rational(den(s), num(s));
  }
  const Json& q = v.at("qslope");
  return Direction::make_quadratic(QuadIrr::make(
      parse_int(q.at("p")), parse_int(q.at("q")), parse_int(q.at("r")),
      parse_int(q.at("D"))));
}

class Checker {
 public:
  VerifyResult run(const std::string& text);

 private:
  VerifyResult res_;
  BiPoly N_;  // re-derived normalized polynomial; all checks evaluate this

  void fail(const std::string& msg) {
    res_.ok = false;
    res_.failures.push_back(msg);
  }
  bool require(bool cond, const std::string& msg) {
    if (!cond) fail(msg);
    return cond;
  }

  void check_trace(const Json& trace, const std::string& leaf,
                   const std::string& verdict);
  void check_descent(const Json& d);
  void check_composition(const Json& c);
  void check_sparse(const Json& s);
  void check_gap(const Json& g);
  void check_completion(const Json& c);
};

const std::map<std::string, std::string>& leaf_verdicts() {
  static const std::map<std::string, std::string> m = {
      {"odd-degree-ray", "UnboundedBelow"},
      {"quadratic-negative-ray", "UnboundedBelow"},
      {"degenerate-direction-linear", "UnboundedBelow"},
      {"degenerate-direction-univariate", "Composition"},
      {"positive-quadratic-completion", "SparseValues"},
      {"negative-direction-ray", "UnboundedBelow"},
      {"positive-definite-growth", "SparseValues"},
      {"unlinked-direction-descent", "UnboundedBelow"},
      {"residual-linear-descent", "UnboundedBelow"},
      {"negative-sector-descent", "UnboundedBelow"},
      {"zero-direction-sparse", "SparseValues"},
      {"slope-imbalance-line", "UnboundedBelow"},
      {"fiber-negative-parabola", "UnboundedBelow"},
      {"fiber-linear-residue", "UnboundedBelow"},
      {"fiber-shift-descent", "UnboundedBelow"},
      {"fiber-bounded-discriminant", "SparseValues"},
      {"fiber-vertical-parabola", "UnboundedBelow"},
      {"fiber-vertical-linear", "UnboundedBelow"},
      {"fiber-square-composition", "Composition"},
      {"fiber-discriminant-descent", "UnboundedBelow"},
      {"fiber-two-square-identity", "SparseValues"},
      {"fiber-quartic-defect-sparse", "SparseValues"},
      {"pair-negative-residual-orbit", "UnboundedBelow"},
      {"pair-positive-residual-sparse", "SparseValues"},
      {"pair-square-composition", "Composition"},
      {"pair-linear-residual-orbit", "UnboundedBelow"},
      {"shared-quartic-composition", "Composition"},
      {"split-orbit-descent", "UnboundedBelow"},
      {"split-level-composition", "Composition"},
      {"split-line-descent", "UnboundedBelow"},
      {"split-divisor-table", "ReducibleGap"},
      {"split-definite-cofactor-sparse", "SparseValues"},
      {"cofactor-line-descent", "UnboundedBelow"},
      {"cofactor-curve-line-descent", "UnboundedBelow"},
      {"cofactor-divisor-curves", "ReducibleGap"},
      {"homogeneous-empirical", "HomogeneousEmpirical"},
  };
  return m;
}

void Checker::check_trace(const Json& trace, const std::string& leaf,
                          const std::string& verdict) {
  std::map<std::string, const TreeNode*> byid;
  for (const auto& n : decision_tree()) byid[n.id] = &n;
  if (!require(trace.is_array() && !trace.empty(), "trace empty")) return;
  std::string prev;
  for (const auto& st : trace) {
    std::string id = st.at("node").get<std::string>();
    auto it = byid.find(id);
    if (!require(it != byid.end(), "trace node not in the decision tree: " + id))
      return;
    if (prev.empty()) {
      require(id == "normalize", "trace does not start at normalize");
    } else if (id != prev) {
      const auto& ch = byid[prev]->children;
      require(std::find(ch.begin(), ch.end(), id) != ch.end(),
              "trace edge " + prev + " -> " + id + " not in the tree");
    }
    prev = id;
  }
  require(prev == leaf, "trace ends at " + prev + ", leaf says " + leaf);
  auto lit = byid.find(leaf);
  if (lit != byid.end())
    require(lit->second->children.empty(), "leaf " + leaf + " is not terminal");
  auto lv = leaf_verdicts().find(leaf);
  if (require(lv != leaf_verdicts().end(), "unknown leaf " + leaf))
    require(lv->second == verdict,
            "leaf " + leaf + " cannot carry verdict " + verdict);
}

void Checker::check_descent(const Json& d) {
  const Json& pts = d.at("points");
  if (!require(pts.is_array() && pts.size() >= 3,
               "descent needs at least three points"))
    return;
  Int target = parse_int(d.at("target"));
  std::optional<Int> last;
  for (const auto& p : pts) {
    Int x = parse_int(p.at("x")), y = parse_int(p.at("y"));
    Int v = parse_int(p.at("value"));
    if (!require(N_.eval_int(x, y) == v,
                 "descent point (" + x.get_str() + "," + y.get_str() +
                     ") does not evaluate to " + v.get_str()))
      return;
    if (last)
      require(v < *last, "descent values not strictly decreasing at " + v.get_str());
    last = v;
  }
  require(*last <= target, "descent does not reach its target");
}

void Checker::check_composition(const Json& c) {
  const Json& oj = c.at("outer");
  if (!require(oj.is_array() && !oj.empty(), "composition without outer")) return;
  std::vector<Rat> outer;
  for (const auto& q : oj) outer.push_back(parse_rat(q));
  BiPoly inner = parse_poly_terms(c.at("inner"));
  require(inner.is_integral(), "composition inner has non-integer coefficients");
  BiPoly acc;
  for (auto it = outer.rbegin(); it != outer.rend(); ++it)
    acc = acc * inner + BiPoly::constant(*it);
  require(acc == N_, "composition identity does not expand to the polynomial");
}

void Checker::check_sparse(const Json& s) {
  const Json& fit = s.at("fit");
  const Json& counts = fit.at("counts");
  const Json& boxes = fit.at("boxes");
  if (require(counts.size() == boxes.size(), "density table shape mismatch")) {
    for (size_t i = 0; i < counts.size(); ++i) {
      Int n = parse_int(counts[i].at(0)), cnt = parse_int(counts[i].at(1));
      Int box = parse_int(boxes[i]);
      if (!require(box >= 1 && box <= 5000 && n >= 1,
                   "density box out of verification range"))
        continue;
      ValueTable vt = enumerate_values(N_, box, n);
      require(vt.count_in(1, n) == cnt,
              "density recount mismatch at N = " + n.get_str() + ": recorded " +
                  cnt.get_str() + ", recomputed " + vt.count_in(1, n).get_str());
    }
  }
  for (const auto& sm : s.at("sectors")) {
    const Json& cs = sm.at("counts");
    if (cs.empty()) continue;
    Direction xi = parse_dir(sm.at("direction"));
    int R = sm.at("R").get<int>();
    Rat c = parse_rat(sm.at("c"));
    Int T = parse_int(cs[0].at(0)), cnt = parse_int(cs[0].at(1));
    require(sector_count(xi, T, R, c) == cnt,
            "sector recount mismatch at T = " + T.get_str());
  }
  for (const auto& lj : s.at("lines")) {
    Int A = parse_int(lj.at("A")), B = parse_int(lj.at("B"));
    Int C = parse_int(lj.at("C")), val = parse_int(lj.at("value"));
    Int g, sa, sb;
    mpz_gcdext(g.get_mpz_t(), sa.get_mpz_t(), sb.get_mpz_t(), A.get_mpz_t(),
               B.get_mpz_t());
    if (!require(g != 0 && C % g == 0, "exceptional line has no lattice points"))
      continue;
    Int f = Int(C / g);
    Int x0 = Int(sa * f), y0 = Int(sb * f);
    Int dx = Int(B / g), dy = Int(-(A / g));
    bool constant = true;
    for (Int z = 0; z <= 4; ++z)
      if (N_.eval_int(Int(x0 + z * dx), Int(y0 + z * dy)) != val) constant = false;
    // Degree <= 4 restriction equal at five points is identically that value.
    require(constant, "restriction to the recorded line is not the constant " +
                          val.get_str());
  }
  if (s.contains("lower_bound")) {
    Rat lb = parse_rat(s.at("lower_bound"));
    bool okgrid = true;
    for (Int x = -32; x <= 32 && okgrid; ++x)
      for (Int y = -32; y <= 32; ++y)
        if (Rat(N_.eval_int(x, y)) < -lb) {
          okgrid = false;
          break;
        }
    require(okgrid, "a grid point violates the recorded lower bound");
  }
  if (s.contains("missing")) {
    Int mv = parse_int(s.at("missing").at("value"));
    bool rigorous = s.at("missing").at("rigorous").get<bool>();
    if (require(mv >= 1, "missing value must be positive")) {
      std::optional<Int> box;
      if (rigorous) {
        box = certified_box(N_, mv);
        if (!require(box.has_value(),
                     "rigorous missing value without a certified box"))
          return;
        if (!require(*box <= 1000, "certified box beyond verification budget"))
          return;
      } else {
        box = 300;
      }
      ValueTable vt = enumerate_values(N_, *box, mv);
      require(!vt.contains(mv),
              "recorded missing value " + mv.get_str() + " is attained");
    }
  }
}

void Checker::check_gap(const Json& g) {
  BiPoly fa = parse_poly_terms(g.at("factor_a"));
  BiPoly fb = parse_poly_terms(g.at("factor_b"));
  require(fa * fb == N_, "gap factors do not multiply to the polynomial");
  const Json& fj = g.at("frame");
  if (!require(fj.is_array() && fj.size() == 4, "frame not a 2x2 matrix")) return;
  UnimodularMap frame{parse_int(fj[0]), parse_int(fj[1]), parse_int(fj[2]),
                      parse_int(fj[3])};
  Int dt = frame.det();
  if (!require(dt == 1 || dt == -1, "frame is not unimodular")) return;
  for (const auto& lj : g.at("lines")) {
    BinaryForm line = parse_form(lj.at("line"));
    LineFamilyTable tab;
    try {
      tab = detail::line_table(N_, line);
    } catch (const std::exception& e) {
      fail(std::string("line table rejected: ") + e.what());
      continue;
    }
    bool base_ok = ipair_eq(lj.at("base"), tab.base) && ipair_eq(lj.at("dir"), tab.dir);
    require(base_ok, "line table frame mismatch for " + line.to_string());
    const Json& rows = lj.at("rows");
    bool rows_ok = rows.size() == tab.rows.size();
    for (size_t i = 0; rows_ok && i < tab.rows.size(); ++i)
      rows_ok = parse_upoly(rows[i]) == tab.rows[i];
    require(rows_ok, "line table rows mismatch for " + line.to_string());
    require(!detail::find_descending_line(tab).has_value(),
            "a recorded line family descends after all");
  }
  BiPoly K = apply_unimodular(fb, frame);
  for (const auto& fbj : g.at("fibers")) {
    Int level = parse_int(fbj.at("level"));
    BiPoly Kw = K - BiPoly::constant(Rat(level));
    if (!require(Kw.degree() == 3, "fiber level curve is not a cubic")) continue;
    PlaneCurveReport pr;
    try {
      pr = cubic_curve_analysis(Kw);
    } catch (const std::exception& e) {
      fail(std::string("fiber curve analysis rejected: ") + e.what());
      continue;
    }
    const Json& cj = fbj.at("curve");
    require(cj.at("class").get<std::string>() == curve_class_name(pr.cls),
            "fiber curve class mismatch at level " + level.get_str());
    require(cj.at("singular_count").get<int>() == pr.singular_count,
            "fiber singular count mismatch at level " + level.get_str());
    const Json& comps = cj.at("components");
    bool comp_ok = comps.size() == pr.components.size();
    for (const auto& rc : comps) {
      if (!comp_ok) break;
      BiPoly c = parse_poly_terms(rc);
      comp_ok = std::find(pr.components.begin(), pr.components.end(), c) !=
                pr.components.end();
    }
    require(comp_ok, "fiber components mismatch at level " + level.get_str());
  }
  for (const auto& em : g.at("empirical")) {
    Int B = parse_int(em.at(0)), cnt = parse_int(em.at(1));
    if (!require(B >= 1 && B <= Int(100000), "empirical range out of budget"))
      continue;
    Int box = Int(4 * (iroot_floor(B, 2) + 1));
    ValueTable vt = enumerate_values(N_, box, B);
    require(vt.count_in(1, B) == cnt,
            "empirical recount mismatch at B = " + B.get_str());
  }
}

void Checker::check_completion(const Json& c) {
  Rat q1 = parse_rat(c.at("q1")), q2 = parse_rat(c.at("q2"));
  Rat q3 = parse_rat(c.at("q3"));
  BinaryForm q2form = parse_form(c.at("q2form"));
  require(!q2form.is_zero(), "completion form is zero");
  if (N_.degree() <= 2) {
    require(q2form == BinaryForm::from_bipoly(N_, 2),
            "completion form differs from the degree-2 part");
    BiPoly shifted = q2form.to_bipoly().shift(q1, q2) + BiPoly::constant(q3);
    require(shifted == N_, "completion identity does not reproduce the polynomial");
    return;
  }
  // Quartic pair leaves center the shared quadratic factor: the shift must
  // absorb the whole cubic part into a square, N = a*(H + ell)^2 + lower.
  BiPoly S = q2form.to_bipoly().shift(q1, q2) + BiPoly::constant(q3) -
             q2form.to_bipoly();
  require(S.degree() <= 1 && S.coeff(0, 0) == 0,
          "completion shift is not a homogeneous linear correction");
  BinaryForm H2 = q2form * q2form;
  BinaryForm F4 = BinaryForm::from_bipoly(N_, 4);
  int k0 = 0;
  while (k0 <= 4 && H2.coeff(k0) == 0) ++k0;
  require(k0 <= 4, "completion square vanishes");
  Rat a = F4.coeff(k0) / H2.coeff(k0);
  require(a > 0, "completion square enters with nonpositive weight");
  require(F4 == H2 * a, "degree-4 part is not a multiple of the completion square");
  BinaryForm ell = BinaryForm::from_bipoly(S, 1);
  require(BinaryForm::from_bipoly(N_, 3) == (q2form * ell) * (2 * a),
          "degree-3 part does not match the completed square");
}

VerifyResult Checker::run(const std::string& text) {
  Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded()) {
    fail("malformed JSON");
    return res_;
  }
  try {
    if (!require(j.at("format").get<std::string>() == "qvs-report-1",
                 "unknown format tag"))
      return res_;
    BiPoly input = parse_poly_terms(j.at("input"));
    auto [N, norm] = normalize(input);
    N_ = N;
    const Json& nj = j.at("normalization");
    require(parse_int(nj.at("scale")) == norm.scale &&
                parse_rat(nj.at("shift")) == norm.shift,
            "normalization constants do not re-derive");
    require(parse_poly_terms(nj.at("normalized")) == N_,
            "normalized polynomial does not re-derive");
    require(N_.degree() >= 1 && N_.degree() <= 4,
            "normalized degree outside 1..4");
    std::string verdict = j.at("verdict").get<std::string>();
    const Json& cert = j.at("certificate");
    std::string leaf = cert.at("leaf").get<std::string>();
    check_trace(j.at("trace"), leaf, verdict);
    require(!cert.at("statement").get<std::string>().empty(), "empty statement");
    if (verdict == "UnboundedBelow")
      require(cert.contains("descent"), "UnboundedBelow without a descent witness");
    if (verdict == "SparseValues")
      require(cert.contains("sparse"), "SparseValues without counting data");
    if (verdict == "Composition")
      require(cert.contains("composition"), "Composition without the identity");
    if (verdict == "ReducibleGap")
      require(cert.contains("gap"), "ReducibleGap without the factor data");
    if (cert.contains("descent")) check_descent(cert.at("descent"));
    if (cert.contains("composition")) check_composition(cert.at("composition"));
    if (cert.contains("sparse")) check_sparse(cert.at("sparse"));
    if (cert.contains("gap")) check_gap(cert.at("gap"));
    if (cert.contains("completion")) check_completion(cert.at("completion"));
    require(j.at("verified").is_boolean(), "verified flag missing");
  } catch (const BadField& b) {
    fail(b.what);
  } catch (const Json::exception& e) {
    fail(std::string("report shape: ") + e.what());
  } catch (const std::exception& e) {
    fail(std::string("exception during verification: ") + e.what());
  }
  return res_;
}

}  // namespace

VerifyResult verify_certificate(const std::string& json_text) {
  return Checker().run(json_text);
}

}  // namespace qvs
