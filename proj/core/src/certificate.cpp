// Canonical JSON emission. One fixed key order, arbitrary-precision numbers
// as decimal strings, term lists sorted; two runs over the same report are
// byte-identical.
#include <cstdio>
#include <utility>

#include "json.hpp"
#include "qvs/certificate.hpp"

namespace qvs {

namespace {

using Json = nlohmann::ordered_json;

Json rat_j(const Rat& q) { return rat_to_string(q); }
Json int_j(const Int& n) { return n.get_str(); }

Json poly_j(const BiPoly& p) {
  Json a = Json::array();
  for (const auto& [k, c] : p.terms()) {
    if (c == 0) continue;
    a.push_back(Json::array({k.first, k.second, rat_to_string(c)}));
  }
  return a;
}

Json upoly_j(const UniPoly& p) {
  Json a = Json::array();
  if (p.is_zero()) return a;
  for (int k = 0; k <= p.degree(); ++k) a.push_back(rat_to_string(p.coeff(k)));
  return a;
}

Json form_j(const BinaryForm& f) {
  Json o;
  o["degree"] = f.degree();
  Json cs = Json::array();
  for (int k = 0; k <= f.degree(); ++k) cs.push_back(rat_to_string(f.coeff(k)));
  o["coeffs"] = std::move(cs);
  return o;
}

Json ipair_j(const std::pair<Int, Int>& p) {
  return Json::array({p.first.get_str(), p.second.get_str()});
}

Json dir_j(const Direction& d) {
  Json o;
  o["vertical"] = d.vertical;
  o["rational"] = d.rational;
  if (d.vertical) return o;
  if (d.rational) {
    o["slope"] = rat_j(d.slope);
  } else {
    Json q;
    q["p"] = int_j(d.qslope->p);
    q["q"] = int_j(d.qslope->q);
    q["r"] = int_j(d.qslope->r);
    q["D"] = int_j(d.qslope->D);
    o["qslope"] = std::move(q);
  }
  return o;
}

Json umap_j(const UnimodularMap& m) {
  return Json::array({int_j(m.a), int_j(m.b), int_j(m.c), int_j(m.d)});
}

Json descent_j(const DescentWitness& w) {
  Json o;
  o["family"] = w.family;
  o["target"] = int_j(w.target);
  Json pts = Json::array();
  for (const auto& p : w.points) {
    Json e;
    e["x"] = int_j(p.x);
    e["y"] = int_j(p.y);
    e["value"] = int_j(p.value);
    e["recipe"] = p.recipe;
    pts.push_back(std::move(e));
  }
  o["points"] = std::move(pts);
  return o;
}

Json fit_j(const DensityFit& f) {
  Json o;
  Json cs = Json::array();
  for (const auto& [n, c] : f.counts) cs.push_back(Json::array({int_j(n), int_j(c)}));
  o["counts"] = std::move(cs);
  Json bs = Json::array();
  for (const auto& b : f.boxes) bs.push_back(int_j(b));
  o["boxes"] = std::move(bs);
  o["exhaustive"] = f.exhaustive;
  o["fitted"] = density_class_name(f.fitted);
  o["tie"] = f.tie;
  Json rs = Json::array();
  for (double r : f.residuals) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", r);
    rs.push_back(std::string(buf));
  }
  o["residuals"] = std::move(rs);
  return o;
}

Json sparse_j(const SparseCertificate& s) {
  Json o;
  o["class"] = density_class_name(s.cls);
  o["lambda"] = rat_j(s.lambda);
  o["root_degree"] = s.root_degree;
  o["fit"] = fit_j(s.fit);
  Json secs = Json::array();
  for (const auto& sm : s.sectors) {
    Json e;
    e["direction"] = dir_j(sm.xi);
    e["R"] = sm.R;
    e["c"] = rat_j(sm.c);
    Json cs = Json::array();
    for (const auto& [t, c] : sm.counts)
      cs.push_back(Json::array({int_j(t), int_j(c)}));
    e["counts"] = std::move(cs);
    secs.push_back(std::move(e));
  }
  o["sectors"] = std::move(secs);
  if (s.box) o["box"] = int_j(*s.box);
  if (s.missing) {
    Json m;
    m["value"] = int_j(s.missing->value);
    m["rigorous"] = s.missing->rigorous;
    o["missing"] = std::move(m);
  }
  Json ls = Json::array();
  for (const auto& l : s.lines) {
    Json e;
    e["A"] = int_j(l.A);
    e["B"] = int_j(l.B);
    e["C"] = int_j(l.C);
    e["value"] = int_j(l.value);
    ls.push_back(std::move(e));
  }
  o["lines"] = std::move(ls);
  if (s.lower_bound) o["lower_bound"] = rat_j(*s.lower_bound);
  o["clauses"] = s.clauses;
  return o;
}

Json curve_j(const PlaneCurveReport& r) {
  Json o;
  o["class"] = curve_class_name(r.cls);
  Json comps = Json::array();
  for (const auto& c : r.components) comps.push_back(poly_j(c));
  o["components"] = std::move(comps);
  Json sing = Json::array();
  for (const auto& s : r.singular) {
    Json e;
    e["x"] = rat_j(s.x);
    e["y"] = rat_j(s.y);
    e["w"] = s.w;
    sing.push_back(std::move(e));
  }
  o["singular"] = std::move(sing);
  o["singular_count"] = r.singular_count;
  if (r.param) {
    Json p;
    p["R1"] = upoly_j(r.param->R1);
    p["Q1"] = upoly_j(r.param->Q1);
    p["R2"] = upoly_j(r.param->R2);
    p["Q2"] = upoly_j(r.param->Q2);
    o["param"] = std::move(p);
  }
  o["note"] = r.note;
  return o;
}

Json gap_j(const GapCertificate& g) {
  Json o;
  o["factor_a"] = poly_j(g.factor_a);
  o["factor_b"] = poly_j(g.factor_b);
  o["frame"] = umap_j(g.frame);
  Json ls = Json::array();
  for (const auto& t : g.lines) {
    Json e;
    e["line"] = form_j(t.line);
    e["base"] = ipair_j(t.base);
    e["dir"] = ipair_j(t.dir);
    Json rows = Json::array();
    for (const auto& r : t.rows) rows.push_back(upoly_j(r));
    e["rows"] = std::move(rows);
    ls.push_back(std::move(e));
  }
  o["lines"] = std::move(ls);
  Json fb = Json::array();
  for (const auto& f : g.fibers) {
    Json e;
    e["level"] = int_j(f.level);
    e["curve"] = curve_j(f.curve);
    e["consequence"] = f.consequence;
    fb.push_back(std::move(e));
  }
  o["fibers"] = std::move(fb);
  o["generic_fiber"] = g.generic_fiber;
  o["theory_tags"] = g.theory_tags;
  Json em = Json::array();
  for (const auto& [b, c] : g.empirical)
    em.push_back(Json::array({int_j(b), int_j(c)}));
  o["empirical"] = std::move(em);
  return o;
}

}  // namespace

std::string report_to_json(const Report& rep) {
  Json j;
  j["format"] = "qvs-report-1";
  j["input"] = poly_j(rep.input);
  Json nm;
  nm["scale"] = int_j(rep.norm.scale);
  nm["shift"] = rat_j(rep.norm.shift);
  nm["normalized"] = poly_j(rep.normalized);
  j["normalization"] = std::move(nm);
  j["verdict"] = verdict_name(rep.verdict);
  Json tr = Json::array();
  for (const auto& st : rep.trace) {
    Json e;
    e["node"] = st.node;
    Json data = Json::array();
    for (const auto& [k, v] : st.data) data.push_back(Json::array({k, v}));
    e["data"] = std::move(data);
    tr.push_back(std::move(e));
  }
  j["trace"] = std::move(tr);
  Json cert;
  cert["leaf"] = rep.leaf;
  cert["statement"] = rep.statement;
  if (rep.descent) cert["descent"] = descent_j(*rep.descent);
  if (rep.sparse) cert["sparse"] = sparse_j(*rep.sparse);
  if (rep.composition) {
    Json c;
    Json outer = Json::array();
    for (const auto& q : rep.composition->outer) outer.push_back(rat_j(q));
    c["outer"] = std::move(outer);
    c["inner"] = poly_j(rep.composition->inner);
    cert["composition"] = std::move(c);
  }
  if (rep.gap) cert["gap"] = gap_j(*rep.gap);
  if (rep.completion) {
    Json c;
    c["q1"] = rat_j(rep.completion->q1);
    c["q2"] = rat_j(rep.completion->q2);
    c["q3"] = rat_j(rep.completion->q3);
    c["q2form"] = form_j(rep.completion->q2form);
    cert["completion"] = std::move(c);
  }
  j["certificate"] = std::move(cert);
  j["verified"] = true;
  return j.dump(2) + "\n";
}

VerifyResult verify_report(const Report& rep) {
  return verify_certificate(report_to_json(rep));
}

}  // namespace qvs
