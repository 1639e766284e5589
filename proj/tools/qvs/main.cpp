// Command-line front end. Subcommands: analyze, witness, oracle, density,
// verify. Exit codes: 0 success (reports are self-verified before printing),
// 2 input parse error, 3 unsupported degree, 4 internal inconsistency or a
// failed verification.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qvs/certificate.hpp"
#include "qvs/oracle.hpp"

namespace {

int write_json(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::fputs(text.c_str(), stdout);
    return 0;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::fprintf(stderr, "cannot open %s for writing\n", path.c_str());
    return 4;
  }
  out << text;
  return 0;
}

/// Serializes, re-checks, optionally writes; nonzero exit on any failure.
int finish_report(const qvs::Report& rep, const std::string& json_path) {
  std::string text = qvs::report_to_json(rep);
  qvs::VerifyResult vr = qvs::verify_certificate(text);
  if (!vr.ok) {
    std::fprintf(stderr, "self-verification failed:\n");
    for (const auto& f : vr.failures)
      std::fprintf(stderr, "  %s\n", f.c_str());
    return 4;
  }
  if (!json_path.empty()) return write_json(json_path, text);
  return 0;
}

void print_summary(const qvs::Report& rep) {
  std::printf("verdict: %s\n", qvs::verdict_name(rep.verdict));
  std::printf("leaf: %s\n", rep.leaf.c_str());
  std::printf("route:");
  for (const auto& st : rep.trace) std::printf(" %s", st.node.c_str());
  std::printf("\n");
  if (rep.descent) {
    const auto& p = rep.descent->points.back();
    std::printf("descent: %zu points, last N(%s,%s) = %s\n",
                rep.descent->points.size(), p.x.get_str().c_str(),
                p.y.get_str().c_str(), p.value.get_str().c_str());
  }
  if (rep.composition) {
    std::printf("composition: outer degree %d, inner %s\n",
                static_cast<int>(rep.composition->outer.size()) - 1,
                qvs::bipoly_brief(rep.composition->inner).c_str());
  }
  if (rep.sparse && !rep.sparse->fit.counts.empty()) {
    std::printf("density:");
    for (const auto& [n, c] : rep.sparse->fit.counts)
      std::printf(" [1,%s]:%s", n.get_str().c_str(), c.get_str().c_str());
    std::printf(" (class %s)\n", qvs::density_class_name(rep.sparse->cls));
  }
  if (rep.gap)
    std::printf("factors: (%s) * (%s)\n", qvs::bipoly_brief(rep.gap->factor_a).c_str(),
                qvs::bipoly_brief(rep.gap->factor_b).c_str());
  std::printf("%s\n", rep.statement.c_str());
}

qvs::Int parse_big(const std::string& s) { return qvs::Int(s); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"value-set analysis for bivariate polynomials of degree <= 4"};
  app.require_subcommand(1);

  std::string poly_text, json_path, target_str = "-1000000", file_path;
  std::string box_str = "64", range_str = "1000";
  std::vector<std::string> n_list;
  bool with_witnesses = false;

  auto* a_cmd = app.add_subcommand("analyze", "classify and certify a polynomial");
  a_cmd->add_option("poly", poly_text, "polynomial in x, y")->required();
  a_cmd->add_option("--json", json_path, "write the canonical report (- for stdout)");

  auto* w_cmd = app.add_subcommand("witness", "descend below a target value");
  w_cmd->add_option("poly", poly_text, "polynomial in x, y")->required();
  w_cmd->add_option("--below", target_str, "target value (default -1000000)");
  w_cmd->add_option("--json", json_path, "write the canonical report (- for stdout)");

  auto* o_cmd = app.add_subcommand("oracle", "enumerate attained values exactly");
  o_cmd->add_option("poly", poly_text, "polynomial in x, y")->required();
  o_cmd->add_option("--box", box_str, "max(|x|,|y|) bound (default 64)");
  o_cmd->add_option("--range", range_str, "keep values with |v| <= range");
  o_cmd->add_flag("--witnesses", with_witnesses, "print an attaining point per value");

  auto* d_cmd = app.add_subcommand("density", "count values in [1, N] per N");
  d_cmd->add_option("poly", poly_text, "polynomial in x, y")->required();
  d_cmd->add_option("--N", n_list, "range endpoints (repeatable)");

  auto* v_cmd = app.add_subcommand("verify", "re-check a serialized report");
  v_cmd->add_option("file", file_path, "report JSON (- for stdin)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? 0 : 2;
  }

  try {
    if (a_cmd->parsed() || w_cmd->parsed()) {
      qvs::BiPoly F = qvs::parse_poly(poly_text);
      qvs::AnalyzeOptions opt;
      if (w_cmd->parsed()) opt.witness_target = parse_big(target_str);
      qvs::Report rep = qvs::analyze(F, opt);
      if (w_cmd->parsed()) {
        if (rep.verdict != qvs::Verdict::UnboundedBelow) {
          std::printf("verdict: %s (not unbounded below; no descent witness)\n",
                      qvs::verdict_name(rep.verdict));
        } else {
          std::printf("family: %s\n", rep.descent->family.c_str());
          for (const auto& p : rep.descent->points)
            std::printf("N(%s, %s) = %s   [%s]\n", p.x.get_str().c_str(),
                        p.y.get_str().c_str(), p.value.get_str().c_str(),
                        p.recipe.c_str());
        }
      } else {
        print_summary(rep);
      }
      return finish_report(rep, json_path);
    }
    if (o_cmd->parsed()) {
      qvs::BiPoly F = qvs::parse_poly(poly_text);
      auto [N, norm] = qvs::normalize(F);
      qvs::ValueTable vt = qvs::enumerate_values(N, parse_big(box_str),
                                                 parse_big(range_str), with_witnesses);
      if (norm.scale != 1 || norm.shift != 0)
        std::printf("# values of %s*(F - %s)\n", norm.scale.get_str().c_str(),
                    qvs::rat_to_string(norm.shift).c_str());
      std::printf("# box=%s range=%s exhaustive=%d count=%zu\n",
                  vt.box.get_str().c_str(), vt.range.get_str().c_str(),
                  int(vt.exhaustive), vt.values.size());
      for (size_t i = 0; i < vt.values.size(); ++i) {
        if (with_witnesses)
          std::printf("%s (%s,%s)\n", vt.values[i].get_str().c_str(),
                      vt.witnesses[i].first.get_str().c_str(),
                      vt.witnesses[i].second.get_str().c_str());
        else
          std::printf("%s\n", vt.values[i].get_str().c_str());
      }
      return 0;
    }
    if (d_cmd->parsed()) {
      qvs::BiPoly F = qvs::parse_poly(poly_text);
      auto [N, norm] = qvs::normalize(F);
      std::vector<qvs::Int> Ns;
      for (const auto& s : n_list) Ns.push_back(parse_big(s));
      if (Ns.empty()) Ns = {qvs::Int(1000), qvs::Int(10000), qvs::Int(100000)};
      qvs::DensityFit fit = qvs::density_table(N, Ns);
      std::fputs(qvs::density_csv(fit).c_str(), stdout);
      std::printf("# fitted=%s\n", qvs::density_class_name(fit.fitted));
      return 0;
    }
    // verify
    std::string text;
    if (file_path == "-") {
      std::ostringstream ss;
      ss << std::cin.rdbuf();
      text = ss.str();
    } else {
      std::ifstream in(file_path, std::ios::binary);
      if (!in) {
        std::fprintf(stderr, "cannot read %s\n", file_path.c_str());
        return 2;
      }
      std::ostringstream ss;
      ss << in.rdbuf();
      text = ss.str();
    }
    qvs::VerifyResult vr = qvs::verify_certificate(text);
    if (vr.ok) {
      std::printf("verified\n");
      return 0;
    }
    std::printf("verification failed:\n");
    for (const auto& f : vr.failures) std::printf("  %s\n", f.c_str());
    return 4;
  } catch (const qvs::ParseError& e) {
    std::fprintf(stderr, "parse error at position %zu: %s\n", e.pos, e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "bad numeric argument: %s\n", e.what());
    return 2;
  } catch (const qvs::UnsupportedDegree& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return 3;
  } catch (const qvs::InternalInconsistency& e) {
    std::fprintf(stderr, "internal inconsistency: %s\n", e.what());
    return 4;
  }
}
