#include "bing/commands.hpp"

#include <fstream>
#include <ostream>

#include "CLI11.hpp"
#include "json.hpp"

#include "bing/certificate.hpp"
#include "bing/errors.hpp"
#include "bing/topology.hpp"

namespace bing {

namespace {

using nlohmann::json;

template <class F>
int guard(std::ostream& err, F&& f) {
  try {
    return f();
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return 2;
  } catch (const VerifyError& e) {
    err << "verification failure: " << e.what() << "\n";
    return 3;
  } catch (const CapError& e) {
    err << "resource cap: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

std::vector<std::pair<Point, Point>> read_pairs(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw InputError(std::string("pairs file does not parse: ") + e.what());
  }
  if (!doc.is_array()) throw InputError("pairs file must be a JSON list");
  std::vector<std::pair<Point, Point>> out;
  try {
    for (const auto& p : doc)
      out.emplace_back(parse_point(p.at("from").get<std::string>()),
                       parse_point(p.at("to").get<std::string>()));
  } catch (const json::exception& e) {
    throw InputError(std::string("pairs entries need from/to points: ") + e.what());
  }
  return out;
}

std::string qf3_text(const QF3& v) {
  if (v.r1 == 0) return format_rat(v.r0);
  std::string s = format_rat(v.r1) + "*sqrt3";
  if (v.r0 != 0) s = format_rat(v.r0) + (v.r1 > 0 ? "+" : "") + s;
  return s;
}

json example1_json(const std::vector<std::string>& eps_list, long long k) {
  if (k < 1) throw InputError("example1 needs --k >= 1");
  json doc;
  doc["name"] = "example1";
  json pts = json::array();
  pts.push_back(format_point(Point(Rat(0), Rat(0))));
  for (long long i = 1; i <= k; ++i)
    pts.push_back(format_point(example1_member(static_cast<unsigned long>(i))));
  doc["points"] = pts;
  std::vector<std::string> eps = eps_list;
  if (eps.empty()) {
    Rat e(1);
    for (int t = 0; t <= 10; ++t, e /= 2) eps.push_back(format_rat(e));
  }
  json audit = json::array();
  BasicNbhd origin_probe(Point(Rat(0), Rat(0)), Rat(1));
  for (const std::string& etext : eps) {
    Rat ev = parse_rat(etext);
    Int bigk = example1_audit(ev);
    if (!bigk.fits_ulong_p()) throw InputError("tail index overflows for eps " + etext);
    unsigned long ku = bigk.get_ui();
    BasicNbhd nb(Point(Rat(0), Rat(0)), ev);
    bool member = nbhd_closure_contains(nb, example1_member(ku));
    bool escape = ku < 2 || !nbhd_closure_contains(nb, example1_member(ku - 1));
    audit.push_back(json{{"K", bigk.get_str()},
                         {"eps", format_rat(ev)},
                         {"escape_below_K", escape},
                         {"member_at_K", member}});
  }
  doc["audit"] = audit;
  doc["note"] =
      "the closure of every neighborhood of the origin absorbs the whole tail of the family, "
      "so the family together with the origin is not theta-discrete";
  return doc;
}

json example2_json(const std::vector<std::string>& eps_list, long long k) {
  if (k < 0) throw InputError("example2 needs --k >= 0");
  json doc;
  doc["name"] = "example2";
  std::vector<Point> pts = example2_window(-k, k);
  json arr = json::array();
  for (const Point& p : pts) arr.push_back(format_point(p));
  doc["points"] = arr;
  ThetaWitness w = theta_discrete_finite(pts);
  doc["theta_discrete"] = w.theta_discrete;
  if (w.min_gap) doc["min_gap"] = qf3_text(*w.min_gap);
  if (w.separation_radius) doc["separation_radius"] = format_rat(*w.separation_radius);
  std::vector<std::string> eps = eps_list.empty() ? std::vector<std::string>{"1/3"} : eps_list;
  json sep = json::array();
  for (const std::string& etext : eps) {
    Rat ev = parse_rat(etext);
    sep.push_back(json{{"eps", format_rat(ev)}, {"holds", separation_holds(pts, ev)}});
  }
  doc["separation"] = sep;
  doc["note"] =
      "theta-discreteness survives every homeomorphism of the half plane, so no such map can "
      "send this window onto a family that accumulates at one of its own points";
  return doc;
}

}  // namespace

int cmd_extend(const std::string& pairs_path, int stages, const std::string& out_path,
               std::ostream& out, std::ostream& err) {
  return guard(err, [&] {
    if (stages < 0) throw InputError("stage count must be >= 0");
    Engine e(read_pairs(pairs_path));
    e.extend_to(stages);
    save_certificate(e, out_path);
    out << "wrote " << out_path << " (" << stages << " stages, " << e.current().a.size()
        << " points enrolled)\n";
    return 0;
  });
}

int cmd_eval(const std::string& cert_path, const std::string& point_text, int max_stages,
             std::ostream& out, std::ostream& err) {
  return guard(err, [&] {
    Engine e = replay_certificate(load_certificate(cert_path));
    Point z = parse_point(point_text);
    out << format_point(e.evaluate(z, max_stages)) << "\n";
    return 0;
  });
}

int cmd_verify(const std::string& cert_path, std::ostream& out, std::ostream& err) {
  return guard(err, [&] {
    LoadedCertificate c = load_certificate(cert_path);
    Engine e = replay_certificate(c);
    for (int n = 0; n <= e.depth(); ++n) out << e.verify(n).summary() << "\n";
    out << "replay: byte-identical\n";
    return 0;
  });
}

int cmd_example(const std::string& name, const std::vector<std::string>& eps_list, long long k,
                std::ostream& out, std::ostream& err) {
  return guard(err, [&] {
    json doc;
    if (name == "example1") {
      doc = example1_json(eps_list, k < 0 ? 10 : k);
    } else if (name == "example2") {
      doc = example2_json(eps_list, k < 0 ? 5 : k);
    } else {
      throw InputError("unknown example '" + name + "' (want example1 or example2)");
    }
    out << doc.dump(2) << "\n";
    return 0;
  });
}

int cmd_audit(const std::string& cert_path, const std::string& point_text,
              const std::string& eps_text, long long height, int max_stages, std::ostream& out,
              std::ostream& err) {
  return guard(err, [&] {
    if (height < 1) throw InputError("sample height must be >= 1");
    Engine e = replay_certificate(load_certificate(cert_path));
    Point z = parse_point(point_text);
    Rat eps = parse_rat(eps_text);
    ContinuityReport rep = continuity_audit(e, z, eps, height, max_stages);
    json doc;
    doc["point"] = format_point(z);
    doc["eps"] = format_rat(eps);
    doc["delta"] = format_rat(rep.delta);
    doc["stage"] = rep.stage;
    doc["samples_checked"] = rep.samples_checked;
    doc["samples_skipped"] = rep.samples_skipped;
    doc["pass"] = rep.pass();
    if (rep.counterexample) {
      doc["counterexample"] = json{{"sample", format_point(rep.counterexample->first)},
                                   {"image", format_point(rep.counterexample->second)}};
    }
    out << doc.dump(2) << "\n";
    return rep.pass() ? 0 : 3;
  });
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"exact half-plane bijection extension toolkit"};
  app.require_subcommand(1);

  std::string pairs_path, out_path;
  int stages = 0;
  auto* ext = app.add_subcommand("extend", "run stages from a seed and write a certificate");
  ext->add_option("--pairs", pairs_path, "JSON list of {from, to} points")->required();
  ext->add_option("--stages", stages, "how many stages to build")->required();
  ext->add_option("--out", out_path, "certificate output path")->required();

  std::string eval_cert, eval_point;
  int eval_cap = 256;
  auto* ev = app.add_subcommand("eval", "evaluate the extended map at a point");
  ev->add_option("--cert", eval_cert, "certificate path")->required();
  ev->add_option("--point", eval_point, "point as \"x;y\"")->required();
  ev->add_option("--max-stages", eval_cap, "extension cap past the certificate");

  std::string ver_path;
  auto* ver = app.add_subcommand("verify", "replay a certificate and re-check every stage");
  ver->add_option("file", ver_path, "certificate path")->required();

  std::string ex_name;
  std::vector<std::string> ex_eps;
  long long ex_k = -1;
  auto* exm = app.add_subcommand("example", "emit a worked point family with its audit");
  exm->add_option("name", ex_name, "example1 or example2")->required();
  exm->add_option("--eps", ex_eps, "radii to audit, as rationals");
  exm->add_option("--k", ex_k, "family size (example1) or window half width (example2)");

  std::string aud_cert, aud_point, aud_eps;
  long long aud_height = 8;
  int aud_cap = 256;
  auto* aud = app.add_subcommand("audit", "derive a modulus at a point and try to falsify it");
  aud->add_option("--cert", aud_cert, "certificate path")->required();
  aud->add_option("--point", aud_point, "point as \"x;y\"")->required();
  aud->add_option("--eps", aud_eps, "target radius, as a rational")->required();
  aud->add_option("--height", aud_height, "sample height bound");
  aud->add_option("--max-stages", aud_cap, "stage cap for sampled evaluations");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 2;
  }

  if (ext->parsed()) return cmd_extend(pairs_path, stages, out_path, out, err);
  if (ev->parsed()) return cmd_eval(eval_cert, eval_point, eval_cap, out, err);
  if (ver->parsed()) return cmd_verify(ver_path, out, err);
  if (exm->parsed()) return cmd_example(ex_name, ex_eps, ex_k, out, err);
  if (aud->parsed()) return cmd_audit(aud_cert, aud_point, aud_eps, aud_height, aud_cap, out, err);
  err << "no command\n";
  return 2;
}

}  // namespace bing
