#include "bing/certificate.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "bing/errors.hpp"

namespace bing {

namespace {

using nlohmann::json;

std::string hex_digest(std::uint64_t h) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv1a:%016llx", static_cast<unsigned long long>(h));
  return buf;
}

json cell_json(const Cell& c) {
  json parts = json::array();
  for (const CutIv& p : c.parts) parts.push_back(json::array({format_rat(p.lo), format_rat(p.hi)}));
  return json{{"id", c.id}, {"parts", parts}};
}

json config_json(const RunConfig& c) {
  return json{
      {"exact_node_budget", c.search.exact_node_budget},
      {"exact_stage_limit", c.exact_stage_limit},
      {"mesh_schedule", "2^-n"},
      {"stream_round_budget", c.search.stream_round_budget},
      {"verify_each_step", c.verify_each_step},
  };
}

json stage_json(const Engine& e, int n) {
  const Stage& s = e.stage(n);
  json rec;
  rec["n"] = n;
  if (s.chosen) {
    rec["chosen"] = json{
        {"fwd_img", format_point(s.chosen->fwd_img)},
        {"fwd_src", format_point(s.chosen->fwd_src)},
        {"ret_img", format_point(s.chosen->ret_img)},
        {"ret_src", format_point(s.chosen->ret_src)},
    };
  }
  json cells = json::array();
  for (const Cell& c : s.cover->marked_cells()) cells.push_back(cell_json(c));
  rec["marked_cells"] = cells;
  json ov = json::array();
  for (const auto& [src, dst] : s.phi->overrides()) ov.push_back(json::array({src, dst.id}));
  rec["phi_overrides"] = ov;
  rec["verified"] = e.verify(n).summary();
  rec["digest"] = hex_digest(fnv1a64(rec.dump()));
  return rec;
}

}  // namespace

std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string certificate_text(const Engine& e) {
  json doc;
  doc["schema"] = kCertificateSchema;
  doc["config"] = config_json(e.config());
  json f0 = json::array();
  for (const auto& [x, y] : e.seed())
    f0.push_back(json{{"from", format_point(x)}, {"to", format_point(y)}});
  doc["f0"] = f0;
  json stages = json::array();
  for (int n = 0; n <= e.depth(); ++n) stages.push_back(stage_json(e, n));
  doc["stages"] = stages;
  return doc.dump(2) + "\n";
}

void save_certificate(const Engine& e, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << certificate_text(e);
  if (!out.good()) throw InputError("short write to " + path);
}

LoadedCertificate parse_certificate(std::string text) {
  LoadedCertificate out;
  out.raw = std::move(text);
  json doc;
  try {
    doc = json::parse(out.raw);
  } catch (const json::exception& e) {
    throw InputError(std::string("certificate does not parse: ") + e.what());
  }
  try {
    if (!doc.is_object()) throw InputError("certificate is not an object");
    if (doc.at("schema").get<int>() != kCertificateSchema)
      throw InputError("unsupported certificate schema");
    const json& cfg = doc.at("config");
    out.config.exact_stage_limit = cfg.at("exact_stage_limit").get<int>();
    out.config.search.exact_node_budget = cfg.at("exact_node_budget").get<long long>();
    out.config.search.stream_round_budget = cfg.at("stream_round_budget").get<long long>();
    out.config.verify_each_step = cfg.at("verify_each_step").get<bool>();
    if (cfg.at("mesh_schedule").get<std::string>() != "2^-n")
      throw InputError("unknown mesh schedule");
    for (const json& p : doc.at("f0"))
      out.f0.emplace_back(parse_point(p.at("from").get<std::string>()),
                          parse_point(p.at("to").get<std::string>()));
    const json& stages = doc.at("stages");
    if (!stages.is_array() || stages.empty()) throw InputError("certificate lists no stages");
    for (std::size_t i = 0; i < stages.size(); ++i)
      if (stages[i].at("n").get<int>() != static_cast<int>(i))
        throw InputError("stage records out of order");
    out.stages = static_cast<int>(stages.size()) - 1;
  } catch (const json::exception& e) {
    throw InputError(std::string("certificate is missing fields: ") + e.what());
  }
  out.doc = std::move(doc);
  return out;
}

LoadedCertificate load_certificate(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_certificate(buf.str());
}

Engine replay_certificate(const LoadedCertificate& c) {
  Engine e(c.f0, c.config);
  e.extend_to(c.stages);
  for (int n = 0; n <= c.stages; ++n) {
    StageReport rep = e.verify(n);
    if (!rep.pass) throw VerifyError(rep.summary());
  }
  std::string text = certificate_text(e);
  if (text != c.raw) {
    // name the first diverging stage record to make tampering reports useful
    std::string what = "certificate does not replay byte for byte";
    nlohmann::json rebuilt = nlohmann::json::parse(text);
    const nlohmann::json& a = c.doc.at("stages");
    const nlohmann::json& b = rebuilt.at("stages");
    for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
      if (a[i] == b[i]) continue;
      what = "stage " + std::to_string(i) + " record does not replay";
      for (const auto& [key, val] : b[i].items()) {
        if (!a[i].contains(key) || a[i].at(key) != val) {
          what += " (field " + key + ")";
          break;
        }
      }
      break;
    }
    throw VerifyError(what);
  }
  return e;
}

}  // namespace bing
