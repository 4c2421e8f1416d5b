#pragma once

// Certificates: a deterministic JSON snapshot of an engine run. The
// authoritative payload is the seed, the configuration and the stage
// count; chosen points, marked cells, override tables and per-stage
// verification digests are recorded alongside so a reader can audit the
// run, and a replay must reproduce the whole document byte for byte.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "bing/engine.hpp"

namespace bing {

inline constexpr int kCertificateSchema = 1;

std::uint64_t fnv1a64(const std::string& s);

// canonical text; two engines built from the same inputs serialize equal
std::string certificate_text(const Engine& e);

void save_certificate(const Engine& e, const std::string& path);

struct LoadedCertificate {
  std::vector<std::pair<Point, Point>> f0;
  RunConfig config;
  int stages = 0;
  std::string raw;  // exact file bytes, for the replay comparison
  nlohmann::json doc;
};

// parses and schema-checks; throws InputError on malformed input
LoadedCertificate load_certificate(const std::string& path);
LoadedCertificate parse_certificate(std::string text);

// rebuilds the run from the seed and configuration, re-verifies every
// stage, reserializes and compares with the original bytes; throws
// VerifyError on any mismatch or failed condition
Engine replay_certificate(const LoadedCertificate& c);

}  // namespace bing
