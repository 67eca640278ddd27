#pragma once

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "whipchain/chain.hpp"
#include "whipchain/common.hpp"
#include "whipchain/continuum.hpp"
#include "whipchain/profile.hpp"

namespace whipchain {

using nlohmann::json;

inline json load_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  require(in.good(), "cannot open " + path.string());
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& e) {
    throw validation_error(path.string() + ": " + e.what());
  }
  return doc;
}

/// {"n": 2, "theta": [...], "omega": [...], "g": 9.8}; omega defaults to
/// rest, g to zero.
inline ChainState chain_from_json(const json& doc) {
  require(doc.is_object(), "chain state must be a JSON object");
  require(doc.contains("n"), "chain state needs \"n\"");
  ChainState s;
  s.n = doc.at("n").get<int>();
  require(doc.contains("theta"), "chain state needs \"theta\"");
  s.theta = doc.at("theta").get<std::vector<double>>();
  s.omega = doc.contains("omega") ? doc.at("omega").get<std::vector<double>>()
                                  : std::vector<double>(s.theta.size(), 0.0);
  s.g = doc.value("g", 0.0);
  validate(s);
  return s;
}

inline json chain_to_json(const ChainState& s) {
  return json{{"n", s.n}, {"theta", s.theta}, {"omega", s.omega}, {"g", s.g}};
}

/// {"type": "straight"|"sine"|"custom", "angle"/"amplitude"/"coeffs": ...,
///  "kinks": [{"s_o": 0.5, "alpha": 1.0}, ...]} (kinks optional).
inline ThetaProfile profile_from_json(const json& doc) {
  require(doc.is_object(), "profile must be a JSON object");
  const std::string type = doc.value("type", "straight");
  ThetaProfile p;
  if (type == "straight") {
    p = straight_profile(doc.value("angle", 0.0));
  } else if (type == "sine") {
    p = sine_profile(doc.value("amplitude", 1.0));
  } else if (type == "custom") {
    require(doc.contains("coeffs"), "custom profile needs \"coeffs\"");
    p = custom_profile(doc.at("coeffs").get<std::vector<double>>());
  } else {
    throw validation_error("unknown profile type \"" + type + "\"");
  }
  if (doc.contains("kinks")) {
    for (const json& k : doc.at("kinks")) {
      KinkSpec spec;
      spec.s_o = k.at("s_o").get<double>();
      spec.alpha = k.at("alpha").get<double>();
      validate(spec);
      p.kinks.push_back(spec);
    }
  }
  return p;
}

/// {"type": "constant", "value": c} or {"type": "profile", "profile": {...},
/// "m": 200}: either a constant curvature field or the curvature of a
/// sampled profile curve.
inline std::function<double(double)> kappa_from_json(const json& doc) {
  require(doc.is_object(), "kappa spec must be a JSON object");
  const std::string type = doc.value("type", "constant");
  if (type == "constant") {
    const double c = doc.value("value", 0.0);
    return [c](double) { return c; };
  }
  if (type == "profile") {
    require(doc.contains("profile"), "kappa spec needs \"profile\"");
    const ThetaProfile p = profile_from_json(doc.at("profile"));
    require(p.kinks.empty(), "kappa from a profile uses its smooth part only");
    const auto d = p.smooth_d;
    require(static_cast<bool>(d), "profile carries no derivative");
    return [d](double s) { return d(s); };
  }
  throw validation_error("unknown kappa type \"" + type + "\"");
}

/// One column per series, rows zipped; %.17g so a reload reproduces every
/// bit. Column lengths must agree.
struct CsvTable {
  std::vector<std::string> headers;
  std::vector<std::vector<double>> columns;
};

inline std::string format_csv(const CsvTable& table) {
  require(!table.headers.empty(), "CSV needs at least one column");
  require(table.headers.size() == table.columns.size(), "header/column count mismatch");
  const size_t rows = table.columns[0].size();
  for (const auto& col : table.columns)
    require(col.size() == rows, "CSV columns must have equal length");
  std::string out;
  for (size_t j = 0; j < table.headers.size(); ++j) {
    if (j) out += ',';
    out += table.headers[j];
  }
  out += '\n';
  char buf[40];
  for (size_t i = 0; i < rows; ++i) {
    for (size_t j = 0; j < table.columns.size(); ++j) {
      if (j) out += ',';
      std::snprintf(buf, sizeof buf, "%.17g", table.columns[j][i]);
      out += buf;
    }
    out += '\n';
  }
  return out;
}

inline void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  require(out.good(), "cannot write " + path.string());
  out << text;
}

/// FNV-1a, 64-bit: stable, dependency-free content fingerprint for manifests.
inline std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

/// Accumulates written artifacts and dumps a manifest JSON next to them:
/// resolved config echo plus per-file checksums.
class RunManifest {
 public:
  RunManifest(std::filesystem::path dir, json config)
      : dir_(std::move(dir)), config_(std::move(config)) {
    std::filesystem::create_directories(dir_);
  }

  void write_file(const std::string& name, const std::string& content) {
    write_text(dir_ / name, content);
    char sum[20];
    std::snprintf(sum, sizeof sum, "%016llx",
                  static_cast<unsigned long long>(fnv1a64(content)));
    artifacts_.push_back({{"file", name}, {"fnv1a64", sum}, {"bytes", content.size()}});
  }

  void finish() const {
    const json doc{{"config", config_}, {"artifacts", artifacts_}};
    write_text(dir_ / "manifest.json", doc.dump(2) + "\n");
  }

  const std::filesystem::path& dir() const { return dir_; }

 private:
  std::filesystem::path dir_;
  json config_;
  std::vector<json> artifacts_;
};

}  // namespace whipchain
