#pragma once

// On-disk cache of supported sets, one JSON file per canonical shadow
// fingerprint.  Writes go to a temporary file and are renamed into place.

#include <atomic>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "knotfert/diagram.hpp"
#include "knotfert/fertility.hpp"
#include "knotfert/tables.hpp"

#include <json.hpp>

namespace knotfert {

/// Hash of everything identification depends on.
inline std::string table_digest(const KnotTable& table) {
  std::string text;
  for (const auto& r : table.records())
    text += r.name + ';' + std::to_string(r.c) + ';' + std::to_string(r.det) + ';' +
            r.jones.to_pairs() + ';' + (r.amphichiral ? '1' : '0') + '\n';
  return fnv1a_hex(text);
}

inline nlohmann::json to_json(const KnotId& k) {
  return {{"name", k.name}, {"chirality", to_string(k.chirality)}};
}

inline KnotId knot_id_from_json(const nlohmann::json& j) {
  return {j.at("name").get<std::string>(), chirality_from_string(j.at("chirality").get<std::string>())};
}

inline nlohmann::json to_json(const SupportedSet& s) {
  nlohmann::json knots = nlohmann::json::array(), residue = nlohmann::json::array();
  for (const auto& k : s.knots)
    knots.push_back({{"knot", to_json(k.knot)}, {"witness", k.witness.to_string()}, {"count", k.count}});
  for (const auto& r : s.residue) {
    nlohmann::json cands = nlohmann::json::array();
    for (const auto& k : r.candidates) cands.push_back(to_json(k));
    residue.push_back({{"status", to_string(r.status)},
                       {"candidates", cands},
                       {"jones", r.jones.to_pairs()},
                       {"det", r.det},
                       {"witness", r.witness.to_string()},
                       {"count", r.count}});
  }
  return {{"c", s.c}, {"s", s.s}, {"g", s.g}, {"resolutions", s.resolutions},
          {"knots", knots}, {"residue", residue}};
}

inline Identification::Status status_from_string(const std::string& s) {
  if (s == "identified") return Identification::Status::identified;
  if (s == "ambiguous") return Identification::Status::ambiguous;
  if (s == "unknown") return Identification::Status::unknown;
  throw DataError("unknown identification status '" + s + "'");
}

inline SupportedSet supported_set_from_json(const nlohmann::json& j) {
  SupportedSet s;
  s.c = j.at("c").get<int>();
  s.s = j.at("s").get<int>();
  s.g = j.at("g").get<int>();
  s.resolutions = j.at("resolutions").get<std::uint64_t>();
  for (const auto& k : j.at("knots"))
    s.knots.push_back({knot_id_from_json(k.at("knot")),
                       Assignment::from_string(k.at("witness").get<std::string>()),
                       k.at("count").get<std::uint64_t>()});
  for (const auto& r : j.at("residue")) {
    Residue x;
    x.status = status_from_string(r.at("status").get<std::string>());
    for (const auto& k : r.at("candidates")) x.candidates.push_back(knot_id_from_json(k));
    x.jones = LaurentPoly::from_pairs(r.at("jones").get<std::string>());
    x.det = r.at("det").get<std::int64_t>();
    x.witness = Assignment::from_string(r.at("witness").get<std::string>());
    x.count = r.at("count").get<std::uint64_t>();
    s.residue.push_back(std::move(x));
  }
  return s;
}

class ResultCache {
 public:
  ResultCache(std::filesystem::path dir, std::string table_digest)
      : dir_(std::move(dir)), digest_(std::move(table_digest)) {
    std::filesystem::create_directories(dir_);
  }

  /// `canonical` must be in canonical form.  Corrupt or mismatched entries
  /// count as misses and leave a warning.
  std::optional<SupportedSet> get(const Shadow& canonical) {
    const std::string pd = serialize_shadow(canonical);
    const auto path = file_for(pd);
    std::ifstream in(path);
    if (!in) {
      ++misses_;
      return std::nullopt;
    }
    try {
      const auto j = nlohmann::json::parse(in);
      if (j.at("shadow").get<std::string>() != pd || j.at("table").get<std::string>() != digest_) {
        warn(path, "entry does not match the shadow or table");
        ++misses_;
        return std::nullopt;
      }
      auto s = supported_set_from_json(j.at("result"));
      ++hits_;
      return s;
    } catch (const std::exception& e) {
      warn(path, e.what());
      ++misses_;
      return std::nullopt;
    }
  }

  void put(const Shadow& canonical, const SupportedSet& s) {
    const std::string pd = serialize_shadow(canonical);
    const auto path = file_for(pd);
    nlohmann::json j{{"shadow", pd}, {"table", digest_}, {"result", to_json(s)}};
    static std::atomic<unsigned> counter{0};
    auto tmp = path;
    tmp += ".tmp" + std::to_string(counter++);
    {
      std::ofstream out(tmp);
      out << j.dump() << '\n';
      if (!out) throw Error("cannot write cache entry " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
  }

  std::filesystem::path file_for(const std::string& canonical_pd) const {
    return dir_ / (fnv1a_hex(canonical_pd) + ".json");
  }

  std::size_t hits() const { return hits_; }
  std::size_t misses() const { return misses_; }
  const std::vector<std::string>& warnings() const { return warnings_; }

 private:
  void warn(const std::filesystem::path& path, const std::string& what) {
    warnings_.push_back("cache entry " + path.string() + " ignored: " + what);
  }

  std::filesystem::path dir_;
  std::string digest_;
  std::size_t hits_ = 0, misses_ = 0;
  std::vector<std::string> warnings_;
};

/// Supported set computed on the canonical form of `s` (through the cache
/// when given), with witnesses carried back to the labels of `s`.
inline SupportedSet supported_set_canonical(const Shadow& s, const KnotTable& table,
                                            const SupportOptions& opt = {},
                                            ResultCache* cache = nullptr) {
  const auto canon = canonical_shadow(s);
  std::optional<SupportedSet> hit;
  if (cache) hit = cache->get(canon.shadow);
  SupportedSet out = hit ? std::move(*hit) : supported_set(canon.shadow, table, opt);
  if (cache && !hit) cache->put(canon.shadow, out);
  auto carry = [&](Assignment& a) {
    a = assignment_of(pull_back(apply(canon.shadow, a), s, canon.relabeling));
  };
  for (auto& k : out.knots) carry(k.witness);
  for (auto& r : out.residue) carry(r.witness);
  return out;
}

}  // namespace knotfert
