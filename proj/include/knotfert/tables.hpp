#pragma once

// Bundled knot table: records, load-time self checks, invariant index and
// the registry of Jones-polynomial collisions.

#include <algorithm>
#include <array>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "knotfert/error.hpp"
#include "knotfert/laurent.hpp"

#include <json.hpp>

namespace knotfert {

#ifndef KNOTFERT_DATA_DIR
#define KNOTFERT_DATA_DIR "data"
#endif

/// Number of prime knots with n crossings, n = 0..10 (0_1 counted at n = 0).
inline constexpr std::array<int, 11> kKnotCensus{1, 0, 0, 1, 1, 2, 3, 7, 21, 49, 165};

/// Directory holding the bundled data; $KNOTFERT_DATA overrides.
inline std::string data_dir() {
  if (const char* env = std::getenv("KNOTFERT_DATA"); env && *env) return env;
  return KNOTFERT_DATA_DIR;
}

struct KnotRecord {
  std::string name;
  int c = 0;
  int b = 1;
  int g = 0;
  std::int64_t det = 1;
  LaurentPoly jones;  // in t, for the chirality of pd[0]
  bool amphichiral = false;
  std::vector<std::string> pd;
};

/// (crossings, index) parsed from names like "10_132"; used for name order.
inline std::pair<int, int> knot_name_key(std::string_view name) {
  const auto us = name.find('_');
  if (us == std::string_view::npos) return {1 << 30, 0};
  try {
    return {std::stoi(std::string(name.substr(0, us))), std::stoi(std::string(name.substr(us + 1)))};
  } catch (const std::exception&) {
    return {1 << 30, 0};
  }
}

inline bool knot_name_less(std::string_view a, std::string_view b) {
  const auto ka = knot_name_key(a), kb = knot_name_key(b);
  if (ka != kb) return ka < kb;
  return a < b;
}

/// Jones polynomial up to t -> 1/t: the smaller of V and its mirror.
inline LaurentPoly jones_mirror_key(const LaurentPoly& v) {
  const LaurentPoly m = v.mirrored();
  return m < v ? m : v;
}

struct TableLoadOptions {
  bool require_census = true;
  std::string registry_path;  // empty: skip the shipped-registry comparison
};

class KnotTable {
 public:
  KnotTable() = default;

  /// Validates every record and builds the lookup index.  Throws DataError
  /// naming the first offending row.
  explicit KnotTable(std::vector<KnotRecord> records, const TableLoadOptions& opt = {})
      : records_(std::move(records)) {
    for (std::size_t i = 0; i < records_.size(); ++i) check_row(i);
    std::sort(records_.begin(), records_.end(), [](const KnotRecord& a, const KnotRecord& b) {
      return knot_name_less(a.name, b.name);
    });
    for (std::size_t i = 1; i < records_.size(); ++i)
      if (records_[i].name == records_[i - 1].name)
        throw DataError("duplicate knot name " + records_[i].name);
    for (std::size_t i = 0; i < records_.size(); ++i) {
      by_name_[records_[i].name] = i;
      index_[{jones_mirror_key(records_[i].jones).to_pairs(), records_[i].det}].push_back(i);
    }
    compute_horizon(opt.require_census);
    for (const auto& [key, members] : index_) {
      if (members.size() < 2) continue;
      std::vector<std::string> names;
      for (auto m : members) names.push_back(records_[m].name);
      collisions_.push_back(std::move(names));
    }
    std::sort(collisions_.begin(), collisions_.end(),
              [](const auto& a, const auto& b) { return knot_name_less(a.front(), b.front()); });
    if (!opt.registry_path.empty()) check_registry(opt.registry_path);
  }

  const std::vector<KnotRecord>& records() const { return records_; }
  std::size_t size() const { return records_.size(); }

  /// Largest n such that the table holds every prime knot with c <= n;
  /// -1 for an empty table.
  int horizon() const { return horizon_; }

  const KnotRecord* find(std::string_view name) const {
    const auto it = by_name_.find(std::string(name));
    return it == by_name_.end() ? nullptr : &records_[it->second];
  }

  const KnotRecord& at(std::string_view name) const {
    const auto* r = find(name);
    if (!r) throw DataError("unknown knot " + std::string(name));
    return *r;
  }

  /// Records whose Jones polynomial matches `jones` up to t -> 1/t, whose
  /// determinant is `det` and with c <= c_bound, in name order.
  std::vector<const KnotRecord*> lookup(const LaurentPoly& jones, std::int64_t det,
                                        int c_bound) const {
    std::vector<const KnotRecord*> out;
    const auto it = index_.find({jones_mirror_key(jones).to_pairs(), det});
    if (it == index_.end()) return out;
    for (auto i : it->second)
      if (records_[i].c <= c_bound) out.push_back(&records_[i]);
    return out;
  }

  /// Groups of two or more knots sharing (Jones up to mirror, det).
  const std::vector<std::vector<std::string>>& collisions() const { return collisions_; }

 private:
  void check_row(std::size_t i) const {
    const auto& r = records_[i];
    const std::string where = "row " + std::to_string(i + 1) + " (" + r.name + "): ";
    if (r.name.empty()) throw DataError(where + "empty name");
    if (r.c < 0) throw DataError(where + "negative crossing number");
    if (r.g < 0) throw DataError(where + "negative genus");
    if (r.b < 1) throw DataError(where + "braid index below 1");
    const std::int64_t v = r.jones.evaluate(-1);
    const std::int64_t abs_v = v < 0 ? -v : v;
    if (abs_v != r.det)
      throw DataError(where + "det " + std::to_string(r.det) + " != |V(-1)| = " +
                      std::to_string(abs_v));
    if (r.amphichiral && !r.jones.is_palindromic())
      throw DataError(where + "amphichiral but Jones polynomial is not palindromic");
  }

  void compute_horizon(bool require_census) {
    if (records_.empty()) {
      horizon_ = -1;
      return;
    }
    int max_c = 0;
    std::map<int, int> counts;
    for (const auto& r : records_) {
      ++counts[r.c];
      max_c = std::max(max_c, r.c);
    }
    horizon_ = -1;
    const int top = std::min<int>(max_c, static_cast<int>(kKnotCensus.size()) - 1);
    for (int n = 0; n <= top; ++n) {
      const int have = counts.count(n) ? counts[n] : 0;
      if (have != kKnotCensus[static_cast<std::size_t>(n)]) {
        if (require_census)
          throw DataError("table has " + std::to_string(have) + " knot(s) with " +
                          std::to_string(n) + " crossings, census says " +
                          std::to_string(kKnotCensus[static_cast<std::size_t>(n)]));
        return;
      }
      horizon_ = n;
    }
  }

  void check_registry(const std::string& path) const {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open collision registry " + path);
    std::vector<std::vector<std::string>> shipped;
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#') continue;
      std::istringstream is(line);
      std::vector<std::string> group;
      std::string name;
      while (is >> name) group.push_back(name);
      if (group.empty()) continue;
      std::sort(group.begin(), group.end(), knot_name_less);
      shipped.push_back(std::move(group));
    }
    std::sort(shipped.begin(), shipped.end(),
              [](const auto& a, const auto& b) { return knot_name_less(a.front(), b.front()); });
    if (shipped != collisions_)
      throw DataError("collision registry " + path + " does not match the table (" +
                      std::to_string(shipped.size()) + " shipped groups, " +
                      std::to_string(collisions_.size()) + " recomputed)");
  }

  std::vector<KnotRecord> records_;
  std::map<std::string, std::size_t> by_name_;
  std::map<std::pair<std::string, std::int64_t>, std::vector<std::size_t>> index_;
  std::vector<std::vector<std::string>> collisions_;
  int horizon_ = -1;
};

namespace detail {

/// Splits one CSV line; double quotes protect commas, "" is a literal quote.
inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (ch == '"') {
        quoted = false;
      } else {
        cur += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      out.push_back(std::move(cur));
      cur.clear();
    } else if (ch != '\r') {
      cur += ch;
    }
  }
  out.push_back(std::move(cur));
  return out;
}

inline std::string csv_quote(const std::string& field) {
  if (field.find_first_of(",\"") == std::string::npos) return field;
  std::string out = "\"";
  for (char ch : field) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + '"';
}

inline bool parse_flag(const std::string& s) {
  if (s == "1" || s == "true" || s == "Y" || s == "yes") return true;
  if (s == "0" || s == "false" || s == "N" || s == "no" || s.empty()) return false;
  throw DataError("bad boolean '" + s + "'");
}

inline std::vector<std::string> split_pd_field(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == '|') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (!cur.empty() || out.empty()) out.push_back(cur);
  return out;
}

}  // namespace detail

inline constexpr std::string_view kTableCsvHeader = "name,c,b,g,det,jones,amphichiral,pd";

/// Parses the CSV table schema: name,c,b,g,det,jones,amphichiral,pd where
/// jones is "exponent:coefficient" pairs and pd holds '|'-separated PD strings.
inline std::vector<KnotRecord> parse_table_csv(std::istream& in, const std::string& source) {
  std::vector<KnotRecord> rows;
  std::string line;
  std::size_t lineno = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r" || line[0] == '#') continue;
    const auto fields = detail::split_csv_line(line);
    if (!header_seen) {
      header_seen = true;
      std::string joined;
      for (const auto& f : fields) joined += (joined.empty() ? "" : ",") + f;
      if (joined != kTableCsvHeader)
        throw DataError(source + ":" + std::to_string(lineno) + ": expected header '" +
                        std::string(kTableCsvHeader) + "'");
      continue;
    }
    const std::string where = source + ":" + std::to_string(lineno) + ": ";
    if (fields.size() != 8)
      throw DataError(where + "expected 8 columns, got " + std::to_string(fields.size()));
    KnotRecord r;
    try {
      r.name = fields[0];
      r.c = std::stoi(fields[1]);
      r.b = std::stoi(fields[2]);
      r.g = std::stoi(fields[3]);
      r.det = std::stoll(fields[4]);
      r.jones = LaurentPoly::from_pairs(fields[5]);
      r.amphichiral = detail::parse_flag(fields[6]);
      r.pd = detail::split_pd_field(fields[7]);
    } catch (const DataError&) {
      throw;
    } catch (const std::exception& e) {
      throw DataError(where + "schema violation (" + e.what() + ")");
    }
    rows.push_back(std::move(r));
  }
  if (!header_seen) throw DataError(source + ": empty table file (no header)");
  return rows;
}

/// JSON mirror of the CSV schema: an array of objects with the same keys;
/// "jones" is the pairs string and "pd" an array of strings.
inline std::vector<KnotRecord> parse_table_json(std::istream& in, const std::string& source) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw DataError(source + ": " + e.what());
  }
  if (!j.is_array()) throw DataError(source + ": expected a JSON array");
  std::vector<KnotRecord> rows;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const auto& o = j[i];
    try {
      KnotRecord r;
      r.name = o.at("name").get<std::string>();
      r.c = o.at("c").get<int>();
      r.b = o.at("b").get<int>();
      r.g = o.at("g").get<int>();
      r.det = o.at("det").get<std::int64_t>();
      r.jones = LaurentPoly::from_pairs(o.at("jones").get<std::string>());
      r.amphichiral = o.at("amphichiral").get<bool>();
      r.pd = o.at("pd").get<std::vector<std::string>>();
      rows.push_back(std::move(r));
    } catch (const std::exception& e) {
      throw DataError(source + ": entry " + std::to_string(i + 1) + ": schema violation (" +
                      e.what() + ")");
    }
  }
  return rows;
}

inline KnotTable load_table(const std::string& path, const TableLoadOptions& opt = {}) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open table " + path);
  const bool json = path.size() >= 5 && path.substr(path.size() - 5) == ".json";
  auto rows = json ? parse_table_json(in, path) : parse_table_csv(in, path);
  return KnotTable(std::move(rows), opt);
}

/// The bundled <= 10 crossing table, checked against the shipped registry.
inline KnotTable load_bundled_table() {
  TableLoadOptions opt;
  opt.registry_path = data_dir() + "/collisions.txt";
  return load_table(data_dir() + "/knot_table.csv", opt);
}

inline void write_table_csv(std::ostream& out, const std::vector<KnotRecord>& rows) {
  out << kTableCsvHeader << '\n';
  for (const auto& r : rows) {
    std::string pd;
    for (const auto& p : r.pd) pd += (pd.empty() ? "" : "|") + p;
    out << r.name << ',' << r.c << ',' << r.b << ',' << r.g << ',' << r.det << ','
        << detail::csv_quote(r.jones.to_pairs()) << ',' << (r.amphichiral ? 1 : 0) << ','
        << detail::csv_quote(pd) << '\n';
  }
}

}  // namespace knotfert
