#pragma once

// PD-style text codec for knot diagrams and shadows.
//
// Grammar (whitespace separated tokens):
//   diagram := "U" | xtok { xtok }
//   shadow  := "U" | ptok { ptok }
//   xtok    := "X[" a "," b "," c "," d "]"   a = incoming under edge, b,c,d ccw
//   ptok    := "P[" a "," b "," c "," d "]"   four edges in ccw order
//
// Edge labels are 1..2c and follow the knot: edge i is followed by edge
// i+1 (mod 2c).  At an X crossing the under strand runs a -> c; the over
// strand runs d -> b (positive crossing) or b -> d (negative crossing).

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <fstream>
#include <numeric>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "knotfert/error.hpp"

#include <json.hpp>

namespace knotfert {

enum class CrossingKind : std::uint8_t { oriented, flat };

struct Crossing {
  std::array<int, 4> edges{};
  CrossingKind kind = CrossingKind::oriented;

  friend bool operator==(const Crossing&, const Crossing&) = default;
  friend auto operator<=>(const Crossing&, const Crossing&) = default;
};

enum class ViolationKind {
  kind_mismatch,
  label_range,
  label_multiplicity,
  strand_not_consecutive,
  orientation,
  disconnected,
  nonplanar,
};

inline const char* to_string(ViolationKind k) {
  switch (k) {
    case ViolationKind::kind_mismatch: return "kind_mismatch";
    case ViolationKind::label_range: return "label_range";
    case ViolationKind::label_multiplicity: return "label_multiplicity";
    case ViolationKind::strand_not_consecutive: return "strand_not_consecutive";
    case ViolationKind::orientation: return "orientation";
    case ViolationKind::disconnected: return "disconnected";
    case ViolationKind::nonplanar: return "nonplanar";
  }
  return "unknown";
}

struct Violation {
  ViolationKind kind;
  std::string message;
};

using ValidationReport = std::vector<Violation>;

namespace detail {

inline int successor(int label, int num_edges) { return label % num_edges + 1; }

/// Incoming slot of the strand through slots (0,2) and of the strand through
/// slots (1,3).  Returns nullopt when a strand is not a consecutive edge pair.
/// With a single crossing (two edges) each strand is consecutive both ways;
/// the tie is broken so that every edge is incoming exactly once.
inline std::optional<std::array<int, 2>> incoming_slots(const Crossing& x, int num_edges) {
  const auto& e = x.edges;
  auto in_slot = [&](int p, int q) -> int {
    const bool fwd = successor(e[p], num_edges) == e[q];
    const bool back = successor(e[q], num_edges) == e[p];
    if (e[p] == e[q]) return -1;
    if (fwd && back) return -2;
    if (fwd) return p;
    if (back) return q;
    return -1;
  };
  int s0 = 0;
  if (x.kind == CrossingKind::oriented) {
    if (successor(e[0], num_edges) != e[2] || e[0] == e[2]) return std::nullopt;
  } else {
    s0 = in_slot(0, 2);
    if (s0 == -1) return std::nullopt;
    if (s0 == -2) s0 = 0;
  }
  int s1 = in_slot(1, 3);
  if (s1 == -1) return std::nullopt;
  if (s1 == -2) s1 = (e[1] == e[(s0 + 2) % 4]) ? 1 : 3;
  return std::array<int, 2>{s0, s1};
}

/// Lexicographically smallest rotation of a ccw 4-cycle.
inline std::array<int, 4> min_rotation(const std::array<int, 4>& e) {
  std::array<int, 4> best = e;
  for (int r = 1; r < 4; ++r) {
    const std::array<int, 4> cand{e[r], e[(r + 1) % 4], e[(r + 2) % 4], e[(r + 3) % 4]};
    if (cand < best) best = cand;
  }
  return best;
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[a] = b;
    return true;
  }
};

/// Number of faces of the ccw rotation system given by the crossings.
/// Requires every label 1..2c to occur exactly twice.
inline int face_count(std::span<const Crossing> xs) {
  const int c = static_cast<int>(xs.size());
  const int n = 2 * c;
  std::vector<std::array<int, 2>> where(static_cast<std::size_t>(n + 1), {-1, -1});
  for (int i = 0; i < c; ++i)
    for (int s = 0; s < 4; ++s) {
      auto& w = where[xs[i].edges[s]];
      (w[0] < 0 ? w[0] : w[1]) = 4 * i + s;
    }
  std::vector<char> seen(static_cast<std::size_t>(4 * c), 0);
  int faces = 0;
  for (int start = 0; start < 4 * c; ++start) {
    if (seen[start]) continue;
    ++faces;
    int dart = start;
    while (!seen[dart]) {
      seen[dart] = 1;
      const int label = xs[dart / 4].edges[dart % 4];
      const auto& w = where[label];
      const int other = (w[0] == dart) ? w[1] : w[0];
      dart = 4 * (other / 4) + (other % 4 + 1) % 4;
    }
  }
  return faces;
}

}  // namespace detail

/// All violated invariants of a crossing list; empty means valid.
inline ValidationReport validate_crossings(std::span<const Crossing> xs, CrossingKind expected) {
  ValidationReport report;
  const int c = static_cast<int>(xs.size());
  if (c == 0) return report;
  const int n = 2 * c;

  std::vector<int> bad_kind;
  for (int i = 0; i < c; ++i)
    if (xs[i].kind != expected) bad_kind.push_back(i);
  if (!bad_kind.empty())
    report.push_back({ViolationKind::kind_mismatch,
                      std::to_string(bad_kind.size()) + " crossing(s) of the wrong kind (" +
                          (expected == CrossingKind::flat ? "expected P" : "expected X") + ")"});

  std::vector<int> count(static_cast<std::size_t>(n + 1), 0);
  std::string out_of_range;
  for (const auto& x : xs)
    for (int e : x.edges) {
      if (e < 1 || e > n) {
        out_of_range += (out_of_range.empty() ? "" : ", ") + std::to_string(e);
      } else {
        ++count[e];
      }
    }
  if (!out_of_range.empty())
    report.push_back({ViolationKind::label_range,
                      "labels outside 1.." + std::to_string(n) + ": " + out_of_range});
  std::string multiplicity;
  for (int e = 1; e <= n; ++e)
    if (count[e] != 2)
      multiplicity += (multiplicity.empty() ? "" : ", ") + std::to_string(e) + " occurs " +
                      std::to_string(count[e]) + " time(s)";
  if (!multiplicity.empty())
    report.push_back({ViolationKind::label_multiplicity, "label " + multiplicity});

  {
    detail::UnionFind uf(static_cast<std::size_t>(c));
    std::vector<int> first(static_cast<std::size_t>(n + 1), -1);
    for (int i = 0; i < c; ++i)
      for (int e : xs[i].edges) {
        if (e < 1 || e > n) continue;
        if (first[e] < 0) first[e] = i;
        else uf.unite(first[e], i);
      }
    int roots = 0;
    for (int i = 0; i < c; ++i) roots += (uf.find(i) == i);
    if (roots > 1)
      report.push_back({ViolationKind::disconnected,
                        "crossing graph has " + std::to_string(roots) + " components"});
  }

  const bool labels_ok = out_of_range.empty() && multiplicity.empty();
  if (!labels_ok || !bad_kind.empty()) return report;

  std::string strands;
  std::vector<int> incoming(static_cast<std::size_t>(n + 1), 0);
  for (int i = 0; i < c; ++i) {
    const auto slots = detail::incoming_slots(xs[i], n);
    if (!slots) {
      strands += (strands.empty() ? "" : ", ") + std::to_string(i + 1);
      continue;
    }
    ++incoming[xs[i].edges[(*slots)[0]]];
    ++incoming[xs[i].edges[(*slots)[1]]];
  }
  if (!strands.empty()) {
    report.push_back({ViolationKind::strand_not_consecutive,
                      "crossing(s) " + strands + " have a strand that is not i -> i+1"});
    return report;
  }
  std::string orient;
  for (int e = 1; e <= n; ++e)
    if (incoming[e] != 1)
      orient += (orient.empty() ? "" : ", ") + std::to_string(e) + " enters " +
                std::to_string(incoming[e]) + " crossing(s)";
  if (!orient.empty()) {
    report.push_back({ViolationKind::orientation, "edge " + orient});
    return report;
  }

  const int faces = detail::face_count(xs);
  if (faces != c + 2)
    report.push_back({ViolationKind::nonplanar, "rotation system has " + std::to_string(faces) +
                                                    " faces, a sphere diagram needs " +
                                                    std::to_string(c + 2)});
  return report;
}

inline std::string describe(const ValidationReport& report) {
  std::string out;
  for (const auto& v : report) {
    if (!out.empty()) out += "; ";
    out += std::string(to_string(v.kind)) + ": " + v.message;
  }
  return out;
}

/// A validated knot diagram.  The default-constructed diagram is the
/// zero-crossing unknot "U".
class Diagram {
 public:
  Diagram() = default;

  explicit Diagram(std::vector<Crossing> crossings) : crossings_(std::move(crossings)) {
    const auto report = validate_crossings(crossings_, CrossingKind::oriented);
    if (!report.empty()) throw ValidationError("invalid diagram: " + describe(report));
  }

  const std::vector<Crossing>& crossings() const { return crossings_; }
  int crossing_count() const { return static_cast<int>(crossings_.size()); }
  int edge_count() const { return 2 * crossing_count(); }

  friend bool operator==(const Diagram&, const Diagram&) = default;

 private:
  std::vector<Crossing> crossings_;
};

/// A validated shadow (all crossings flat).  Each crossing is stored in its
/// lexicographically smallest ccw rotation.
class Shadow {
 public:
  Shadow() = default;

  explicit Shadow(std::vector<Crossing> crossings) : crossings_(std::move(crossings)) {
    for (auto& x : crossings_)
      if (x.kind == CrossingKind::flat) x.edges = detail::min_rotation(x.edges);
    const auto report = validate_crossings(crossings_, CrossingKind::flat);
    if (!report.empty()) throw ValidationError("invalid shadow: " + describe(report));
  }

  const std::vector<Crossing>& crossings() const { return crossings_; }
  int crossing_count() const { return static_cast<int>(crossings_.size()); }
  int edge_count() const { return 2 * crossing_count(); }

  friend bool operator==(const Shadow&, const Shadow&) = default;

 private:
  std::vector<Crossing> crossings_;
};

/// Tokenizes PD text into raw crossings.  Does not validate invariants.
inline std::vector<Crossing> parse_crossings(std::string_view text) {
  std::vector<Crossing> out;
  std::size_t i = 0;
  bool saw_unknot = false;
  auto skip_ws = [&] {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t' || text[i] == '\n' ||
                               text[i] == '\r' || text[i] == ','))
      ++i;
  };
  auto inner_ws = [&] {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
  };
  auto expect = [&](char ch) {
    inner_ws();
    if (i >= text.size() || text[i] != ch)
      throw ParseError(std::string("expected '") + ch + "'", i);
    ++i;
  };
  auto number = [&]() -> int {
    inner_ws();
    const std::size_t start = i;
    long long v = 0;
    while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
      v = v * 10 + (text[i] - '0');
      if (v > 1'000'000) throw ParseError("edge label too large", start);
      ++i;
    }
    if (i == start) throw ParseError("expected edge label", start);
    return static_cast<int>(v);
  };

  skip_ws();
  while (i < text.size()) {
    const std::size_t tok_start = i;
    const char head = text[i];
    if (head == 'U') {
      ++i;
      if (i < text.size() && !(text[i] == ' ' || text[i] == '\t' || text[i] == '\n' ||
                               text[i] == '\r'))
        throw ParseError("unexpected character after 'U'", i);
      if (saw_unknot || !out.empty())
        throw ParseError("'U' must be the only token", tok_start);
      saw_unknot = true;
    } else if (head == 'X' || head == 'P') {
      if (saw_unknot) throw ParseError("'U' must be the only token", tok_start);
      ++i;
      Crossing x;
      x.kind = head == 'X' ? CrossingKind::oriented : CrossingKind::flat;
      expect('[');
      for (int k = 0; k < 4; ++k) {
        if (k > 0) expect(',');
        x.edges[k] = number();
      }
      expect(']');
      out.push_back(x);
    } else {
      throw ParseError(std::string("unexpected character '") + head + "'", i);
    }
    skip_ws();
  }
  if (!saw_unknot && out.empty()) throw ParseError("empty input", 0);
  return out;
}

/// Maps the distinct labels of `xs`, in increasing order, onto 1..k.  For
/// input whose labels follow the knot but skip values or start elsewhere.
inline std::vector<Crossing> renumber_labels(std::vector<Crossing> xs) {
  std::vector<int> labels;
  for (const auto& x : xs) labels.insert(labels.end(), x.edges.begin(), x.edges.end());
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  for (auto& x : xs)
    for (auto& e : x.edges)
      e = static_cast<int>(std::lower_bound(labels.begin(), labels.end(), e) - labels.begin()) + 1;
  return xs;
}

inline Diagram parse_diagram(std::string_view text) { return Diagram(parse_crossings(text)); }

/// Parses a shadow.  X tokens are accepted and have their over/under data
/// dropped, so a diagram file also names its shadow.
inline Shadow parse_shadow(std::string_view text) {
  auto xs = parse_crossings(text);
  for (auto& x : xs) x.kind = CrossingKind::flat;
  return Shadow(std::move(xs));
}

inline std::string serialize_crossings(std::span<const Crossing> xs) {
  if (xs.empty()) return "U";
  std::string out;
  for (const auto& x : xs) {
    if (!out.empty()) out += ' ';
    out += x.kind == CrossingKind::oriented ? "X[" : "P[";
    for (int k = 0; k < 4; ++k) {
      if (k) out += ',';
      out += std::to_string(x.edges[k]);
    }
    out += ']';
  }
  return out;
}

inline std::string serialize_diagram(const Diagram& d) { return serialize_crossings(d.crossings()); }
inline std::string serialize_shadow(const Shadow& s) { return serialize_crossings(s.crossings()); }

/// Drops the over/under information.
inline Shadow forget(const Diagram& d) {
  std::vector<Crossing> xs = d.crossings();
  for (auto& x : xs) x.kind = CrossingKind::flat;
  return Shadow(std::move(xs));
}

inline Shadow forget(const Shadow& s) { return s; }

inline ValidationReport validate(const Diagram& d) {
  return validate_crossings(d.crossings(), CrossingKind::oriented);
}
inline ValidationReport validate(const Shadow& s) {
  return validate_crossings(s.crossings(), CrossingKind::flat);
}

/// Validates raw text without throwing on invariant violations.  Parse
/// errors still throw.
inline ValidationReport validate_text(std::string_view text, CrossingKind expected) {
  return validate_crossings(parse_crossings(text), expected);
}

/// Reads PD strings from a file: either a JSON array of strings or one
/// diagram per line ('#' starts a comment line).
inline std::vector<std::string> read_pd_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string content = buf.str();
  const auto first = content.find_first_not_of(" \t\r\n");
  std::vector<std::string> out;
  if (first != std::string::npos && content[first] == '[') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(content);
    } catch (const nlohmann::json::exception& e) {
      throw DataError(path + ": " + e.what());
    }
    for (const auto& item : j) {
      if (!item.is_string()) throw DataError(path + ": array items must be PD strings");
      out.push_back(item.get<std::string>());
    }
    return out;
  }
  std::istringstream lines(content);
  std::string line;
  while (std::getline(lines, line)) {
    const auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos || line[b] == '#') continue;
    const auto e = line.find_last_not_of(" \t\r");
    out.push_back(line.substr(b, e - b + 1));
  }
  return out;
}

}  // namespace knotfert
