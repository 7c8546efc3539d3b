#pragma once

// Kauffman bracket, Jones polynomial, determinant and table identification.

#include <algorithm>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "knotfert/codec.hpp"
#include "knotfert/diagram.hpp"
#include "knotfert/error.hpp"
#include "knotfert/laurent.hpp"
#include "knotfert/tables.hpp"

namespace knotfert {

inline constexpr int kDefaultBracketLimit = 40;

/// Loop value d = -A^2 - A^-2.
inline LaurentPoly bracket_loop() {
  return LaurentPoly::monomial(-1, 2) + LaurentPoly::monomial(-1, -2);
}

namespace detail {

/// The two arcs of a smoothing of X[a,b,c,d].  The A-smoothing joins a-b
/// and c-d; the B-smoothing joins a-d and b-c.
inline std::array<std::array<int, 2>, 2> smoothing_arcs(const Crossing& x, bool a_smoothing) {
  const auto& e = x.edges;
  if (a_smoothing) return {{{e[0], e[1]}, {e[2], e[3]}}};
  return {{{e[0], e[3]}, {e[1], e[2]}}};
}

struct VectorHash {
  std::size_t operator()(const std::vector<int>& v) const noexcept {
    std::size_t h = 0xcbf29ce484222325ull;
    for (int x : v) {
      h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
  }
};

/// Open-end pairing of a partially smoothed diagram: flat list of pairs
/// (p0,q0,p1,q1,...) with p < q, sorted by p.
using Frontier = std::vector<int>;

/// Adds one smoothing arc to a frontier; returns the number of loops closed.
inline int add_arc(Frontier& f, int x, int y) {
  if (x == y) return 1;
  auto find = [&](int label) -> int {
    for (std::size_t k = 0; k < f.size(); ++k)
      if (f[k] == label) return static_cast<int>(k);
    return -1;
  };
  auto erase_pair = [&](int pos) {
    const int base = pos - pos % 2;
    f.erase(f.begin() + base, f.begin() + base + 2);
  };
  auto insert_pair = [&](int p, int q) {
    if (p > q) std::swap(p, q);
    std::size_t k = 0;
    while (k < f.size() && f[k] < p) k += 2;
    f.insert(f.begin() + static_cast<std::ptrdiff_t>(k), {p, q});
  };
  const int px = find(x), py = find(y);
  if (px >= 0 && py >= 0) {
    if (px / 2 == py / 2) {
      erase_pair(px);
      return 1;
    }
    const int ox = f[px ^ 1], oy = f[py ^ 1];
    const int hi = std::max(px, py), lo = std::min(px, py);
    erase_pair(hi);
    erase_pair(lo);
    insert_pair(ox, oy);
  } else if (px >= 0) {
    const int ox = f[px ^ 1];
    erase_pair(px);
    insert_pair(ox, y);
  } else if (py >= 0) {
    const int oy = f[py ^ 1];
    erase_pair(py);
    insert_pair(x, oy);
  } else {
    insert_pair(x, y);
  }
  return 0;
}

/// Crossing order that keeps the open frontier small: repeatedly take the
/// crossing with the most edges already touched.
inline std::vector<int> bracket_order(std::span<const Crossing> xs) {
  const int c = static_cast<int>(xs.size());
  std::vector<int> order;
  std::vector<char> done(static_cast<std::size_t>(c), 0);
  std::vector<int> touched(static_cast<std::size_t>(2 * c + 1), 0);
  for (int step = 0; step < c; ++step) {
    int best = -1, best_score = -1;
    for (int i = 0; i < c; ++i) {
      if (done[i]) continue;
      int score = 0;
      for (int e : xs[i].edges) score += touched[e];
      if (score > best_score) {
        best = i;
        best_score = score;
      }
    }
    done[best] = 1;
    order.push_back(best);
    for (int e : xs[best].edges) ++touched[e];
  }
  return order;
}

}  // namespace detail

/// Kauffman bracket <D> in A, normalized so that <U> = 1.
///
/// State sum evaluated crossing by crossing; partial states that induce the
/// same pairing of open edge ends are merged.
inline LaurentPoly kauffman_bracket(const Diagram& d, int limit = kDefaultBracketLimit) {
  if (d.crossing_count() > limit)
    throw LimitError("bracket: " + std::to_string(d.crossing_count()) +
                     " crossings exceeds limit " + std::to_string(limit));
  if (d.crossing_count() == 0) return LaurentPoly::constant(1);
  const auto& xs = d.crossings();
  const LaurentPoly loop = bracket_loop();
  std::unordered_map<detail::Frontier, LaurentPoly, detail::VectorHash> states;
  states.emplace(detail::Frontier{}, LaurentPoly::constant(1));
  for (int i : detail::bracket_order(xs)) {
    std::unordered_map<detail::Frontier, LaurentPoly, detail::VectorHash> next;
    next.reserve(states.size() * 2);
    for (const auto& [frontier, value] : states) {
      for (int smoothing = 0; smoothing < 2; ++smoothing) {
        const bool a = smoothing == 0;
        detail::Frontier f = frontier;
        int loops = 0;
        for (const auto& arc : detail::smoothing_arcs(xs[i], a))
          loops += detail::add_arc(f, arc[0], arc[1]);
        LaurentPoly v = value.shifted(a ? 1 : -1);
        for (int k = 0; k < loops; ++k) v *= loop;
        auto [it, inserted] = next.try_emplace(std::move(f), v);
        if (!inserted) it->second += v;
      }
    }
    states = std::move(next);
  }
  const auto it = states.find(detail::Frontier{});
  if (states.size() != 1 || it == states.end())
    throw ValidationError("bracket: open ends remain after smoothing every crossing");
  return it->second.divided_exact(loop);
}

/// Jones polynomial V(t) = (-A^3)^(-w) <D> at A = t^(-1/4).
inline LaurentPoly jones_from_bracket(const LaurentPoly& bracket, int writhe_value) {
  const LaurentPoly framing =
      LaurentPoly::monomial(writhe_value % 2 == 0 ? 1 : -1, -3 * writhe_value);
  return (framing * bracket).rescaled(-1, 4);
}

inline LaurentPoly jones(const Diagram& d, int limit = kDefaultBracketLimit) {
  return jones_from_bracket(kauffman_bracket(d, limit), writhe(d));
}

inline std::int64_t determinant_of(const LaurentPoly& jones_poly) {
  const std::int64_t v = jones_poly.evaluate(-1);
  return v < 0 ? -v : v;
}

inline std::int64_t determinant(const Diagram& d, int limit = kDefaultBracketLimit) {
  return determinant_of(jones(d, limit));
}

enum class Chirality { as_tabled, mirrored, amphichiral, undetermined };

inline const char* to_string(Chirality c) {
  switch (c) {
    case Chirality::as_tabled: return "as-tabled";
    case Chirality::mirrored: return "mirrored";
    case Chirality::amphichiral: return "amphichiral";
    case Chirality::undetermined: return "undetermined";
  }
  return "?";
}

inline Chirality chirality_from_string(std::string_view s) {
  if (s == "as-tabled") return Chirality::as_tabled;
  if (s == "mirrored") return Chirality::mirrored;
  if (s == "amphichiral") return Chirality::amphichiral;
  if (s == "undetermined") return Chirality::undetermined;
  throw DataError("unknown chirality '" + std::string(s) + "'");
}

struct KnotId {
  std::string name;
  Chirality chirality = Chirality::as_tabled;

  std::string to_string() const {
    if (chirality == Chirality::mirrored) return "m" + name;
    return name;
  }

  friend bool operator==(const KnotId&, const KnotId&) = default;
  friend bool operator<(const KnotId& a, const KnotId& b) {
    if (a.name != b.name) return knot_name_less(a.name, b.name);
    return static_cast<int>(a.chirality) < static_cast<int>(b.chirality);
  }
};

struct Identification {
  enum class Status { identified, ambiguous, unknown };

  Status status = Status::unknown;
  std::vector<KnotId> matches;  // one entry when identified, all candidates when ambiguous
  LaurentPoly jones;
  std::int64_t det = 0;

  bool identified() const { return status == Status::identified; }
  const KnotId& knot() const { return matches.front(); }
};

inline const char* to_string(Identification::Status s) {
  switch (s) {
    case Identification::Status::identified: return "identified";
    case Identification::Status::ambiguous: return "ambiguous";
    case Identification::Status::unknown: return "unknown";
  }
  return "?";
}

/// Chirality of a diagram with Jones polynomial `v` relative to a record.
inline Chirality chirality_against(const LaurentPoly& v, const KnotRecord& r) {
  const bool same = v == r.jones, flipped = v == r.jones.mirrored();
  if (same && flipped) return r.amphichiral ? Chirality::amphichiral : Chirality::undetermined;
  return same ? Chirality::as_tabled : Chirality::mirrored;
}

/// Identifies a diagram from (Jones up to mirror, det) among table knots
/// with at most `crossing_bound` crossings.
///
/// Sound when the diagram's knot is prime with c <= crossing_bound <=
/// table.horizon(): that knot is then among the candidates.  Jones 1 within
/// the table horizon only matches 0_1.
inline Identification identify_invariants(const LaurentPoly& v, int crossing_bound,
                                          const KnotTable& table) {
  Identification id;
  id.jones = v;
  id.det = determinant_of(v);
  const auto hits = table.lookup(v, id.det, crossing_bound);
  for (const auto* r : hits) id.matches.push_back({r->name, chirality_against(v, *r)});
  if (hits.empty()) id.status = Identification::Status::unknown;
  else if (hits.size() == 1) id.status = Identification::Status::identified;
  else id.status = Identification::Status::ambiguous;
  return id;
}

inline Identification identify(const Diagram& d, int crossing_bound, const KnotTable& table,
                               int limit = kDefaultBracketLimit) {
  return identify_invariants(jones(d, limit), crossing_bound, table);
}

}  // namespace knotfert
