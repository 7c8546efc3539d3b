#pragma once

// Combinatorics of diagrams and shadows: orientation, Seifert smoothing,
// genus, writhe, mirroring, and the 2^c resolutions of a shadow.

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "knotfert/codec.hpp"
#include "knotfert/error.hpp"

namespace knotfert {

inline constexpr int kDefaultEnumerationLimit = 24;

/// +1 when the over strand runs d -> b, -1 when it runs b -> d.
inline int crossing_sign(const Crossing& x, int num_edges) {
  const auto slots = detail::incoming_slots(x, num_edges);
  if (!slots || x.kind != CrossingKind::oriented)
    throw ValidationError("crossing_sign: not an oriented crossing");
  return (*slots)[1] == 3 ? 1 : -1;
}

inline int writhe(const Diagram& d) {
  int w = 0;
  for (const auto& x : d.crossings()) w += crossing_sign(x, d.edge_count());
  return w;
}

/// Swaps over and under at every crossing.  An involution.
inline Diagram mirror(const Diagram& d) {
  std::vector<Crossing> xs;
  xs.reserve(d.crossings().size());
  const int n = d.edge_count();
  for (const auto& x : d.crossings()) {
    const auto& e = x.edges;
    Crossing m;
    if (crossing_sign(x, n) > 0) m.edges = {e[3], e[0], e[1], e[2]};
    else m.edges = {e[1], e[2], e[3], e[0]};
    xs.push_back(m);
  }
  return Diagram(std::move(xs));
}

namespace detail {

/// Seifert circles of a valid crossing list: smooth every crossing so that
/// each incoming edge continues along the adjacent outgoing edge of the other
/// strand, then count the resulting cycles.
inline int seifert_circles(std::span<const Crossing> xs) {
  const int c = static_cast<int>(xs.size());
  if (c == 0) return 1;
  const int n = 2 * c;
  std::vector<int> next(static_cast<std::size_t>(n + 1), 0);
  for (const auto& x : xs) {
    const auto slots = incoming_slots(x, n);
    if (!slots) throw ValidationError("seifert_circles: invalid crossing");
    for (int k = 0; k < 2; ++k) {
      const int in = (*slots)[k];
      const int other_in = (*slots)[1 - k];
      const int out = ((in + 1) % 4 == other_in) ? (in + 3) % 4 : (in + 1) % 4;
      next[x.edges[in]] = x.edges[out];
    }
  }
  std::vector<char> seen(static_cast<std::size_t>(n + 1), 0);
  int cycles = 0;
  for (int e = 1; e <= n; ++e) {
    if (seen[e]) continue;
    ++cycles;
    for (int f = e; !seen[f]; f = next[f]) seen[f] = 1;
  }
  return cycles;
}

}  // namespace detail

inline int seifert_circle_count(const Diagram& d) { return detail::seifert_circles(d.crossings()); }
inline int seifert_circle_count(const Shadow& s) { return detail::seifert_circles(s.crossings()); }

struct DiagramStats {
  int c = 0;  // crossings
  int s = 0;  // Seifert circles
  int g = 0;  // genus of the Seifert-algorithm surface
  int w = 0;  // writhe

  friend bool operator==(const DiagramStats&, const DiagramStats&) = default;
};

namespace detail {
inline int genus_from_counts(int c, int s) {
  const int twice = 1 + c - s;
  if (twice < 0 || twice % 2 != 0)
    throw ValidationError("genus: 1 + c - s = " + std::to_string(twice) +
                          " is not a nonnegative even integer");
  return twice / 2;
}
}  // namespace detail

inline DiagramStats stats(const Diagram& d) {
  DiagramStats st;
  st.c = d.crossing_count();
  st.s = seifert_circle_count(d);
  st.g = detail::genus_from_counts(st.c, st.s);
  st.w = writhe(d);
  return st;
}

inline int shadow_genus(const Shadow& s) {
  return detail::genus_from_counts(s.crossing_count(), seifert_circle_count(s));
}

/// One over/under choice per crossing.  Bit i belongs to crossing i.
///
/// Bit 0 puts the strand whose incoming edge label is odd underneath.  On a
/// planar shadow the two incoming labels at a crossing have opposite parity,
/// so the all-zero assignment is always the alternating resolution.
struct Assignment {
  std::uint64_t bits = 0;
  int width = 0;

  bool bit(int i) const { return (bits >> i) & 1u; }

  /// Crossing 0 first, e.g. "010".
  std::string to_string() const {
    std::string out(static_cast<std::size_t>(width), '0');
    for (int i = 0; i < width; ++i)
      if (bit(i)) out[static_cast<std::size_t>(i)] = '1';
    return out;
  }

  static Assignment from_string(std::string_view text) {
    Assignment a;
    a.width = static_cast<int>(text.size());
    if (a.width > 63) throw LimitError("assignment wider than 63 bits");
    for (int i = 0; i < a.width; ++i) {
      if (text[i] == '1') a.bits |= std::uint64_t{1} << i;
      else if (text[i] != '0') throw ParseError("assignment must be a 0/1 string", i);
    }
    return a;
  }

  Assignment complement() const {
    Assignment a = *this;
    a.bits = ~bits & (width >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << width) - 1));
    return a;
  }

  friend bool operator==(const Assignment&, const Assignment&) = default;
  friend auto operator<=>(const Assignment&, const Assignment&) = default;
};

namespace detail {
inline Crossing resolve_crossing(const Crossing& flat, int num_edges, bool bit) {
  const auto slots = incoming_slots(flat, num_edges);
  if (!slots) throw ValidationError("apply: invalid shadow crossing");
  const int in_a = flat.edges[(*slots)[0]];
  const int in_b = flat.edges[(*slots)[1]];
  // Which strand goes under for bit 0: the one entering on an odd label.
  int under_slot = (in_a % 2 == 1) ? (*slots)[0] : (*slots)[1];
  if (in_a % 2 == in_b % 2) under_slot = in_a < in_b ? (*slots)[0] : (*slots)[1];
  if (bit) under_slot = (under_slot == (*slots)[0]) ? (*slots)[1] : (*slots)[0];
  Crossing x;
  for (int k = 0; k < 4; ++k) x.edges[k] = flat.edges[(under_slot + k) % 4];
  return x;
}
}  // namespace detail

inline Diagram apply(const Shadow& s, const Assignment& a) {
  if (a.width != s.crossing_count())
    throw ValidationError("apply: assignment width " + std::to_string(a.width) +
                          " != crossing count " + std::to_string(s.crossing_count()));
  std::vector<Crossing> xs;
  xs.reserve(s.crossings().size());
  for (int i = 0; i < s.crossing_count(); ++i)
    xs.push_back(detail::resolve_crossing(s.crossings()[i], s.edge_count(), a.bit(i)));
  return Diagram(std::move(xs));
}

/// Inverse of apply: the assignment that turns forget(d) into d.
inline Assignment assignment_of(const Diagram& d) {
  const Shadow s = forget(d);
  Assignment a{0, d.crossing_count()};
  for (int i = 0; i < d.crossing_count(); ++i) {
    const Crossing zero = detail::resolve_crossing(s.crossings()[i], s.edge_count(), false);
    if (zero != d.crossings()[i]) a.bits |= std::uint64_t{1} << i;
  }
  return a;
}

inline void check_enumeration_limit(int crossings, int limit) {
  if (crossings > limit)
    throw LimitError("shadow has " + std::to_string(crossings) +
                     " crossings, enumeration limit is " + std::to_string(limit));
  if (crossings > 62) throw LimitError("enumeration beyond 62 crossings is not representable");
}

struct EnumerationOptions {
  int limit = kDefaultEnumerationLimit;
  int jobs = 1;
};

/// Visits every resolution of `s` in increasing assignment order.
///
/// `work(assignment, diagram)` runs on up to `jobs` threads over disjoint
/// contiguous ranges of each block and must not touch shared mutable state.
/// `consume(assignment, result)` runs on the calling thread, in order.
template <class Work, class Consume>
void for_each_resolution(const Shadow& s, const EnumerationOptions& opt, Work&& work,
                         Consume&& consume) {
  check_enumeration_limit(s.crossing_count(), opt.limit);
  const int width = s.crossing_count();
  const std::uint64_t total = std::uint64_t{1} << width;
  using Result = std::invoke_result_t<Work&, const Assignment&, const Diagram&>;
  const int jobs = std::max(1, opt.jobs);
  const std::uint64_t block = std::max<std::uint64_t>(1, std::min<std::uint64_t>(total, 4096u * jobs));
  std::vector<Result> results;
  for (std::uint64_t base = 0; base < total; base += block) {
    const std::uint64_t count = std::min(block, total - base);
    results.assign(static_cast<std::size_t>(count), Result{});
    auto run = [&](std::uint64_t lo, std::uint64_t hi) {
      for (std::uint64_t k = lo; k < hi; ++k) {
        const Assignment a{base + k, width};
        results[static_cast<std::size_t>(k)] = work(a, apply(s, a));
      }
    };
    if (jobs == 1 || count < 64) {
      run(0, count);
    } else {
      std::vector<std::thread> pool;
      const std::uint64_t per = (count + jobs - 1) / jobs;
      for (int j = 0; j < jobs; ++j) {
        const std::uint64_t lo = per * j, hi = std::min(count, lo + per);
        if (lo >= hi) break;
        pool.emplace_back(run, lo, hi);
      }
      for (auto& t : pool) t.join();
    }
    for (std::uint64_t k = 0; k < count; ++k)
      consume(Assignment{base + k, width}, std::move(results[static_cast<std::size_t>(k)]));
  }
}

/// Materializes all 2^c (assignment, diagram) pairs.
inline std::vector<std::pair<Assignment, Diagram>> enumerate_resolutions(
    const Shadow& s, int limit = kDefaultEnumerationLimit) {
  check_enumeration_limit(s.crossing_count(), limit);
  std::vector<std::pair<Assignment, Diagram>> out;
  const std::uint64_t total = std::uint64_t{1} << s.crossing_count();
  out.reserve(static_cast<std::size_t>(total));
  for (std::uint64_t b = 0; b < total; ++b) {
    const Assignment a{b, s.crossing_count()};
    out.emplace_back(a, apply(s, a));
  }
  return out;
}

/// Edge relabeling that keeps the successor convention: optionally reverse
/// the orientation (k -> n+1-k), then rotate labels by `shift`.
struct Relabeling {
  int num_edges = 0;
  int shift = 0;
  bool reversed = false;

  int map(int label) const {
    const int x = reversed ? num_edges + 1 - label : label;
    return (x - 1 + shift) % num_edges + 1;
  }
  int unmap(int label) const {
    const int x = ((label - 1 - shift) % num_edges + num_edges) % num_edges + 1;
    return reversed ? num_edges + 1 - x : x;
  }
};

namespace detail {
inline Crossing relabel_crossing(const Crossing& x, const Relabeling& r, bool inverse) {
  Crossing y = x;
  for (auto& e : y.edges) e = inverse ? r.unmap(e) : r.map(e);
  if (x.kind == CrossingKind::flat) {
    y.edges = min_rotation(y.edges);
  } else if (r.reversed) {
    // The under strand now enters where it used to leave.
    y.edges = {y.edges[2], y.edges[3], y.edges[0], y.edges[1]};
  }
  return y;
}
}  // namespace detail

inline Shadow relabel(const Shadow& s, const Relabeling& r) {
  std::vector<Crossing> xs;
  for (const auto& x : s.crossings()) xs.push_back(detail::relabel_crossing(x, r, false));
  return Shadow(std::move(xs));
}

inline Diagram relabel(const Diagram& d, const Relabeling& r) {
  std::vector<Crossing> xs;
  for (const auto& x : d.crossings()) xs.push_back(detail::relabel_crossing(x, r, false));
  return Diagram(std::move(xs));
}

struct CanonicalShadow {
  Shadow shadow;          // crossings sorted, labels canonical
  Relabeling relabeling;  // maps input labels to canonical labels
};

/// Lexicographically smallest form of `s` over all label rotations and both
/// orientations, with crossings sorted.  Two shadows that differ only by
/// relabeling and crossing order share a canonical form.
inline CanonicalShadow canonical_shadow(const Shadow& s) {
  const int n = s.edge_count();
  if (n == 0) return {s, Relabeling{}};
  std::vector<Crossing> best;
  Relabeling best_r;
  for (int rev = 0; rev < 2; ++rev)
    for (int shift = 0; shift < n; ++shift) {
      const Relabeling r{n, shift, rev == 1};
      std::vector<Crossing> xs;
      xs.reserve(s.crossings().size());
      for (const auto& x : s.crossings()) xs.push_back(detail::relabel_crossing(x, r, false));
      std::sort(xs.begin(), xs.end());
      if (best.empty() || xs < best) {
        best = std::move(xs);
        best_r = r;
      }
    }
  return {Shadow(std::move(best)), best_r};
}

/// Stable 64-bit FNV-1a hash, hex encoded.
inline std::string fnv1a_hex(std::string_view text) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i, h >>= 4) out[static_cast<std::size_t>(i)] = digits[h & 15];
  return out;
}

inline std::string shadow_fingerprint(const Shadow& s) {
  return fnv1a_hex(serialize_shadow(canonical_shadow(s).shadow));
}

/// Carries a diagram on the canonical form of `original` back to the labels
/// and crossing order of `original`.
inline Diagram pull_back(const Diagram& on_canonical, const Shadow& original,
                         const Relabeling& r) {
  if (original.crossing_count() == 0) return Diagram{};
  std::vector<Crossing> mapped;
  for (const auto& x : on_canonical.crossings())
    mapped.push_back(detail::relabel_crossing(x, r, true));
  std::vector<char> used(mapped.size(), 0);
  std::vector<Crossing> ordered;
  for (const auto& target : original.crossings()) {
    bool found = false;
    for (std::size_t k = 0; k < mapped.size(); ++k) {
      if (used[k] || detail::min_rotation(mapped[k].edges) != target.edges) continue;
      used[k] = 1;
      ordered.push_back(mapped[k]);
      found = true;
      break;
    }
    if (!found) throw ValidationError("pull_back: diagram does not lie over the shadow");
  }
  return Diagram(std::move(ordered));
}

}  // namespace knotfert
