#pragma once

// Builds PD diagrams from braid-like strand pictures: braid closures and
// plat closures.  Strands run upward; generator i crosses positions i and
// i+1 (1-based).  A positive letter draws the strand from bottom-left to
// top-right over the other, which is a positive crossing when both strands
// point up.

#include <array>
#include <span>
#include <string>
#include <vector>

#include "knotfert/codec.hpp"
#include "knotfert/error.hpp"

namespace knotfert {

struct StrandLetter {
  int gen = 1;  // crosses positions gen and gen+1
  bool positive = true;

  friend bool operator==(const StrandLetter&, const StrandLetter&) = default;
};

enum class StrandClosure { braid, plat };

namespace detail {

// Crossing corners in ccw order starting bottom-right.
enum Corner : int { kSE = 0, kNE = 1, kNW = 2, kSW = 3 };

}  // namespace detail

/// PD of the closure of a strand picture.  Throws NonKnotClosureError when the
/// closure has more than one component.
inline Diagram close_strands(int strands, std::span<const StrandLetter> word,
                             StrandClosure closure) {
  if (strands < 1) throw ValidationError("close_strands: need at least one strand");
  if (closure == StrandClosure::plat && strands % 2 != 0)
    throw ValidationError("close_strands: plat closure needs an even number of strands");
  for (const auto& l : word)
    if (l.gen < 1 || l.gen >= strands)
      throw ValidationError("close_strands: generator " + std::to_string(l.gen) +
                            " out of range for " + std::to_string(strands) + " strands");

  const int c = static_cast<int>(word.size());
  const int bottom = 4 * c, top = 4 * c + strands, nodes = 4 * c + 2 * strands;
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(nodes));
  auto link = [&](int a, int b) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  };
  std::vector<int> dangling(static_cast<std::size_t>(strands));
  for (int p = 0; p < strands; ++p) dangling[p] = bottom + p;
  for (int k = 0; k < c; ++k) {
    const int left = word[k].gen - 1, right = word[k].gen;
    link(dangling[left], 4 * k + detail::kSW);
    link(dangling[right], 4 * k + detail::kSE);
    dangling[left] = 4 * k + detail::kNW;
    dangling[right] = 4 * k + detail::kNE;
  }
  for (int p = 0; p < strands; ++p) link(dangling[p], top + p);
  if (closure == StrandClosure::braid) {
    for (int p = 0; p < strands; ++p) link(top + p, bottom + p);
  } else {
    for (int p = 0; p < strands; p += 2) {
      link(bottom + p, bottom + p + 1);
      link(top + p, top + p + 1);
    }
  }

  if (c == 0) {
    detail::UnionFind uf(static_cast<std::size_t>(nodes));
    int loops = nodes;
    for (int v = 0; v < nodes; ++v)
      for (int w : adj[v]) loops -= uf.unite(v, w) ? 1 : 0;
    if (loops != 1)
      throw NonKnotClosureError("closure of the empty word has " + std::to_string(loops) +
                                " components");
    return Diagram{};
  }

  // Follow wires from a crossing corner through ports to the next corner.
  std::vector<char> port_seen(static_cast<std::size_t>(nodes), 0);
  auto follow = [&](int corner) {
    int prev = corner, cur = adj[corner][0];
    while (cur >= 4 * c) {
      port_seen[cur] = 1;
      const auto& a = adj[cur];
      const int nxt = (a[0] == prev) ? a[1] : a[0];
      prev = cur;
      cur = nxt;
    }
    return cur;
  };

  std::vector<int> label(static_cast<std::size_t>(4 * c), 0);
  std::vector<char> is_entry(static_cast<std::size_t>(4 * c), 0);
  const int start = detail::kSW;  // crossing 0, entered from below-left
  int entry = start, counter = 0;
  do {
    is_entry[entry] = 1;
    const int exit = 4 * (entry / 4) + (entry % 4 + 2) % 4;
    ++counter;
    label[exit] = counter;
    const int next = follow(exit);
    label[next] = counter;
    entry = next;
    if (counter > 2 * c) break;
  } while (entry != start);

  int labelled = 0;
  for (int v : label) labelled += (v != 0);
  bool ports_ok = true;
  for (int p = 4 * c; p < nodes; ++p) ports_ok = ports_ok && port_seen[p];
  if (counter != 2 * c || labelled != 4 * c || !ports_ok)
    throw NonKnotClosureError("strand closure has more than one component");

  std::vector<Crossing> xs;
  xs.reserve(static_cast<std::size_t>(c));
  for (int k = 0; k < c; ++k) {
    // Under strand: SE-NW for a positive letter, SW-NE for a negative one.
    const int u1 = word[k].positive ? detail::kSE : detail::kSW;
    const int u2 = (u1 + 2) % 4;
    const int u = is_entry[4 * k + u1] ? u1 : u2;
    Crossing x;
    for (int s = 0; s < 4; ++s) x.edges[s] = label[4 * k + (u + s) % 4];
    xs.push_back(x);
  }
  return Diagram(std::move(xs));
}

/// Closure of the 2-braid sigma_1^q: the torus knot T(2,q) for odd q >= 3.
inline Diagram torus_T2_diagram(int q) {
  if (q < 3 || q % 2 == 0)
    throw ValidationError("torus_T2_diagram: q must be odd and >= 3 (got " + std::to_string(q) +
                          ")");
  std::vector<StrandLetter> word(static_cast<std::size_t>(q), StrandLetter{1, true});
  return close_strands(2, word, StrandClosure::braid);
}

/// Standard alternating diagram of the twist knot with k crossings: a clasp
/// of two crossings plus a row of k-2 half twists, drawn as the 4-plat
/// sigma_2^(k-2) sigma_1^-1 sigma_2.
inline Diagram twist_knot_diagram(int k) {
  if (k < 3) throw ValidationError("twist_knot_diagram: k must be >= 3 (got " +
                                   std::to_string(k) + ")");
  std::vector<StrandLetter> word;
  for (int i = 0; i < k - 2; ++i) word.push_back({2, true});
  word.push_back({1, false});
  word.push_back({2, true});
  return close_strands(4, word, StrandClosure::plat);
}

}  // namespace knotfert
