#pragma once

// Independent reference computations used by the tests.  Each one is the
// slow, obvious version of something the library does cleverly.

#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "knotfert/codec.hpp"
#include "knotfert/laurent.hpp"

namespace oracle {

using knotfert::Crossing;
using knotfert::Diagram;
using knotfert::LaurentPoly;

inline int succ(int label, int n) { return label % n + 1; }

/// Seifert circles as cycles of the edge map e -> (other incoming edge at
/// the crossing where e ends) + 1.
inline int seifert_circles(const std::vector<Crossing>& xs) {
  const int n = 2 * static_cast<int>(xs.size());
  if (n == 0) return 1;
  std::vector<int> other_in(static_cast<std::size_t>(n + 1), 0);
  for (const auto& x : xs) {
    std::vector<int> ins;
    for (int k = 0; k < 4; ++k) {
      const int e = x.edges[k];
      // e enters x iff its successor also sits on x, opposite to it.
      if (x.edges[(k + 2) % 4] == succ(e, n)) ins.push_back(e);
    }
    if (n == 2) ins = {1, 2};  // one-crossing kink: strands 1->2 and 2->1
    other_in[ins[0]] = ins[1];
    other_in[ins[1]] = ins[0];
  }
  std::vector<char> seen(static_cast<std::size_t>(n + 1), 0);
  int cycles = 0;
  for (int e = 1; e <= n; ++e) {
    if (seen[e]) continue;
    ++cycles;
    for (int f = e; !seen[f]; f = succ(other_in[f], n)) seen[f] = 1;
  }
  return cycles;
}

/// Sign from the over strand: X[a,b,c,d] is positive iff it runs d -> b.
inline int writhe(const Diagram& d) {
  const int n = d.edge_count();
  int w = 0;
  for (const auto& x : d.crossings()) {
    const int b = x.edges[1], dd = x.edges[3];
    if (n == 2) {
      // One crossing: edge a already ends at the under slot, so the over
      // strand enters at whichever of b, d carries the other label.
      w += (dd != x.edges[0]) ? 1 : -1;
      continue;
    }
    w += (succ(dd, n) == b) ? 1 : -1;
  }
  return w;
}

struct DSU {
  std::vector<int> p;
  explicit DSU(int n) : p(static_cast<std::size_t>(n)) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
  void unite(int a, int b) { p[find(a)] = find(b); }
};

/// Naive state sum: all 2^c states, loops counted with union-find on edge
/// labels.  A-smoothing of X[a,b,c,d] joins a-b and c-d.  Normalized so the
/// round unknot is 1.
inline LaurentPoly bracket(const Diagram& d) {
  const int c = d.crossing_count();
  if (c == 0) return LaurentPoly::constant(1);
  const int n = d.edge_count();
  const LaurentPoly delta = LaurentPoly::monomial(-1, 2) + LaurentPoly::monomial(-1, -2);
  std::map<std::pair<int, int>, std::int64_t> by_exp_loops;  // (A exponent, loops) -> count
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << c); ++s) {
    DSU u(n + 1);
    int a_count = 0;
    for (int i = 0; i < c; ++i) {
      const auto& e = d.crossings()[static_cast<std::size_t>(i)].edges;
      if (((s >> i) & 1u) == 0) {
        ++a_count;
        u.unite(e[0], e[1]);
        u.unite(e[2], e[3]);
      } else {
        u.unite(e[0], e[3]);
        u.unite(e[1], e[2]);
      }
    }
    int loops = 0;
    for (int x = 1; x <= n; ++x) loops += (u.find(x) == x);
    ++by_exp_loops[{a_count - (c - a_count), loops}];
  }
  LaurentPoly total;
  for (const auto& [key, count] : by_exp_loops) {
    LaurentPoly term = LaurentPoly::monomial(count, key.first);
    for (int k = 1; k < key.second; ++k) term *= delta;
    total += term;
  }
  return total;
}

/// V(t) = (-A^3)^(-w) <D> with A = t^(-1/4).
inline LaurentPoly jones(const Diagram& d) {
  const int w = oracle::writhe(d);
  const LaurentPoly b = oracle::bracket(d);
  std::map<int, std::int64_t> terms;
  const std::int64_t sign = (w % 2 == 0) ? 1 : -1;
  for (const auto& [e, coef] : b.terms()) {
    const int a_exp = e - 3 * w;
    if (a_exp % 4 != 0) throw std::logic_error("oracle: exponent not divisible by 4");
    terms[-a_exp / 4] += sign * coef;
  }
  return LaurentPoly::from_terms(terms);
}

inline std::int64_t det(const LaurentPoly& v) {
  std::int64_t s = 0;
  for (const auto& [e, coef] : v.terms()) s += (e % 2 == 0 ? 1 : -1) * coef;
  return s < 0 ? -s : s;
}

}  // namespace oracle
