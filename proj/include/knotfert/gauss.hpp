#pragma once

// Shadows from Gauss words: a closed curve visiting c crossings twice each,
// plus a handedness per crossing saying which way the second pass cuts the
// first.  Used for random shadow generation and exhaustive shadow census.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <span>
#include <unordered_set>
#include <vector>

#include "knotfert/codec.hpp"
#include "knotfert/diagram.hpp"

namespace knotfert {

/// Builds the flat crossings of a Gauss word.  `word[p]` is the crossing
/// visited at position p (0-based); each id in [0, c) appears exactly twice.
/// Edge p+1 ends at visit p.  `handedness[i]` > 0 means the second pass
/// through crossing i goes right-to-left across the first.
/// Returns nullopt when the word and handedness do not describe a curve on
/// the sphere.
inline std::optional<Shadow> shadow_from_gauss(std::span<const int> word,
                                               std::span<const int> handedness) {
  const int n = static_cast<int>(word.size());
  const int c = n / 2;
  if (n % 2 != 0 || static_cast<int>(handedness.size()) != c) return std::nullopt;
  if (c == 0) return Shadow{};
  std::vector<std::array<int, 2>> visits(static_cast<std::size_t>(c), {-1, -1});
  for (int p = 0; p < n; ++p) {
    const int id = word[p];
    if (id < 0 || id >= c) return std::nullopt;
    auto& v = visits[id];
    if (v[0] < 0) v[0] = p;
    else if (v[1] < 0) v[1] = p;
    else return std::nullopt;
  }
  std::vector<Crossing> xs;
  xs.reserve(static_cast<std::size_t>(c));
  for (int i = 0; i < c; ++i) {
    if (visits[i][1] < 0) return std::nullopt;
    const int in1 = visits[i][0] + 1, in2 = visits[i][1] + 1;
    const int out1 = detail::successor(in1, n), out2 = detail::successor(in2, n);
    Crossing x;
    x.kind = CrossingKind::flat;
    if (handedness[i] > 0) x.edges = {in1, out2, out1, in2};
    else x.edges = {in1, in2, out1, out2};
    x.edges = detail::min_rotation(x.edges);
    xs.push_back(x);
  }
  if (!validate_crossings(xs, CrossingKind::flat).empty()) return std::nullopt;
  return Shadow(std::move(xs));
}

/// Uniformly random Gauss word respecting the planar parity condition and a
/// random handedness, retried until it closes up on the sphere.
template <class Rng>
Shadow random_shadow(int crossings, Rng& rng, long max_tries = 50'000'000) {
  if (crossings == 0) return Shadow{};
  const int c = crossings, n = 2 * c;
  std::vector<int> evens(static_cast<std::size_t>(c));
  std::iota(evens.begin(), evens.end(), 0);
  std::vector<int> word(static_cast<std::size_t>(n)), hand(static_cast<std::size_t>(c));
  std::bernoulli_distribution coin(0.5);
  for (long t = 0; t < max_tries; ++t) {
    std::shuffle(evens.begin(), evens.end(), rng);
    for (int i = 0; i < c; ++i) {
      word[static_cast<std::size_t>(2 * i)] = i;
      word[static_cast<std::size_t>(2 * evens[i] + 1)] = i;
    }
    for (auto& h : hand) h = coin(rng) ? 1 : -1;
    if (auto s = shadow_from_gauss(word, hand)) return *s;
  }
  throw LimitError("random_shadow: no planar shadow found");
}

struct CensusOptions {
  bool skip_kinks = true;  // drop words with a crossing visited twice in a row
};

/// Every shadow with `crossings` crossings, one per relabeling class, in
/// canonical form.  Exponential: intended for c <= 8.
inline std::vector<Shadow> shadow_census(int crossings, const CensusOptions& opt = {}) {
  std::vector<Shadow> out;
  if (crossings == 0) {
    out.emplace_back();
    return out;
  }
  const int c = crossings, n = 2 * c;
  std::vector<int> perm(static_cast<std::size_t>(c));
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<int> word(static_cast<std::size_t>(n)), hand(static_cast<std::size_t>(c));
  std::unordered_set<std::string> seen;
  do {
    bool kink = false;
    for (int i = 0; i < c && opt.skip_kinks; ++i) {
      const int odd = 2 * i, even = 2 * perm[i] + 1;
      const int gap = std::abs(odd - even);
      if (gap == 1 || gap == n - 1) kink = true;
    }
    if (kink) continue;
    for (int i = 0; i < c; ++i) {
      word[static_cast<std::size_t>(2 * i)] = i;
      word[static_cast<std::size_t>(2 * perm[i] + 1)] = i;
    }
    for (std::uint32_t h = 0; h < (1u << c); ++h) {
      for (int i = 0; i < c; ++i) hand[i] = ((h >> i) & 1u) ? 1 : -1;
      auto s = shadow_from_gauss(word, hand);
      if (!s) continue;
      auto canon = canonical_shadow(*s).shadow;
      if (seen.insert(serialize_shadow(canon)).second) out.push_back(std::move(canon));
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  std::sort(out.begin(), out.end(), [](const Shadow& a, const Shadow& b) {
    return a.crossings() < b.crossings();
  });
  return out;
}

}  // namespace knotfert
