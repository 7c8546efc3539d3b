#pragma once

// Three-strand braids over the band generators
//   a1 = s1,  a2 = s2,  a3 = s2 s1 s2^-1,
// with reduced Burau matrices as the equality oracle and a bounded
// breadth-first search for the shortest band word in a conjugacy class.

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "knotfert/closure.hpp"
#include "knotfert/codec.hpp"
#include "knotfert/error.hpp"
#include "knotfert/laurent.hpp"

namespace knotfert {

struct BandLetter {
  int index = 1;  // 1, 2 or 3
  int sign = 1;   // +1 or -1

  BandLetter inverse() const { return {index, -sign}; }
  friend bool operator==(const BandLetter&, const BandLetter&) = default;
};

struct BandWord {
  std::vector<BandLetter> letters;

  int length() const { return static_cast<int>(letters.size()); }

  /// Unsigned letter counts {A1, A2, A3}.
  std::array<int, 3> counts() const {
    std::array<int, 3> a{0, 0, 0};
    for (const auto& l : letters) ++a[static_cast<std::size_t>(l.index - 1)];
    return a;
  }

  std::string to_string() const {
    if (letters.empty()) return "e";
    std::string out;
    for (const auto& l : letters) {
      if (!out.empty()) out += ' ';
      out += 'a' + std::to_string(l.index);
      if (l.sign < 0) out += "^-1";
    }
    return out;
  }

  friend bool operator==(const BandWord&, const BandWord&) = default;
};

using SigmaWord = std::vector<StrandLetter>;

inline std::string to_string(const SigmaWord& w) {
  if (w.empty()) return "e";
  std::string out;
  for (const auto& l : w) {
    if (!out.empty()) out += ' ';
    out += 's' + std::to_string(l.gen);
    if (!l.positive) out += "^-1";
  }
  return out;
}

namespace detail {

struct BraidToken {
  char kind;  // 'a' or 's'
  int index;
  int sign;
};

/// Tokens "a1".."a3", "s1", "s2" (also "σ1", "σ2"), optional "^-1" or
/// "^{-1}", separated by whitespace or commas.
inline std::vector<BraidToken> tokenize_braid(std::string_view text) {
  static constexpr std::string_view kSigma = "\xcf\x83";  // UTF-8 sigma
  std::vector<BraidToken> out;
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == ','))
      ++i;
  };
  skip();
  if (text.substr(i) == "e") return out;
  while (i < text.size()) {
    const std::size_t at = i;
    BraidToken t{};
    if (text[i] == 'a' || text[i] == 's') {
      t.kind = text[i];
      ++i;
    } else if (text.substr(i, kSigma.size()) == kSigma) {
      t.kind = 's';
      i += kSigma.size();
    } else {
      throw ParseError("unknown generator symbol at position " + std::to_string(at), at);
    }
    if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i])))
      throw ParseError("expected generator index at position " + std::to_string(i), i);
    t.index = text[i] - '0';
    ++i;
    const int max_index = t.kind == 'a' ? 3 : 2;
    if (t.index < 1 || t.index > max_index ||
        (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))))
      throw ParseError("generator index out of range at position " + std::to_string(at), at);
    t.sign = 1;
    if (i < text.size() && text[i] == '^') {
      if (text.substr(i, 3) == "^-1") i += 3;
      else if (text.substr(i, 5) == "^{-1}") i += 5;
      else throw ParseError("expected ^-1 at position " + std::to_string(i), i);
      t.sign = -1;
    }
    if (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])) && text[i] != ',')
      throw ParseError("unexpected character at position " + std::to_string(i), i);
    out.push_back(t);
    skip();
  }
  return out;
}

}  // namespace detail

/// Parses a word over s1, s2 only.
inline SigmaWord parse_sigma_word(std::string_view text) {
  SigmaWord w;
  for (const auto& t : detail::tokenize_braid(text)) {
    if (t.kind != 's') throw ParseError("band generator in a sigma word", 0);
    w.push_back({t.index, t.sign > 0});
  }
  return w;
}

inline BandWord to_band(const SigmaWord& w) {
  BandWord b;
  for (const auto& l : w) {
    if (l.gen < 1 || l.gen > 2) throw ParseError("unknown generator s" + std::to_string(l.gen), 0);
    b.letters.push_back({l.gen, l.positive ? 1 : -1});
  }
  return b;
}

/// Parses a mixed word; s_i is read as a_i.
inline BandWord parse_band_word(std::string_view text) {
  BandWord b;
  for (const auto& t : detail::tokenize_braid(text)) b.letters.push_back({t.index, t.sign});
  return b;
}

/// Expands a3^{+-1} to s2 s1^{+-1} s2^-1.
inline SigmaWord to_sigma(const BandWord& w) {
  SigmaWord out;
  for (const auto& l : w.letters) {
    if (l.index == 3) {
      out.push_back({2, true});
      out.push_back({1, l.sign > 0});
      out.push_back({2, false});
    } else {
      out.push_back({l.index, l.sign > 0});
    }
  }
  return out;
}

/// A1 + A2 + 3 A3: crossings of the closed braid with each a3 drawn as three.
inline int crossing_count(const BandWord& w) {
  const auto a = w.counts();
  return a[0] + a[1] + 3 * a[2];
}

/// Image of strand positions under the braid's permutation.
inline std::array<int, 3> braid_permutation(const BandWord& w) {
  std::array<int, 3> p{0, 1, 2};
  for (const auto& l : w.letters) {
    const int i = l.index == 1 ? 0 : (l.index == 2 ? 1 : 0);
    const int j = l.index == 1 ? 1 : 2;
    for (auto& x : p) {
      if (x == i) x = j;
      else if (x == j) x = i;
    }
  }
  return p;
}

/// True iff the closure is a knot: the permutation is a 3-cycle.
inline bool closes_to_knot(const BandWord& w) {
  const auto p = braid_permutation(w);
  return p[0] != 0 && p[1] != 1 && p[2] != 2;
}

// ---------------------------------------------------------------- Burau

struct BurauMatrix {
  std::array<LaurentPoly, 4> m;  // row major

  static BurauMatrix identity() {
    return {{LaurentPoly::constant(1), LaurentPoly{}, LaurentPoly{}, LaurentPoly::constant(1)}};
  }

  friend BurauMatrix operator*(const BurauMatrix& x, const BurauMatrix& y) {
    BurauMatrix r;
    r.m[0] = x.m[0] * y.m[0] + x.m[1] * y.m[2];
    r.m[1] = x.m[0] * y.m[1] + x.m[1] * y.m[3];
    r.m[2] = x.m[2] * y.m[0] + x.m[3] * y.m[2];
    r.m[3] = x.m[2] * y.m[1] + x.m[3] * y.m[3];
    return r;
  }

  friend bool operator==(const BurauMatrix&, const BurauMatrix&) = default;

  std::string to_string() const {
    return "[[" + m[0].to_string() + ", " + m[1].to_string() + "], [" + m[2].to_string() + ", " +
           m[3].to_string() + "]]";
  }
};

/// Reduced Burau matrix of a single sigma letter.
inline BurauMatrix burau(const StrandLetter& l) {
  using P = LaurentPoly;
  const P zero, one = P::constant(1);
  if (l.gen == 1) {
    if (l.positive) return {{P::monomial(-1, 1), one, zero, one}};
    return {{P::monomial(-1, -1), P::monomial(1, -1), zero, one}};
  }
  if (l.positive) return {{one, zero, P::monomial(1, 1), P::monomial(-1, 1)}};
  return {{one, zero, one, P::monomial(-1, -1)}};
}

inline BurauMatrix burau(const SigmaWord& w) {
  BurauMatrix r = BurauMatrix::identity();
  for (const auto& l : w) r = r * burau(l);
  return r;
}

inline BurauMatrix burau(const BandWord& w) { return burau(to_sigma(w)); }

// ---------------------------------------------------------- conjugation

/// Index shift i -> i+1 (mod 3), signs kept.  The result is the conjugate
/// d^-1 w d with d = s2 s1 (see rotation_conjugator).
inline BandWord rotate_conjugate(const BandWord& w) {
  BandWord r = w;
  for (auto& l : r.letters) l.index = l.index % 3 + 1;
  return r;
}

/// d = s2 s1 with d^-1 a_i d = a_{i+1}.
inline SigmaWord rotation_conjugator() { return {{2, true}, {1, true}}; }

inline SigmaWord inverse(const SigmaWord& w) {
  SigmaWord r(w.rbegin(), w.rend());
  for (auto& l : r) l.positive = !l.positive;
  return r;
}

inline BandWord inverse(const BandWord& w) {
  BandWord r;
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) r.letters.push_back(it->inverse());
  return r;
}

// ------------------------------------------------------------------ BFS

struct BandSearchOptions {
  int depth = 64;              // BFS layers
  std::size_t budget = 1'000'000;  // distinct words
};

struct BandSearchResult {
  int value = 0;     // shortest length found
  bool exact = false;
  BandWord witness;  // a word of that length
  std::size_t states = 0;
  int layers = 0;
};

namespace detail {

/// Letter code: 2*(index-1) + (sign < 0).
using Code = std::string;

inline Code encode(const BandWord& w) {
  Code c;
  for (const auto& l : w.letters) c.push_back(static_cast<char>(2 * (l.index - 1) + (l.sign < 0)));
  return c;
}

inline BandWord decode(const Code& c) {
  BandWord w;
  for (char x : c) w.letters.push_back({x / 2 + 1, (x & 1) ? -1 : 1});
  return w;
}

inline char code_inverse(char x) { return static_cast<char>(x ^ 1); }
inline char code_rotate(char x) { return static_cast<char>((x / 2 + 1) % 3 * 2 + (x & 1)); }

/// Representative of a word under cyclic rotation and index rotation.
inline Code canonical_code(const Code& c) {
  if (c.empty()) return c;
  Code best;
  Code r = c;
  for (int k = 0; k < 3; ++k) {
    for (std::size_t s = 0; s < r.size(); ++s) {
      Code rot = r.substr(s) + r.substr(0, s);
      if (best.empty() || rot < best) best = std::move(rot);
    }
    for (auto& x : r) x = code_rotate(x);
  }
  return best;
}

/// Length-two rewrites (x y) -> (z w) that hold in B3: the band relations
/// a2 a1 = a1 a3 = a3 a2, their inverses, and the mixed forms
/// z^-1 x = w y^-1, x^-1 z = y w^-1 obtained from x y = z w.
inline const std::vector<std::array<char, 4>>& band_rewrites() {
  static const std::vector<std::array<char, 4>> rules = [] {
    const std::array<std::array<char, 2>, 3> equal{{{2, 0}, {0, 4}, {4, 2}}};
    std::vector<std::array<char, 4>> r;
    for (const auto& l : equal)
      for (const auto& m : equal) {
        if (l == m) continue;
        const char x = l[0], y = l[1], z = m[0], w = m[1];
        const char xi = code_inverse(x), yi = code_inverse(y), zi = code_inverse(z),
                   wi = code_inverse(w);
        r.push_back({x, y, z, w});
        r.push_back({yi, xi, wi, zi});
        r.push_back({zi, x, w, yi});
        r.push_back({xi, z, y, wi});
      }
    std::sort(r.begin(), r.end());
    r.erase(std::unique(r.begin(), r.end()), r.end());
    return r;
  }();
  return rules;
}

/// Every word one move away from the cyclic word `c`.
inline std::vector<Code> band_neighbors(const Code& c) {
  std::vector<Code> out;
  const std::size_t n = c.size();
  if (n == 0) return out;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = (i + 1) % n;
    if (n >= 2 && c[j] == code_inverse(c[i])) {
      // Cancel the cyclically adjacent pair (i, j).
      Code rot = c.substr(i) + c.substr(0, i);
      out.push_back(rot.substr(2));
    }
    if (n < 2) continue;
    for (const auto& r : band_rewrites()) {
      if (c[i] != r[0] || c[j] != r[1]) continue;
      Code d = c;
      d[i] = r[2];
      d[j] = r[3];
      out.push_back(std::move(d));
    }
  }
  return out;
}

}  // namespace detail

/// Shortest band word found in the conjugacy class of `w` by breadth-first
/// search over cyclic rotation, index rotation, the band relations and free
/// cancellation.  `exact` is true iff the reachable set was exhausted within
/// the depth and state budget.
inline BandSearchResult min_band_length(const BandWord& w, const BandSearchOptions& opt = {}) {
  BandSearchResult res;
  const detail::Code start = detail::canonical_code(detail::encode(w));
  std::unordered_set<detail::Code> seen{start};
  std::vector<detail::Code> frontier{start};
  detail::Code best = start;
  bool truncated = false;
  int layer = 0;
  while (!frontier.empty()) {
    if (layer >= opt.depth) {
      truncated = true;
      break;
    }
    std::vector<detail::Code> next;
    for (const auto& c : frontier) {
      for (auto& nb : detail::band_neighbors(c)) {
        auto canon = detail::canonical_code(nb);
        if (seen.count(canon)) continue;
        if (seen.size() >= opt.budget) {
          truncated = true;
          break;
        }
        if (canon.size() < best.size() || (canon.size() == best.size() && canon < best))
          best = canon;
        seen.insert(canon);
        next.push_back(std::move(canon));
      }
      if (truncated) break;
    }
    if (truncated) break;
    frontier = std::move(next);
    ++layer;
  }
  res.value = static_cast<int>(best.size());
  res.exact = !truncated;
  res.witness = detail::decode(best);
  res.states = seen.size();
  res.layers = layer;
  return res;
}

struct BennequinGenus {
  int g = 0;           // exact genus, or an upper bound when !exact
  bool exact = false;
  BandSearchResult search;
};

/// Genus from 2g - 1 = -3 + min l_B.
inline BennequinGenus bennequin_genus(const BandWord& w, const BandSearchOptions& opt = {}) {
  if (!closes_to_knot(w))
    throw NonKnotClosureError("closure of '" + w.to_string() +
                              "' is not a knot (permutation is not a 3-cycle)");
  BennequinGenus out;
  out.search = min_band_length(w, opt);
  out.g = (out.search.value - 2) / 2;
  out.exact = out.search.exact;
  return out;
}

/// PD of the closed braid, each a3 expanded to three crossings.
inline Diagram closure_pd(const SigmaWord& w) {
  return close_strands(3, w, StrandClosure::braid);
}

inline Diagram closure_pd(const BandWord& w) {
  if (!closes_to_knot(w))
    throw NonKnotClosureError("closure of '" + w.to_string() + "' is not a knot");
  return closure_pd(to_sigma(w));
}

}  // namespace knotfert
