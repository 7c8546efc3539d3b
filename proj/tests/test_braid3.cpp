#include <gtest/gtest.h>

#include "knotfert/knotfert.hpp"
#include "support/corpus.hpp"

using namespace knotfert;

namespace {

LaurentPoly trace(const BurauMatrix& m) { return m.m[0] + m.m[3]; }
LaurentPoly det(const BurauMatrix& m) { return m.m[0] * m.m[3] - m.m[1] * m.m[2]; }

SigmaWord concat(std::initializer_list<SigmaWord> parts) {
  SigmaWord out;
  for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

std::string identify_name(const Diagram& d) {
  const auto id = identify(d, 10, corpus::table());
  return id.identified() ? id.knot().name : "?";
}

}  // namespace

TEST(Braid3, ParseForms) {
  EXPECT_EQ(parse_band_word("a1 a3^-1, a2").to_string(), "a1 a3^-1 a2");
  EXPECT_EQ(parse_band_word("a1^{-1}").to_string(), "a1^-1");
  EXPECT_EQ(parse_band_word("s1 s2^-1").to_string(), "a1 a2^-1");
  EXPECT_EQ(parse_band_word("\xcf\x83" "1 \xcf\x83" "2").to_string(), "a1 a2");
  EXPECT_EQ(parse_band_word("e").length(), 0);
  EXPECT_EQ(to_string(parse_sigma_word("s2 s1^-1")), "s2 s1^-1");
}

TEST(Braid3, ParseErrors) {
  EXPECT_THROW(parse_band_word("a4"), ParseError);
  EXPECT_THROW(parse_band_word("a12"), ParseError);
  EXPECT_THROW(parse_band_word("b1"), ParseError);
  EXPECT_THROW(parse_band_word("a1^2"), ParseError);
  EXPECT_THROW(parse_sigma_word("s3"), ParseError);
  EXPECT_THROW(parse_sigma_word("a1"), ParseError);
  try {
    parse_band_word("a1 a2 x");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 6u);
  }
}

TEST(Braid3, BurauGroupRelations) {
  const auto s1 = parse_sigma_word("s1"), s2 = parse_sigma_word("s2");
  EXPECT_EQ(burau(concat({s1, inverse(s1)})), BurauMatrix::identity());
  EXPECT_EQ(burau(concat({s2, inverse(s2)})), BurauMatrix::identity());
  EXPECT_EQ(burau(concat({s1, s2, s1})), burau(concat({s2, s1, s2})));
  EXPECT_NE(burau(concat({s1, s2})), burau(concat({s2, s1})));
}

TEST(Braid3, BandGenerator) {
  EXPECT_EQ(burau(parse_band_word("a3")), burau(parse_sigma_word("s2 s1 s2^-1")));
  EXPECT_EQ(burau(parse_band_word("a3")), burau(parse_sigma_word("s1^-1 s2 s1")));
}

TEST(Braid3, BandRelations) {
  const auto a = burau(parse_band_word("a2 a1"));
  EXPECT_EQ(burau(parse_band_word("a1 a3")), a);
  EXPECT_EQ(burau(parse_band_word("a3 a2")), a);
}

TEST(Braid3, BurauIsHomomorphism) {
  const auto u = parse_band_word("a1 a3^-1 a2 a2");
  const auto v = parse_band_word("a3 a1^-1 a2^-1");
  BandWord uv = u;
  uv.letters.insert(uv.letters.end(), v.letters.begin(), v.letters.end());
  EXPECT_EQ(burau(uv), burau(u) * burau(v));
  EXPECT_EQ(burau(u) * burau(inverse(u)), BurauMatrix::identity());
}

TEST(Braid3, RotationIsConjugation) {
  const SigmaWord d = rotation_conjugator();
  for (int i = 1; i <= 3; ++i) {
    const BandWord ai{{{i, 1}}};
    const BandWord next{{{i % 3 + 1, 1}}};
    EXPECT_EQ(burau(concat({inverse(d), to_sigma(ai), d})), burau(next)) << i;
  }
  const auto w = parse_band_word("a1 a1 a3^-1 a2");
  EXPECT_EQ(burau(concat({inverse(d), to_sigma(w), d})), burau(rotate_conjugate(w)));
}

TEST(Braid3, OppositeOrderDoesNotRotate) {
  const SigmaWord d = parse_sigma_word("s1 s2");
  int ok = 0;
  for (int i = 1; i <= 3; ++i) {
    const BandWord ai{{{i, 1}}};
    const BandWord next{{{i % 3 + 1, 1}}};
    ok += burau(concat({d, to_sigma(ai), inverse(d)})) == burau(next);
  }
  EXPECT_LT(ok, 3);
}

TEST(Braid3, MovesPreserveConjugacyInvariants) {
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<int> idx(1, 3), sgn(0, 1), len(2, 7);
  for (int trial = 0; trial < 60; ++trial) {
    BandWord w;
    const int n = len(rng);
    for (int k = 0; k < n; ++k) w.letters.push_back({idx(rng), sgn(rng) ? 1 : -1});
    const auto m = burau(w);
    for (const auto& c : detail::band_neighbors(detail::encode(w))) {
      const auto nb = burau(detail::decode(c));
      EXPECT_EQ(trace(nb), trace(m)) << w.to_string();
      EXPECT_EQ(det(nb), det(m)) << w.to_string();
    }
    const auto canon = burau(detail::decode(detail::canonical_code(detail::encode(w))));
    EXPECT_EQ(trace(canon), trace(m));
  }
}

TEST(Braid3, RewritesAreGroupIdentities) {
  for (const auto& r : detail::band_rewrites()) {
    const auto lhs = detail::decode(std::string{r[0], r[1]});
    const auto rhs = detail::decode(std::string{r[2], r[3]});
    EXPECT_EQ(burau(lhs), burau(rhs)) << lhs.to_string() << " = " << rhs.to_string();
  }
}

TEST(Braid3, ShortestBandWords) {
  struct Case {
    const char* word;
    int length;
    int genus;
    const char* knot;
  };
  const Case cases[] = {
      {"a1 a1 a1 a2", 4, 1, "3_1"},
      {"a1 a1 a1 a1 a1 a2", 6, 2, "5_1"},
      {"a1 a1 a1 a1 a1 a1 a1 a2", 8, 3, "7_1"},
      {"a1 a2 a1 a2 a1 a2 a1 a2", 8, 3, "8_19"},
      {"a1 a2", 2, 0, "0_1"},
      {"a1 a2^-1 a1 a2^-1", 4, 1, "4_1"},
  };
  for (const auto& c : cases) {
    const auto w = parse_band_word(c.word);
    const auto g = bennequin_genus(w);
    EXPECT_TRUE(g.exact) << c.word;
    EXPECT_EQ(g.search.value, c.length) << c.word;
    EXPECT_EQ(g.g, c.genus) << c.word;
    if (std::string(c.knot) != "5_1") EXPECT_EQ(identify_name(closure_pd(w)), c.knot) << c.word;
    EXPECT_EQ(trace(burau(g.search.witness)), trace(burau(w))) << c.word;
  }
}

TEST(Braid3, FreeCancellation) {
  const auto r = min_band_length(parse_band_word("a1 a1^-1"));
  EXPECT_EQ(r.value, 0);
  EXPECT_TRUE(r.exact);
}

TEST(Braid3, BudgetMakesResultInexact) {
  const auto r = min_band_length(parse_band_word("a1 a2 a1 a2 a1 a2 a1 a2"), {64, 3});
  EXPECT_FALSE(r.exact);
  EXPECT_LE(r.value, 8);
}

TEST(Braid3, NonKnotClosures) {
  EXPECT_THROW(bennequin_genus(parse_band_word("a1")), NonKnotClosureError);
  EXPECT_THROW(bennequin_genus(parse_band_word("e")), NonKnotClosureError);
  EXPECT_THROW(closure_pd(parse_band_word("a1 a1")), NonKnotClosureError);
  EXPECT_FALSE(closes_to_knot(parse_band_word("a3")));
  EXPECT_TRUE(closes_to_knot(parse_band_word("a3 a1")));
}

TEST(Braid3, ClosureCrossingCount) {
  for (const char* text : {"a1 a2", "a3 a1 a1", "a1 a3^-1 a2 a3"}) {
    const auto w = parse_band_word(text);
    if (!closes_to_knot(w)) continue;
    const Diagram d = closure_pd(w);
    EXPECT_TRUE(validate(d).empty()) << text;
    EXPECT_EQ(d.crossing_count(), crossing_count(w)) << text;
  }
}

TEST(Braid3, ClosureInvariantUnderRotation) {
  const auto w = parse_band_word("a1 a1 a1 a3^-1");
  ASSERT_TRUE(closes_to_knot(w));
  const auto v = jones(closure_pd(w));
  EXPECT_EQ(jones(closure_pd(rotate_conjugate(w))), v);
  EXPECT_EQ(jones(closure_pd(rotate_conjugate(rotate_conjugate(w)))), v);
}
