#include <gtest/gtest.h>

#include <algorithm>
#include <cstdio>
#include <fstream>

#include "knotfert/knotfert.hpp"
#include "support/corpus.hpp"

using namespace knotfert;

namespace {

bool has_violation(const ValidationReport& r, ViolationKind k) {
  return std::any_of(r.begin(), r.end(), [&](const Violation& v) { return v.kind == k; });
}

}  // namespace

TEST(Codec, ParsesTrefoil) {
  const Diagram d = parse_diagram(corpus::kTrefoil);
  EXPECT_EQ(d.crossing_count(), 3);
  EXPECT_EQ(serialize_diagram(d), corpus::kTrefoil);
}

TEST(Codec, RejectsThreeComponentPd) {
  // Looks like a trefoil but the strands close up into three circles.
  const auto report = validate_text("X[1,4,2,3] X[3,6,4,5] X[5,2,6,1]", CrossingKind::oriented);
  EXPECT_TRUE(has_violation(report, ViolationKind::orientation));
  EXPECT_THROW(parse_diagram("X[1,4,2,3] X[3,6,4,5] X[5,2,6,1]"), ValidationError);
}

TEST(Codec, SingleCrossingWithFourLabels) {
  const auto report = validate_text("X[1,4,2,3]", CrossingKind::oriented);
  ASSERT_FALSE(report.empty());
  EXPECT_TRUE(has_violation(report, ViolationKind::label_range));
  EXPECT_THROW(parse_diagram("X[1,4,2,3]"), ValidationError);
}

TEST(Codec, FigureEightRoundTrip) {
  const Diagram d = parse_diagram(corpus::kFigureEight);
  EXPECT_EQ(parse_diagram(serialize_diagram(d)), d);
  EXPECT_EQ(serialize_diagram(d), corpus::kFigureEight);
}

TEST(Codec, UnknotSentinel) {
  EXPECT_EQ(serialize_diagram(Diagram{}), "U");
  EXPECT_EQ(parse_diagram("U"), Diagram{});
  EXPECT_EQ(parse_shadow(" U \n"), Shadow{});
  EXPECT_EQ(forget(Diagram{}).crossing_count(), 0);
  EXPECT_THROW(parse_diagram("U U"), ParseError);
  EXPECT_THROW(parse_diagram("U X[1,1,2,2]"), ParseError);
}

TEST(Codec, ParseErrorsCarryPosition) {
  try {
    parse_diagram("X[1,5,2,4] X[3,1,4;6]");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 18u);
  }
  EXPECT_THROW(parse_diagram(""), ParseError);
  EXPECT_THROW(parse_diagram("Y[1,2,3,4]"), ParseError);
  EXPECT_THROW(parse_diagram("X[1,2,3]"), ParseError);
  EXPECT_THROW(parse_diagram("X[1,2,,3,4]"), ParseError);
}

TEST(Codec, AcceptsCommasBetweenTuples) {
  EXPECT_EQ(parse_diagram("X[1,5,2,4], X[3,1,4,6], X[5,3,6,2]"), parse_diagram(corpus::kTrefoil));
}

TEST(Codec, ForgetKeepsCrossingsAndIsIdempotent) {
  for (const auto& d : corpus::diagrams(7)) {
    const Shadow s = forget(d);
    EXPECT_EQ(s.crossing_count(), d.crossing_count());
    EXPECT_EQ(forget(s), s);
    EXPECT_EQ(forget(mirror(d)), s);
    for (const auto& x : s.crossings()) EXPECT_EQ(x.kind, CrossingKind::flat);
  }
}

TEST(Codec, ShadowsStoreMinimalRotation) {
  const Shadow s = parse_shadow("P[4,2,5,1] P[8,6,1,5] P[6,3,7,4] P[2,7,3,8]");
  for (const auto& x : s.crossings())
    EXPECT_EQ(x.edges[0], *std::min_element(x.edges.begin(), x.edges.end()));
  EXPECT_EQ(parse_shadow(corpus::kFigureEight), s);
  EXPECT_EQ(parse_shadow(serialize_shadow(s)), s);
}

TEST(Codec, ValidTrefoilHasEmptyReport) {
  EXPECT_TRUE(validate(parse_diagram(corpus::kTrefoil)).empty());
  EXPECT_TRUE(validate(parse_shadow(corpus::kTrefoilShadow)).empty());
}

TEST(Codec, TripleLabelIsOneViolation) {
  const auto report = validate_text("X[1,5,2,4] X[3,1,4,6] X[5,3,6,2] X[7,7,7,8]",
                                    CrossingKind::oriented);
  const auto n = std::count_if(report.begin(), report.end(), [](const Violation& v) {
    return v.kind == ViolationKind::label_multiplicity;
  });
  ASSERT_EQ(n, 1);
  for (const auto& v : report)
    if (v.kind == ViolationKind::label_multiplicity)
      EXPECT_NE(v.message.find("7 occurs 3"), std::string::npos);
}

TEST(Codec, DisjointTrefoilsAreDisconnected) {
  const auto report = validate_text(
      "X[1,5,2,4] X[3,1,4,6] X[5,3,6,2] X[7,11,8,10] X[9,7,10,12] X[11,9,12,8]",
      CrossingKind::oriented);
  EXPECT_TRUE(has_violation(report, ViolationKind::disconnected));
}

TEST(Codec, KindMismatch) {
  const auto report = validate_text("P[1,5,2,4] X[3,1,4,6] X[5,3,6,2]", CrossingKind::oriented);
  EXPECT_TRUE(has_violation(report, ViolationKind::kind_mismatch));
}

TEST(Codec, NonplanarGaussWordRejected) {
  // Crossings joined like the virtual trefoil: labels fine, no sphere embedding.
  const auto report = validate_text("X[1,4,2,5] X[3,6,4,1] X[5,3,6,2]", CrossingKind::oriented);
  EXPECT_FALSE(report.empty());
}

TEST(Codec, RenumberLabels) {
  auto xs = renumber_labels(parse_crossings("X[10,50,20,40] X[30,10,40,60] X[50,30,60,20]"));
  EXPECT_EQ(serialize_crossings(xs), corpus::kTrefoil);
}

TEST(Codec, ReadPdFileFormats) {
  const std::string lines = testing::TempDir() + "/pd_lines.txt";
  const std::string array = testing::TempDir() + "/pd_array.json";
  {
    std::ofstream(lines) << "# two diagrams\n" << corpus::kTrefoil << "\n\n  U  \n";
    std::ofstream(array) << "[\"" << corpus::kTrefoil << "\", \"U\"]";
  }
  const std::vector<std::string> want{corpus::kTrefoil, "U"};
  EXPECT_EQ(read_pd_file(lines), want);
  EXPECT_EQ(read_pd_file(array), want);
  EXPECT_THROW(read_pd_file(testing::TempDir() + "/missing.txt"), DataError);
  std::remove(lines.c_str());
  std::remove(array.c_str());
}

TEST(Codec, CorpusRoundTrip) {
  for (const auto& r : corpus::table().records()) {
    const Diagram d = parse_diagram(r.pd.front());
    EXPECT_EQ(parse_diagram(serialize_diagram(d)), d) << r.name;
    const Shadow s = forget(d);
    EXPECT_EQ(parse_shadow(serialize_shadow(s)), s) << r.name;
  }
}
