#include <gtest/gtest.h>

#include <random>

#include "rpys/ingest.hpp"
#include "rpys/synth.hpp"
#include "rpys/text.hpp"
#include "support/helpers.hpp"

namespace rpys {
namespace {

using testing::fixture;
using testing::slurp;

TEST(ParseCitedRef, FullReference) {
  const auto ref = parse_cited_ref("LOTKA AJ, 1926, J WASHINGTON ACAD SC, V16, P317");
  EXPECT_EQ(ref.first_author, "LOTKA AJ");
  EXPECT_EQ(ref.year, 1926);
  EXPECT_EQ(ref.source, "J WASHINGTON ACAD SC");
  EXPECT_EQ(ref.volume, "16");
  EXPECT_EQ(ref.page, "317");
  EXPECT_EQ(ref.raw, "LOTKA AJ, 1926, J WASHINGTON ACAD SC, V16, P317");
}

TEST(ParseCitedRef, Bradford) {
  const auto ref = parse_cited_ref("BRADFORD SC, 1934, ENGINEERING, V137, P85");
  EXPECT_EQ(ref.first_author, "BRADFORD SC");
  EXPECT_EQ(ref.year, 1934);
  EXPECT_EQ(ref.source, "ENGINEERING");
  EXPECT_EQ(ref.volume, "137");
  EXPECT_EQ(ref.page, "85");
}

TEST(ParseCitedRef, NoYearKeepsOnlyRaw) {
  const auto ref = parse_cited_ref("ANONYMOUS REPORT");
  EXPECT_EQ(ref.raw, "ANONYMOUS REPORT");
  EXPECT_FALSE(ref.year);
  EXPECT_FALSE(ref.first_author);
  EXPECT_FALSE(ref.source);
  EXPECT_FALSE(ref.volume);
  EXPECT_FALSE(ref.page);
}

TEST(ParseCitedRef, YearOutsideFirstThreeTokensIgnored) {
  const auto ref = parse_cited_ref("SMITH J, NOTE, IN PRESS, 1999");
  EXPECT_FALSE(ref.year);
}

TEST(ParseCitedRef, PageNumberNotReadAsYear) {
  const auto ref = parse_cited_ref("DOE J, UNPUBLISHED, P1926");
  EXPECT_FALSE(ref.year);
}

TEST(ParseCitedRef, YearInFirstTokenHasNoAuthor) {
  const auto ref = parse_cited_ref("1963, LITTLE SCI BIG SCI");
  EXPECT_EQ(ref.year, 1963);
  EXPECT_FALSE(ref.first_author);
  EXPECT_EQ(ref.source, "LITTLE SCI BIG SCI");
}

TEST(ParseCitedRef, DoiTokenIsNotASource) {
  const auto ref = parse_cited_ref("HIRSCH JE, 2005, DOI 10.1073/pnas.0507655102");
  EXPECT_EQ(ref.year, 2005);
  EXPECT_FALSE(ref.source);
}

TEST(ParseCitedRef, YearBoundsAreEnforced) {
  EXPECT_FALSE(parse_cited_ref("X, 0999, Y").year);
  EXPECT_EQ(parse_cited_ref("X, 1000, Y").year, 1000);
  EXPECT_EQ(parse_cited_ref("X, 2100, Y").year, 2100);
  EXPECT_FALSE(parse_cited_ref("X, 2101, Y").year);
}

TEST(ParseCitedRef, NormalizesAuthorAndSource) {
  const auto ref = parse_cited_ref("de Solla Price, D.J.,  1963, Little  Sci. Big Sci.");
  // The first token is the author; the initials token is not a year and is skipped.
  EXPECT_EQ(ref.first_author, "DE SOLLA PRICE");
  EXPECT_EQ(ref.year, 1963);
  EXPECT_EQ(ref.source, "LITTLE SCI BIG SCI");
}

TEST(ParseCitedRef, FuzzNeverThrowsAndRespectsYearBounds) {
  std::mt19937_64 gen(7);
  const std::string alphabet = "0123456789, VPDOIABCXYZ\t\xff\xc3\x28-";
  for (int i = 0; i < 20000; ++i) {
    std::string s;
    const auto len = gen() % 40;
    for (std::size_t k = 0; k < len; ++k) s += alphabet[gen() % alphabet.size()];
    CitedRef ref;
    ASSERT_NO_THROW(ref = parse_cited_ref(s));
    EXPECT_EQ(ref.raw, s);
    if (ref.year) {
      EXPECT_GE(*ref.year, kMinRefYear);
      EXPECT_LE(*ref.year, kMaxRefYear);
    }
  }
}

TEST(Normalize, IsIdempotent) {
  for (const char* s : {"J. Am. Soc; Inf: 'Sci'", "  a  b\tc ", "ÄBC x", ""}) {
    const auto once = normalize_field(s);
    EXPECT_EQ(normalize_field(once), once) << s;
  }
}

TEST(ParseWos, MinimalRecord) {
  const auto result = parse_wos(
      "PT J\n"
      "SO SCIENTOMETRICS\n"
      "CR LOTKA AJ, 1926, J WASHINGTON ACAD SC, V16, P317\n"
      "   PRICE DJD, 1963, LITTLE SCI BIG SCI\n"
      "PY 2001\n"
      "ER\n");
  ASSERT_EQ(result.records.size(), 1u);
  const auto& r = result.records[0];
  EXPECT_EQ(r.pub_year, 2001);
  EXPECT_EQ(r.venue, "SCIENTOMETRICS");
  ASSERT_EQ(r.cited_refs.size(), 2u);
  EXPECT_EQ(r.cited_refs[1].year, 1963);
  EXPECT_TRUE(result.warnings.empty());
}

TEST(ParseWos, MiniFixtureCounts) {
  const auto result = parse_wos(slurp(fixture("mini.wos")));
  ASSERT_EQ(result.records.size(), 7u);
  std::size_t refs = 0;
  for (const auto& r : result.records) refs += r.cited_refs.size();
  EXPECT_EQ(refs, 23u);
  EXPECT_TRUE(result.warnings.empty());
  EXPECT_EQ(result.records[0].id, "WOS:A1980000001");
  EXPECT_EQ(result.records[6].doc_type, "Editorial Material");
  EXPECT_EQ(result.records[4].extra_fields.size(), 4u);  // PT, AU, AU, TI
}

TEST(ParseWos, BlockWithoutPyIsRejected) {
  const auto result = parse_wos(slurp(fixture("malformed_missing_py.wos")));
  ASSERT_EQ(result.records.size(), 2u);
  ASSERT_EQ(result.warnings.size(), 1u);
  EXPECT_EQ(result.warnings[0].kind, DiagnosticKind::MalformedRecord);
  EXPECT_EQ(result.warnings[0].line, 11u);
  EXPECT_EQ(result.records[1].id, "WOS:M0000003");
}

TEST(ParseWos, BlockWithoutErIsRejected) {
  const auto result = parse_wos(slurp(fixture("malformed_missing_er.wos")));
  ASSERT_EQ(result.records.size(), 1u);
  ASSERT_EQ(result.warnings.size(), 1u);
  EXPECT_EQ(result.warnings[0].kind, DiagnosticKind::MalformedRecord);
  EXPECT_EQ(result.warnings[0].line, 3u);
  EXPECT_EQ(result.records[0].id, "WOS:E0000002");
}

TEST(ParseWos, UnterminatedLastBlock) {
  const auto result = parse_wos("PT J\nPY 2001\nCR A, 1990, B\n");
  EXPECT_TRUE(result.records.empty());
  ASSERT_EQ(result.warnings.size(), 1u);
  EXPECT_EQ(result.warnings[0].kind, DiagnosticKind::MalformedRecord);
}

TEST(ParseWos, TabIndentIsAnError) {
  try {
    parse_wos(slurp(fixture("malformed_tab.wos")));
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::MalformedInput);
    EXPECT_NE(std::string(e.what()).find("line 4"), std::string::npos);
  }
}

TEST(ParseWos, EmptyInputs) {
  for (const char* text : {"", "FN Clarivate Analytics Web of Science\nVR 1.0\nEF\n", "\n\n"}) {
    try {
      parse_wos(text);
      FAIL() << "expected EmptyFile for '" << text << "'";
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), Errc::EmptyFile);
    }
  }
}

TEST(ParseWos, SynthesizedIdsAndPrefix) {
  const auto result = parse_wos("PT J\nPY 2001\nER\nPT J\nPY 2002\nER\n", "F2:");
  ASSERT_EQ(result.records.size(), 2u);
  EXPECT_EQ(result.records[0].id, "F2:R1");
  EXPECT_EQ(result.records[1].id, "F2:R2");
}

TEST(ParseWos, CrlfAndFieldOrder) {
  const auto a = parse_wos("PT J\r\nCR A, 1990, B\r\nPY 2001\r\nSO X\r\nER\r\n");
  const auto b = parse_wos("PY 2001\nSO X\nPT J\nCR A, 1990, B\nER\n");
  ASSERT_EQ(a.records.size(), 1u);
  ASSERT_EQ(b.records.size(), 1u);
  EXPECT_EQ(a.records[0].pub_year, b.records[0].pub_year);
  EXPECT_EQ(a.records[0].venue, b.records[0].venue);
  EXPECT_EQ(a.records[0].cited_refs, b.records[0].cited_refs);
}

TEST(ParseWos, InvalidUtf8IsReplaced) {
  const auto result = parse_wos("PT J\nSO CAF\xe9 REVIEW\nPY 2001\nER\n");
  ASSERT_EQ(result.records.size(), 1u);
  EXPECT_NE(result.records[0].venue.find("\xef\xbf\xbd"), std::string::npos);
}

TEST(ParseWos, RoundTripCountOnSynthetic) {
  SynthSpec spec = default_synth_spec(3);
  spec.records_per_bin = {20, 15, 10, 5, 0, 3, 30};
  const auto records = synthesize(spec);
  const auto text = write_wos(records);
  std::size_t cr_lines = 0;
  for (const auto& r : records) cr_lines += r.cited_refs.size();

  const auto parsed = parse_wos(text);
  ASSERT_EQ(parsed.records.size(), records.size());
  std::size_t refs = 0;
  for (const auto& r : parsed.records) refs += r.cited_refs.size();
  EXPECT_EQ(refs, cr_lines);
  EXPECT_EQ(parsed.records, records);
}

TEST(ParseWos, Deterministic) {
  const auto text = slurp(fixture("mini.wos"));
  EXPECT_EQ(parse_wos(text).records, parse_wos(text).records);
}

TEST(ParseCsv, MiniFixture) {
  const auto result = parse_csv(slurp(fixture("mini.csv")));
  ASSERT_EQ(result.records.size(), 2u);
  EXPECT_EQ(result.records[0].id, "WOS:C1");
  EXPECT_EQ(result.records[0].cited_refs.size(), 3u);
  EXPECT_EQ(result.records[1].cited_refs.size(), 2u);
  EXPECT_EQ(result.records[0].cited_refs[2].year, 1973);
}

TEST(ParseCsv, GroupsRowsAndAllowsEmptyBody) {
  const std::string header = "citing_id,citing_year,venue,doc_type,cited_ref\n";
  EXPECT_TRUE(parse_csv(header).records.empty());
  const auto two = parse_csv(header + "A,2000,X,Article,\"P, 1990, S\"\nA,2000,X,Article,\"Q, 1991, S\"\n");
  ASSERT_EQ(two.records.size(), 1u);
  EXPECT_EQ(two.records[0].cited_refs.size(), 2u);
}

TEST(ParseCsv, MissingColumn) {
  try {
    parse_csv("citing_id,citing_year,venue,cited_ref\nA,2000,X,Y\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::MissingColumn);
  }
}

TEST(ParseCsv, BadYearRowSkipped) {
  const auto result = parse_csv(
      "citing_id,citing_year,venue,doc_type,cited_ref\n"
      "A,20x0,X,Article,\"P, 1990, S\"\n"
      "B,2001,X,Article,\"Q, 1991, S\"\n");
  ASSERT_EQ(result.records.size(), 1u);
  ASSERT_EQ(result.warnings.size(), 1u);
  EXPECT_EQ(result.warnings[0].kind, DiagnosticKind::BadYear);
  EXPECT_EQ(result.warnings[0].line, 2u);
}

TEST(ParseCsv, MatchesWosHistogram) {
  SynthSpec spec = default_synth_spec(11);
  spec.records_per_bin = {5, 5, 5, 5, 5, 5, 5};
  const auto records = synthesize(spec);
  const auto from_wos = parse_wos(write_wos(records)).records;
  const auto from_csv = parse_csv(write_csv(records)).records;
  auto histogram = [](const std::vector<Record>& rs) {
    std::map<int, int> h;
    for (const auto& r : rs) {
      for (const auto& c : r.cited_refs) {
        if (c.year) ++h[*c.year];
      }
    }
    return h;
  };
  EXPECT_EQ(histogram(from_wos), histogram(from_csv));
}

}  // namespace
}  // namespace rpys
