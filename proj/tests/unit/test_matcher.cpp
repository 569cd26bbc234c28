#include <sstream>

#include <gtest/gtest.h>

#include "citemetrics/fixtures.hpp"
#include "citemetrics/synth.hpp"
#include "helpers.hpp"
#include "oracle.hpp"

using namespace citemetrics;
using testing_support::MiniCorpus;

namespace {

MiniCorpus base() {
    MiniCorpus m;
    m.journal("CELL", "Biology", {}, "Cell")
        .journal("NAT", "General", {"Nat."}, "Nature")
        .journal("NATPHYS", "Physics", {"Nat. Phys."}, "Nature Physics")
        .paper("c1", "CELL", 2015, DocumentType::Review)
        .paper("c2", "CELL", 2015, DocumentType::Editorial)
        .paper("n1", "NAT", 2016);
    return m;
}

}  // namespace

TEST(Matcher, LinkedReviewIsMatchedCitable) {
    const auto r = base().cite("n1", "c1").cite("n1", "c2").resolved();
    const auto& cls = r.classifications();
    EXPECT_EQ(cls[0].kind, CitationClass::MatchedCitable);
    EXPECT_EQ(cls[0].cited_year, 2015);
    EXPECT_EQ(cls[1].kind, CitationClass::MatchedNonCitable);
    EXPECT_EQ(r.corpus().journals()[cls[1].journal].journal_id, "CELL");
}

TEST(Matcher, NameAndYearWithoutLinkIsUnmatchedJournal) {
    const auto r = base().raw("n1", "CELL 2015").resolved();
    const auto& c = r.classifications()[0];
    EXPECT_EQ(c.kind, CitationClass::UnmatchedJournal);
    EXPECT_EQ(r.corpus().journals()[c.journal].journal_id, "CELL");
    EXPECT_EQ(c.cited_year, 2015);
    EXPECT_EQ(c.paper, kNoPaper);
}

TEST(Matcher, RecordYearTakesPrecedenceOverRawString) {
    const auto r = base().raw("n1", "Cell 1999; 12:34", 2014).resolved();
    EXPECT_EQ(r.classifications()[0].cited_year, 2014);
}

TEST(Matcher, MissingYearOrNameIsUnresolved) {
    const auto r = base()
                       .raw("n1", "Cell, vol. 12")
                       .raw("n1", "Cell 1700")
                       .raw("n1", "Unknown Gazette 2015")
                       .raw("n1", "")
                       .resolved();
    for (const auto& c : r.classifications()) EXPECT_EQ(c.kind, CitationClass::Unresolved);
    EXPECT_EQ(r.summary().count(CitationClass::Unresolved), 4u);
    EXPECT_EQ(r.summary().ambiguous, 0u);
}

TEST(Matcher, LongestNamePrefixWins) {
    const auto r = base().raw("n1", "Nat. Phys. 2015, 11, 3").raw("n1", "Nature 2015 450:7").resolved();
    const auto& j = r.corpus().journals();
    EXPECT_EQ(j[r.classifications()[0].journal].journal_id, "NATPHYS");
    EXPECT_EQ(j[r.classifications()[1].journal].journal_id, "NAT");
}

TEST(Matcher, SharedKeyUnderCustomTableIsAmbiguous) {
    MiniCorpus m;
    m.journal("A", "X", {}, "Acta Alpha").journal("B", "X", {}, "Acta Beta").paper("p", "A", 2016);
    m.raw("p", "Acta Alpha 2015").raw("p", "Acta Gamma 2015");
    NameNormalizer merged;
    merged.add("alpha", "x");
    merged.add("beta", "x");
    const auto r = resolve(m.build(), merged);
    EXPECT_EQ(r.classifications()[0].kind, CitationClass::Unresolved);
    EXPECT_EQ(r.summary().ambiguous, 1u);
    EXPECT_EQ(r.ambiguous_references(), std::vector<std::size_t>{0});
}

TEST(Matcher, YearExtraction) {
    EXPECT_EQ(extract_year("Cell 2015"), 2015);
    EXPECT_EQ(extract_year("Nature 12345 1999 2004"), 1999);
    EXPECT_EQ(extract_year("vol 1700, 2001"), 2001);
    EXPECT_EQ(extract_year("x2015y"), 2015);
    EXPECT_FALSE(extract_year("20150").has_value());
    EXPECT_FALSE(extract_year("no digits").has_value());
    EXPECT_FALSE(extract_year("2101").has_value());
    EXPECT_EQ(extract_year("1800"), 1800);
    EXPECT_EQ(extract_year("2100"), 2100);
}

TEST(Matcher, YearExtractionAgreesWithOracle) {
    for (const char* s : {"a 1999 b", "12345", "0 1801x", "9999 2000", "J. 2010, 11(2)", "1799-1800", ""}) {
        EXPECT_EQ(extract_year(s), oracle::year_in(s)) << s;
    }
}

TEST(Matcher, Table1CellCitations) {
    const auto fx = fixture_table1();
    const auto r = resolve(fx.corpus);
    const auto cell = r.require_journal("CELL");
    std::uint64_t matched = 0, unmatched = 0;
    const auto& cls = r.classifications();
    for (std::size_t i = 0; i < cls.size(); ++i) {
        if (cls[i].journal != cell || r.citing_year(i) != 2016) continue;
        if (cls[i].cited_year != 2014 && cls[i].cited_year != 2015) continue;
        if (cls[i].kind == CitationClass::UnmatchedJournal) ++unmatched;
        else ++matched;
    }
    EXPECT_EQ(matched, 24554u);
    EXPECT_EQ(unmatched, 2016u);
    EXPECT_EQ(matched + unmatched, 26570u);
}

TEST(Matcher, PartitionAndOracleAgreementOnRandomCorpora) {
    for (std::uint64_t seed = 1; seed <= 15; ++seed) {
        const auto corpus = generate(oracle::random_scenario(seed, 400));
        const auto r = resolve(corpus);
        const auto& s = r.summary();
        EXPECT_EQ(s.counts[0] + s.counts[1] + s.counts[2] + s.counts[3], s.total);
        EXPECT_EQ(s.total, corpus.references().size());

        const auto expected = oracle::classify(corpus);
        ASSERT_EQ(expected.size(), r.classifications().size());
        for (std::size_t i = 0; i < expected.size(); ++i) {
            const auto& got = r.classifications()[i];
            ASSERT_EQ(got.kind, expected[i].kind) << "seed " << seed << " ref " << i;
            if (got.has_target()) {
                EXPECT_EQ(corpus.journals()[got.journal].journal_id, expected[i].journal_id);
                EXPECT_EQ(got.cited_year, expected[i].year);
            }
            EXPECT_EQ(r.reference_year(i), expected[i].known_year);
        }
    }
}

TEST(Matcher, ResolveIsIdempotent) {
    const auto corpus = generate(oracle::random_scenario(77, 300));
    const auto a = resolve(corpus);
    const auto b = resolve(a.corpus());
    EXPECT_EQ(a.classifications(), b.classifications());
}

TEST(Matcher, ResolveReport) {
    const auto r = base().cite("n1", "c1").raw("n1", "Cell 2015").raw("n1", "nothing").resolved();
    std::ostringstream out;
    write_resolve_report(r.summary(), out);
    EXPECT_EQ(out.str(),
              "class,count\nMatchedCitable,1\nMatchedNonCitable,0\nUnmatchedJournal,1\nUnresolved,1\ntotal,3\n");
}
