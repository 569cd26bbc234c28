#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "citemetrics/error.hpp"
#include "citemetrics/normalize.hpp"

using namespace citemetrics;

TEST(Normalize, ExpandsDefaultAbbreviations) {
    EXPECT_EQ(normalize_name("Nat. Chem. Biol."), "nature chemical biology");
    EXPECT_EQ(normalize_name("J.  High Energy Phys,"), "journal high energy physics");
}

TEST(Normalize, FoldsCase) { EXPECT_EQ(normalize_name("CELL"), "cell"); }

TEST(Normalize, EmptyInputGivesEmptyKey) {
    EXPECT_EQ(normalize_name(""), "");
    EXPECT_EQ(normalize_name(" .,; "), "");
}

TEST(Normalize, StripsDiacriticsAndPunctuation) {
    EXPECT_EQ(normalize_name("Revista Química  (São Paulo)"), "revista quimica sao paulo");
    EXPECT_EQ(normalize_name("Zeitschrift für Physik"), "zeitschrift fur physik");
    EXPECT_EQ(normalize_name("Nature's Review"), "natures review");
}

TEST(Normalize, Idempotent) {
    for (const char* s : {"Nat. Chem. Biol.", "J. Am. Chem. Soc.", "Proc. Natl. Acad. Sci. USA", "Cell",
                          "Land Degrad. Dev.", "Ann. Math.", "Rev. Mod. Phys."}) {
        const auto once = normalize_name(s);
        EXPECT_EQ(normalize_name(once), once) << s;
    }
}

TEST(Normalize, DottedAndBareAbbreviationsAgree) {
    EXPECT_EQ(normalize_name("J. Biol. Chem."), normalize_name("j biol chem"));
    EXPECT_EQ(normalize_name("J. Biol. Chem."), "journal biology chemical");
}

TEST(Normalize, CustomTable) {
    std::istringstream in("# comment\n\nfoo\tbar baz\nthe\t\n");
    const auto table = NameNormalizer::from_tsv(in);
    EXPECT_EQ(table.normalize("The Foo. Letters"), "bar baz letters");
}

TEST(Normalize, MalformedTableLineIsReported) {
    std::istringstream in("ok\tfine\nno-tab-here\n");
    try {
        (void)NameNormalizer::from_tsv(in, "abbr.tsv");
        FAIL() << "expected MalformedRecord";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::MalformedRecord);
        EXPECT_NE(std::string(e.what()).find("abbr.tsv:2"), std::string::npos);
    }
}

TEST(Normalize, MissingTableFileIsIoError) {
    try {
        (void)NameNormalizer::from_file("/nonexistent/abbr.tsv");
        FAIL() << "expected Io";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::Io);
    }
}

TEST(Normalize, ShippedFileMatchesBuiltinTable) {
    std::ifstream in(std::string(CITEMETRICS_SOURCE_DIR) + "/data/abbreviations.tsv");
    ASSERT_TRUE(in);
    std::stringstream file;
    file << in.rdbuf();
    EXPECT_EQ(file.str(), std::string(kDefaultAbbreviationsTsv));
    std::istringstream again(file.str());
    EXPECT_EQ(NameNormalizer::from_tsv(again).table(), NameNormalizer::defaults().table());
}
