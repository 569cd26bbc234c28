#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "citemetrics/corpus.hpp"
#include "citemetrics/distributions.hpp"

namespace citemetrics {

// Census-year citations to the two preceding publication years, split the
// way the reference tables split them.
struct CitationBreakdown {
    std::string journal_id;
    std::string name;
    std::uint64_t article_cites = 0;
    std::uint64_t review_cites = 0;
    std::uint64_t noncitable_cites = 0;
    std::uint64_t unmatched_cites = 0;
    std::uint64_t citable_items = 0;
    std::uint64_t review_items = 0;  // subset of citable_items
    std::uint64_t noncitable_items = 0;
    double jcr_jif = 0.0;  // published value the fixture records alongside
};

struct SelfCitationCounts {
    std::string journal_id;
    std::string name;
    std::uint64_t citations = 0;
    std::uint64_t self_citations = 0;
    std::uint64_t citable_items = 0;
};

const std::vector<CitationBreakdown>& table1_breakdowns();
const SelfCitationCounts& jhep_counts();

struct Table1Fixture {
    Corpus corpus;
    Year census_year = 2016;
    std::map<std::string, double> jcr_jif;  // journal_id -> published JCR JIF
};

// Census 2016, items from 2014-2015. Every count in table1_breakdowns() and
// jhep_counts() is encoded exactly; citing papers come from a pool of
// multidisciplinary journals.
Table1Fixture fixture_table1();

struct InflationTarget {
    Year year = 0;
    std::size_t journals = 0;
    double mean_jif = 0.0;
    std::size_t above_ten = 0;
};

const std::vector<InflationTarget>& inflation_targets();

// Three JCR snapshots whose JIF means and counts above 10 equal the targets
// exactly (values are held in thousandths).
std::vector<InflationSnapshot> fixture_inflation();

struct DisciplineTarget {
    std::string discipline;
    double mean_jif = 0.0;
    double max_jif = 0.0;
    double mean_refs = 0.0;
    double mean_refs_to_indexed = 0.0;
    double mean_ref_age = 0.0;
};

const std::vector<DisciplineTarget>& discipline_targets();

// Census 2016. Each discipline has 100 journals and 400 papers published
// 2014-2015 whose profile rounds to its target row.
Corpus fixture_disciplines();

}  // namespace citemetrics
