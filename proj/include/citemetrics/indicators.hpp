#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "citemetrics/matcher.hpp"

namespace citemetrics {

// Publication years census-years .. census-1, cited from census-year papers.
struct CitationWindow {
    Year census_year = 0;
    int years = 2;

    Year first_pub_year() const noexcept { return census_year - years; }
    Year last_pub_year() const noexcept { return census_year - 1; }
    bool contains(Year pub_year) const noexcept {
        return pub_year >= first_pub_year() && pub_year <= last_pub_year();
    }
};

struct CitationTally {
    std::string journal_id;
    Year census_year = 0;
    int window_years = 2;
    std::uint64_t cites_matched_citable = 0;
    std::uint64_t cites_matched_noncitable = 0;
    std::uint64_t cites_unmatched = 0;
    std::uint64_t n_citable_items = 0;
    std::uint64_t n_all_items = 0;
    std::uint64_t self_citations = 0;

    std::uint64_t total_cites() const noexcept {
        return cites_matched_citable + cites_matched_noncitable + cites_unmatched;
    }
    bool operator==(const CitationTally&) const = default;
};

// Throws UnknownJournal, or InvalidArgument for window < 1 / census year
// outside the corpus. A journal with nothing in the window yields a tally
// with zero items rather than an error.
CitationTally tally(const ResolvedCorpus& resolved, std::string_view journal_id, Year census_year, int window_years);

// Tallies for every journal in registry order, in one pass over references.
std::vector<CitationTally> tally_all(const ResolvedCorpus& resolved, Year census_year, int window_years);

// All citations (matched, front matter, unmatched) per citable item.
double jif_wos_derived(const CitationTally& t);
// Only citations matched to citable items, per citable item.
double symmetric_if(const CitationTally& t);
double jif_no_self(const CitationTally& t);
double self_citation_rate(const CitationTally& t);
// Percentage by which `reference_jif` exceeds `symmetric`.
double pct_increase(double reference_jif, double symmetric);

double jif5(const ResolvedCorpus& resolved, std::string_view journal_id, Year census_year);
// Three-year window, all document types in numerator and denominator.
double citescore(const ResolvedCorpus& resolved, std::string_view journal_id, Year census_year);

// Citations received in the census year by each citable window item of the
// journal (matched citations only; unmatched ones have no target paper).
std::vector<std::uint32_t> per_paper_citations(const ResolvedCorpus& resolved, std::string_view journal_id,
                                               Year census_year, int window_years);

// Throws EmptyWindow when the journal has no citable items in the window.
double median_cites(const ResolvedCorpus& resolved, std::string_view journal_id, Year census_year, int window_years);
double median_of(std::vector<std::uint32_t> counts);

struct IndicatorReport {
    std::string journal_id;
    Year census_year = 0;
    std::optional<double> jif2;
    std::optional<double> jif5;
    std::optional<double> jif_wos_derived;
    std::optional<double> symmetric_if;
    std::optional<double> jif_no_self;
    std::optional<double> citescore;
    std::optional<double> median_cites;
    std::optional<double> self_citation_rate;
    std::optional<double> pct_increase;
};

// `window_years` drives jif_wos_derived, symmetric_if, jif_no_self,
// median_cites and self_citation_rate; jif2/jif5/citescore use fixed windows.
// Undefined values (empty window, no citations) are left empty.
IndicatorReport compute_report(const ResolvedCorpus& resolved, std::string_view journal_id, Year census_year,
                               int window_years = 2);
std::vector<IndicatorReport> report_all(const ResolvedCorpus& resolved, Year census_year, int window_years = 2);

// Round-half-even to `decimals` places, rendered without exponent.
std::string format_decimal(double value, int decimals);

inline constexpr std::string_view kReportCsvHeader =
    "journal_id,census_year,jif2,jif5,jif_wos_derived,symmetric_if,jif_no_self,citescore,median_cites,"
    "self_citation_rate,pct_increase";

void write_report_csv(const std::vector<IndicatorReport>& reports, std::ostream& out, int decimals = 3);
void write_report_json(const std::vector<IndicatorReport>& reports, std::ostream& out, int decimals = 3);

}  // namespace citemetrics
