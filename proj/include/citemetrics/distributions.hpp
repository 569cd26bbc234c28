#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "citemetrics/indicators.hpp"

namespace citemetrics {

struct DistributionSummary {
    std::string journal_id;
    Year census_year = 0;
    std::map<std::uint32_t, std::uint64_t> histogram;  // citation count -> papers
    double mean = 0.0;
    double median = 0.0;
    double jif_value = 0.0;
    double share_at_or_above_jif = 0.0;
    std::uint64_t n_papers = 0;
};

// Summary of per-paper citation counts; `jif_value` is the threshold for the
// share (papers with count >= jif_value). Throws EmptyWindow on no papers.
DistributionSummary summarize_counts(std::string journal_id, Year census_year, std::span<const std::uint32_t> counts,
                                     double jif_value);

DistributionSummary distribution(const ResolvedCorpus& resolved, std::string_view journal_id, Year census_year,
                                 int window_years, double jif_value);

// Journals bucketed by share_at_or_above_jif in half-open 5-point buckets
// [0,5), [5,10), ... [95,100); a share of exactly 100% lands in the last one.
struct ShareHistogram {
    static constexpr int kBucketWidthPct = 5;
    std::vector<std::uint64_t> buckets = std::vector<std::uint64_t>(20, 0);
    std::uint64_t n_journals = 0;
    double fraction_at_least_half = 0.0;

    // Fraction of journals whose bucket lies within [lo_pct, hi_pct).
    double fraction_in(int lo_pct, int hi_pct) const;
};

std::size_t share_bucket(double share);
ShareHistogram jcr_share_histogram(std::span<const DistributionSummary> summaries);

struct CohortCurve {
    std::string label;  // discipline
    Year pub_year = 0;
    std::vector<std::uint64_t> per_year_citations;  // index = years since publication
    std::vector<double> cumulative_fraction;        // relative to all citations, any age
    std::uint64_t total_citations = 0;              // every age, including beyond the horizon
    std::uint64_t beyond_horizon = 0;
    bool truncated = false;  // horizon misses part of the tail
    double first_two_year_share = 0.0;  // ages 1 and 2: what a two-year window sees
    std::optional<int> years_to_half;   // first age where cumulative >= 0.5
};

// Citations (any resolved class) to items of the discipline's journals
// published in `pub_year`, binned by citing year minus pub_year.
CohortCurve cohort_curve(const ResolvedCorpus& resolved, std::string_view discipline, Year pub_year, int horizon_years);

struct InflationSnapshot {
    Year year = 0;
    std::vector<IndicatorReport> reports;
};

struct InflationYear {
    Year year = 0;
    double mean_jif = 0.0;
    std::map<double, std::uint64_t> count_above;  // threshold -> journals with JIF strictly above
    std::uint64_t journal_count = 0;
};

struct JournalTrajectory {
    std::string journal_id;
    std::vector<std::optional<double>> jif;              // one per snapshot
    std::vector<std::optional<double>> rank_percentile;  // 1.0 = highest JIF of its snapshot
};

struct InflationSeries {
    std::vector<InflationYear> years;
    std::vector<JournalTrajectory> journals;
    // Journals present in first and last snapshot whose JIF rose, as a fraction of those.
    double share_increased = 0.0;
};

// Uses each report's jif2. Requires at least two snapshots.
InflationSeries inflation_series(std::span<const InflationSnapshot> snapshots, std::span<const double> thresholds);

struct DisciplineProfile {
    std::string discipline;
    Year census_year = 0;
    std::size_t n_journals = 0;
    std::size_t n_papers = 0;
    std::optional<double> mean_jif;
    std::optional<double> max_jif;
    double mean_refs = 0.0;
    double mean_refs_to_indexed = 0.0;
    std::optional<double> mean_ref_age;
    double ref_year_coverage = 0.0;  // share of references with a known cited year
};

// JIF statistics use the two-year JIF of each journal in the discipline;
// reference statistics use the discipline's papers published in the two
// years before the census year.
DisciplineProfile discipline_profile(const ResolvedCorpus& resolved, std::string_view discipline, Year census_year);

struct Correlation {
    double pearson_r = 0.0;
    double r_squared = 0.0;
};

Correlation correlate(std::span<const double> xs, std::span<const double> ys);

void write_distribution_csv(const DistributionSummary& s, std::ostream& out);
void write_distribution_json(const DistributionSummary& s, std::ostream& out);
void write_share_histogram_csv(const ShareHistogram& h, std::ostream& out);
void write_cohort_csv(const CohortCurve& c, std::ostream& out);
void write_cohort_json(const CohortCurve& c, std::ostream& out);
void write_inflation_csv(const InflationSeries& s, std::ostream& out);
void write_discipline_profiles_csv(std::span<const DisciplineProfile> profiles, std::ostream& out);

}  // namespace citemetrics
