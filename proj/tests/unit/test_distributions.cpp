#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

#include <boost/math/distributions/normal.hpp>
#include <gtest/gtest.h>

#include "citemetrics/distributions.hpp"
#include "citemetrics/fixtures.hpp"
#include "citemetrics/synth.hpp"
#include "helpers.hpp"
#include "oracle.hpp"

using namespace citemetrics;
using testing_support::MiniCorpus;

namespace {

DistributionSummary with_share(const std::string& id, double share) {
    DistributionSummary s;
    s.journal_id = id;
    s.share_at_or_above_jif = share;
    return s;
}

IndicatorReport jif_report(const std::string& id, std::optional<double> jif) {
    IndicatorReport r;
    r.journal_id = id;
    r.jif2 = jif;
    return r;
}

}  // namespace

TEST(Distributions, ShareAtOrAboveJif) {
    const std::vector<std::uint32_t> counts = {0, 1, 2, 3, 4};
    const auto s = summarize_counts("X", 2016, counts, 2.0);
    EXPECT_DOUBLE_EQ(s.share_at_or_above_jif, 0.6);
    EXPECT_DOUBLE_EQ(s.mean, 2.0);
    EXPECT_DOUBLE_EQ(s.median, 2.0);
    EXPECT_EQ(s.n_papers, 5u);
    EXPECT_EQ(s.histogram.at(3), 1u);

    const std::vector<std::uint32_t> one = {7};
    EXPECT_DOUBLE_EQ(summarize_counts("Y", 2016, one, 7.0).share_at_or_above_jif, 1.0);
    EXPECT_THROW((void)summarize_counts("Z", 2016, std::vector<std::uint32_t>{}, 1.0), Error);
}

TEST(Distributions, CellLikeLognormalShare) {
    // For a lognormal the share at or above the mean is 1 - Phi(sigma/2);
    // sigma is solved for the midpoint of the quoted 28.2-28.7% range.
    const boost::math::normal z;
    const double sigma = 2.0 * boost::math::quantile(z, 1.0 - 0.2845);
    Rng rng(30);
    const auto counts = sample_citations(CitationDistribution::lognormal_mean(30.4, sigma), 40000, rng);
    const auto s = summarize_counts("CELL", 2016, counts, 30.4);
    EXPECT_GE(s.share_at_or_above_jif, 0.27);
    EXPECT_LE(s.share_at_or_above_jif, 0.30);
    EXPECT_LT(s.median, s.mean);
}

TEST(Distributions, ShareHistogramBuckets) {
    std::vector<DistributionSummary> v;
    for (int i = 0; i < 10; ++i) v.push_back(with_share("J" + std::to_string(i), 0.30));
    const auto h = jcr_share_histogram(v);
    EXPECT_EQ(h.buckets[6], 10u);
    EXPECT_DOUBLE_EQ(h.fraction_in(30, 35), 1.0);
    EXPECT_DOUBLE_EQ(h.fraction_at_least_half, 0.0);

    EXPECT_EQ(share_bucket(0.0), 0u);
    EXPECT_EQ(share_bucket(0.0499), 0u);
    EXPECT_EQ(share_bucket(0.05), 1u);
    EXPECT_EQ(share_bucket(0.5), 10u);
    EXPECT_EQ(share_bucket(1.0), 19u);

    std::ostringstream out;
    write_share_histogram_csv(h, out);
    EXPECT_NE(out.str().find("30,35,10"), std::string::npos) << out.str();
}

TEST(Distributions, DistributionMatchesOracle) {
    for (std::uint64_t seed = 200; seed < 206; ++seed) {
        const auto corpus = generate(oracle::random_scenario(seed, 600));
        const auto r = resolve(corpus);
        const auto targets = oracle::classify(corpus);
        const Year census = corpus.year_range().max_year;
        for (const auto& j : corpus.journals()) {
            const auto counts = oracle::per_paper(corpus, targets, j.journal_id, census, 2);
            if (counts.empty()) continue;
            const auto want = oracle::distribution(counts, 1.5);
            const auto got = distribution(r, j.journal_id, census, 2, 1.5);
            EXPECT_EQ(got.histogram, want.histogram);
            EXPECT_EQ(got.n_papers, want.n);
            EXPECT_NEAR(got.mean, want.mean, 1e-12);
            EXPECT_EQ(got.median, want.median);
            EXPECT_NEAR(got.share_at_or_above_jif, want.share_at_or_above, 1e-12);
        }
    }
}

TEST(Distributions, CohortStepWhenAllCitationsArriveInYearOne) {
    MiniCorpus m;
    m.journal("A", "Bio").journal("B", "Bio");
    m.paper("a", "A", 2010).paper("b", "B", 2011).paper("c", "B", 2014);
    m.cite_n("b", "a", 5);
    const auto c = cohort_curve(m.resolved(), "Bio", 2010, 4);
    EXPECT_EQ(c.per_year_citations, (std::vector<std::uint64_t>{0, 5, 0, 0, 0}));
    EXPECT_EQ(c.cumulative_fraction, (std::vector<double>{0, 1, 1, 1, 1}));
    EXPECT_EQ(c.years_to_half, 1);
    EXPECT_FALSE(c.truncated);
    EXPECT_DOUBLE_EQ(c.first_two_year_share, 1.0);
}

TEST(Distributions, CohortTruncatedByHorizon) {
    MiniCorpus m;
    m.journal("A", "Bio").paper("a", "A", 2010).paper("b", "A", 2011).paper("c", "A", 2018);
    m.cite("b", "a").cite_n("c", "a", 3);
    const auto c = cohort_curve(m.resolved(), "Bio", 2010, 5);
    EXPECT_TRUE(c.truncated);
    EXPECT_EQ(c.beyond_horizon, 3u);
    EXPECT_DOUBLE_EQ(c.cumulative_fraction.back(), 0.25);
    EXPECT_FALSE(c.years_to_half.has_value());
    std::ostringstream out;
    write_cohort_csv(c, out);
    EXPECT_NE(out.str().find("truncated"), std::string::npos);
    EXPECT_THROW((void)cohort_curve(m.resolved(), "Bio", 2012, 5), Error);
    EXPECT_THROW((void)cohort_curve(m.resolved(), "Bio", 2010, -1), Error);
}

TEST(Distributions, BiomedicalCohortWindowShare) {
    ScenarioSpec spec;
    spec.seed = 15;
    spec.first_year = 1986;
    spec.last_year = 2016;
    JournalSpec js;
    js.count = 5;
    js.discipline = "Biomedical Research";
    js.n_papers_per_year = 60;
    js.ref_age_profile = *age_profile_preset("biomedical");
    spec.journals.push_back(js);
    const auto c = cohort_curve(resolve(generate(spec)), "Biomedical Research", 1986, 30);
    EXPECT_GE(c.first_two_year_share, 0.13);
    EXPECT_LE(c.first_two_year_share, 0.17);
    ASSERT_TRUE(c.years_to_half.has_value());
    EXPECT_NEAR(*c.years_to_half, 8, 1);
}

TEST(Distributions, InflationFixtureIsExact) {
    const auto snaps = fixture_inflation();
    const std::vector<double> thresholds = {10.0};
    const auto s = inflation_series(snaps, thresholds);
    const auto& targets = inflation_targets();
    ASSERT_EQ(s.years.size(), targets.size());
    for (std::size_t i = 0; i < targets.size(); ++i) {
        EXPECT_EQ(format_decimal(s.years[i].mean_jif, 3), format_decimal(targets[i].mean_jif, 3));
        EXPECT_NEAR(s.years[i].mean_jif, targets[i].mean_jif, 1e-9);
        EXPECT_EQ(s.years[i].count_above.at(10.0), targets[i].above_ten);
        EXPECT_EQ(s.years[i].journal_count, targets[i].journals);
        EXPECT_GE(s.years[i].journal_count, s.years[i].count_above.at(10.0));

        // Mean recount straight from the reports.
        double sum = 0;
        for (const auto& r : snaps[i].reports) sum += *r.jif2;
        EXPECT_NEAR(s.years[i].mean_jif, sum / static_cast<double>(snaps[i].reports.size()), 1e-12);
    }
}

TEST(Distributions, IdenticalSnapshotsAreFlat) {
    InflationSnapshot a{2000, {jif_report("A", 1.0), jif_report("B", 3.0), jif_report("C", std::nullopt)}};
    InflationSnapshot b = a;
    b.year = 2001;
    const std::vector<InflationSnapshot> snaps = {a, b};
    const auto s = inflation_series(snaps, std::vector<double>{2.0});
    EXPECT_DOUBLE_EQ(s.years[0].mean_jif, 2.0);
    EXPECT_DOUBLE_EQ(s.years[1].mean_jif, 2.0);
    EXPECT_EQ(s.years[0].count_above.at(2.0), 1u);
    EXPECT_DOUBLE_EQ(s.share_increased, 0.0);
    EXPECT_THROW((void)inflation_series(std::vector<InflationSnapshot>{a}, std::vector<double>{}), Error);
}

TEST(Distributions, GrowingCitationRatesInflateMeanJif) {
    ScenarioSpec spec;
    spec.seed = 33;
    spec.first_year = 2004;
    JournalSpec js;
    js.count = 30;
    js.n_papers_per_year = 100;
    js.citation_growth = 0.10;
    js.citation_distribution = CitationDistribution::lognormal_mean(20.0, 0.8);
    spec.journals.push_back(js);
    const auto r = resolve(generate(spec));
    std::vector<InflationSnapshot> snaps;
    for (Year y = 2008; y <= 2012; ++y) snaps.push_back({y, report_all(r, y)});
    const auto s = inflation_series(snaps, std::vector<double>{10.0});
    for (std::size_t i = 1; i < s.years.size(); ++i) EXPECT_GT(s.years[i].mean_jif, s.years[i - 1].mean_jif);
    EXPECT_GT(s.share_increased, 0.5);
}

TEST(Distributions, SingleJournalProfile) {
    MiniCorpus m;
    m.journal("A", "Math").journal("B", "Other");
    m.paper("a1", "A", 2015).paper("a2", "A", 2015).paper("b", "B", 2016).paper("a3", "A", 2016);
    m.cite_n("b", "a1", 3).cite("a3", "a2");
    m.raw("a1", "Some Book 2015").raw("a2", "Unknown 2015").raw("a2", "Undated monograph");
    const auto r = m.resolved();
    const auto p = discipline_profile(r, "Math", 2016);
    EXPECT_EQ(p.n_journals, 1u);
    EXPECT_EQ(p.n_papers, 2u);
    EXPECT_DOUBLE_EQ(*p.mean_jif, jif_wos_derived(tally(r, "A", 2016, 2)));
    EXPECT_DOUBLE_EQ(*p.max_jif, 2.0);
    EXPECT_DOUBLE_EQ(p.mean_refs, 1.5);
    EXPECT_DOUBLE_EQ(p.mean_refs_to_indexed, 0.0);
    EXPECT_DOUBLE_EQ(*p.mean_ref_age, 0.0);
    EXPECT_DOUBLE_EQ(p.ref_year_coverage, 2.0 / 3.0);
    EXPECT_THROW((void)discipline_profile(r, "Nothing", 2016), Error);
}

TEST(Distributions, DisciplineFixtureReproducesRows) {
    const auto r = resolve(fixture_disciplines());
    for (const auto& t : discipline_targets()) {
        const auto p = discipline_profile(r, t.discipline, 2016);
        EXPECT_EQ(format_decimal(*p.mean_jif, 3), format_decimal(t.mean_jif, 3)) << t.discipline;
        EXPECT_EQ(format_decimal(*p.max_jif, 2), format_decimal(t.max_jif, 2)) << t.discipline;
        EXPECT_EQ(format_decimal(p.mean_refs, 2), format_decimal(t.mean_refs, 2)) << t.discipline;
        EXPECT_EQ(format_decimal(p.mean_refs_to_indexed, 2), format_decimal(t.mean_refs_to_indexed, 2)) << t.discipline;
        EXPECT_EQ(format_decimal(*p.mean_ref_age, 2), format_decimal(t.mean_ref_age, 2)) << t.discipline;
    }
    const auto math = discipline_profile(r, "Mathematics", 2016);
    EXPECT_EQ(format_decimal(math.mean_refs, 2), "26.56");
    EXPECT_EQ(format_decimal(*math.mean_ref_age, 2), "16.65");
}

TEST(Distributions, DisciplineProfileMatchesOracle) {
    for (std::uint64_t seed = 300; seed < 308; ++seed) {
        const auto corpus = generate(oracle::random_scenario(seed, 700));
        const auto r = resolve(corpus);
        const auto targets = oracle::classify(corpus);
        const Year census = corpus.year_range().max_year;
        std::set<std::string> disciplines;
        for (const auto& j : corpus.journals()) disciplines.insert(j.discipline);
        for (const auto& d : disciplines) {
            const auto got = discipline_profile(r, d, census);
            const auto want = oracle::discipline_profile(corpus, targets, d, census);
            EXPECT_EQ(got.n_journals, want.n_journals);
            EXPECT_EQ(got.n_papers, want.n_papers);
            ASSERT_EQ(got.mean_jif.has_value(), want.mean_jif.has_value());
            if (got.mean_jif) {
                EXPECT_NEAR(*got.mean_jif, *want.mean_jif, 1e-12);
            }
            if (got.max_jif) {
                EXPECT_NEAR(*got.max_jif, *want.max_jif, 1e-12);
            }
            EXPECT_NEAR(got.mean_refs, want.mean_refs, 1e-12);
            EXPECT_NEAR(got.mean_refs_to_indexed, want.mean_refs_to_indexed, 1e-12);
            ASSERT_EQ(got.mean_ref_age.has_value(), want.mean_ref_age.has_value());
            if (got.mean_ref_age) {
                EXPECT_NEAR(*got.mean_ref_age, *want.mean_ref_age, 1e-12);
            }
        }
    }
}

TEST(Distributions, Correlation) {
    const std::vector<double> xs = {1, 2, 3, 4, 5};
    const std::vector<double> twice = {2, 4, 6, 8, 10};
    const std::vector<double> neg = {-1, -2, -3, -4, -5};
    auto c = correlate(xs, twice);
    EXPECT_NEAR(c.pearson_r, 1.0, 1e-12);
    EXPECT_NEAR(c.r_squared, 1.0, 1e-12);
    EXPECT_NEAR(correlate(xs, neg).pearson_r, -1.0, 1e-12);
    EXPECT_THROW((void)correlate(std::vector<double>{1, 2}, std::vector<double>{1, 2}), Error);
}

TEST(Distributions, JifTracksSymmetricIfAcrossSyntheticJournals) {
    ScenarioSpec spec;
    spec.seed = 61;
    spec.first_year = 2010;
    for (double mean : {1.0, 3.0, 8.0, 20.0}) {
        JournalSpec js;
        js.count = 25;
        js.n_papers_per_year = 20;
        js.citation_distribution = CitationDistribution::lognormal_mean(mean, 1.0);
        spec.journals.push_back(js);
    }
    const auto r = resolve(generate(spec));
    std::vector<double> jif, sym;
    for (const auto& rep : report_all(r, 2016)) {
        if (!rep.jif_wos_derived) continue;
        jif.push_back(*rep.jif_wos_derived);
        sym.push_back(*rep.symmetric_if);
    }
    const auto c = correlate(jif, sym);
    EXPECT_GE(c.r_squared, 0.9);
    const double r_oracle = oracle::pearson(jif, sym);
    EXPECT_NEAR(c.pearson_r, r_oracle, 1e-9);
}
