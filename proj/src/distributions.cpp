#include "citemetrics/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>

#include <json.hpp>

namespace citemetrics {

DistributionSummary summarize_counts(std::string journal_id, Year census_year, std::span<const std::uint32_t> counts,
                                     double jif_value) {
    if (counts.empty()) throw Error(ErrorKind::EmptyWindow, "no citable items for " + journal_id);
    DistributionSummary s;
    s.journal_id = std::move(journal_id);
    s.census_year = census_year;
    s.jif_value = jif_value;
    s.n_papers = counts.size();
    std::uint64_t total = 0;
    std::uint64_t at_or_above = 0;
    for (auto c : counts) {
        ++s.histogram[c];
        total += c;
        if (static_cast<double>(c) >= jif_value) ++at_or_above;
    }
    s.mean = static_cast<double>(total) / static_cast<double>(counts.size());
    s.median = median_of(std::vector<std::uint32_t>(counts.begin(), counts.end()));
    s.share_at_or_above_jif = static_cast<double>(at_or_above) / static_cast<double>(counts.size());
    return s;
}

DistributionSummary distribution(const ResolvedCorpus& resolved, std::string_view journal_id, Year census_year,
                                 int window_years, double jif_value) {
    const auto counts = per_paper_citations(resolved, journal_id, census_year, window_years);
    return summarize_counts(std::string(journal_id), census_year, counts, jif_value);
}

std::size_t share_bucket(double share) {
    // Shares are ratios of small integers; the nudge keeps 0.30 * 20 out of bucket 5.
    const double scaled = std::floor(share * 100.0 / ShareHistogram::kBucketWidthPct + 1e-9);
    if (scaled < 0) return 0;
    return std::min<std::size_t>(static_cast<std::size_t>(scaled), 19);
}

double ShareHistogram::fraction_in(int lo_pct, int hi_pct) const {
    if (n_journals == 0) return 0.0;
    std::uint64_t n = 0;
    for (std::size_t k = 0; k < buckets.size(); ++k) {
        const int lo = static_cast<int>(k) * kBucketWidthPct;
        if (lo >= lo_pct && lo + kBucketWidthPct <= hi_pct) n += buckets[k];
    }
    return static_cast<double>(n) / static_cast<double>(n_journals);
}

ShareHistogram jcr_share_histogram(std::span<const DistributionSummary> summaries) {
    ShareHistogram h;
    std::uint64_t half = 0;
    for (const auto& s : summaries) {
        ++h.buckets[share_bucket(s.share_at_or_above_jif)];
        if (s.share_at_or_above_jif >= 0.5) ++half;
    }
    h.n_journals = summaries.size();
    h.fraction_at_least_half = h.n_journals ? static_cast<double>(half) / static_cast<double>(h.n_journals) : 0.0;
    return h;
}

namespace {

std::vector<bool> discipline_mask(const Corpus& corpus, std::string_view discipline) {
    std::vector<bool> mask(corpus.journals().size(), false);
    for (std::size_t j = 0; j < mask.size(); ++j) mask[j] = corpus.journals()[j].discipline == discipline;
    return mask;
}

}  // namespace

CohortCurve cohort_curve(const ResolvedCorpus& resolved, std::string_view discipline, Year pub_year, int horizon_years) {
    if (horizon_years < 0) throw Error(ErrorKind::InvalidArgument, "horizon must be >= 0");
    const auto& corpus = resolved.corpus();
    const auto mask = discipline_mask(corpus, discipline);

    bool has_papers = false;
    for (std::size_t j = 0; j < mask.size() && !has_papers; ++j) {
        if (!mask[j]) continue;
        for (PaperIndex p : resolved.papers_of(static_cast<JournalIndex>(j))) {
            if (corpus.papers()[p].pub_year == pub_year) {
                has_papers = true;
                break;
            }
        }
    }
    if (!has_papers) {
        throw Error(ErrorKind::EmptyCohort,
                    "no papers of discipline '" + std::string(discipline) + "' in " + std::to_string(pub_year));
    }

    CohortCurve c;
    c.label = std::string(discipline);
    c.pub_year = pub_year;
    c.per_year_citations.assign(static_cast<std::size_t>(horizon_years) + 1, 0);
    std::uint64_t ages_one_two = 0;
    const auto& classes = resolved.classifications();
    for (std::size_t r = 0; r < classes.size(); ++r) {
        const auto& cl = classes[r];
        if (!cl.has_target() || cl.cited_year != pub_year || !mask[cl.journal]) continue;
        const int age = resolved.citing_year(r) - pub_year;
        if (age < 0) continue;
        ++c.total_citations;
        if (age == 1 || age == 2) ++ages_one_two;
        if (age > horizon_years) ++c.beyond_horizon;
        else ++c.per_year_citations[static_cast<std::size_t>(age)];
    }
    c.truncated = c.beyond_horizon > 0;
    c.cumulative_fraction.assign(c.per_year_citations.size(), 0.0);
    if (c.total_citations > 0) {
        std::uint64_t running = 0;
        const double total = static_cast<double>(c.total_citations);
        for (std::size_t k = 0; k < c.per_year_citations.size(); ++k) {
            running += c.per_year_citations[k];
            c.cumulative_fraction[k] = static_cast<double>(running) / total;
            if (!c.years_to_half && 2 * running >= c.total_citations) c.years_to_half = static_cast<int>(k);
        }
        c.first_two_year_share = static_cast<double>(ages_one_two) / total;
    }
    return c;
}

InflationSeries inflation_series(std::span<const InflationSnapshot> snapshots, std::span<const double> thresholds) {
    if (snapshots.size() < 2) throw Error(ErrorKind::InvalidArgument, "need at least two snapshots");
    InflationSeries s;

    std::map<std::string, std::size_t> slot;
    for (const auto& snap : snapshots) {
        for (const auto& rep : snap.reports) {
            slot.emplace(rep.journal_id, 0);
        }
    }
    std::size_t k = 0;
    for (auto& [id, idx] : slot) {
        idx = k++;
        JournalTrajectory t;
        t.journal_id = id;
        t.jif.assign(snapshots.size(), std::nullopt);
        t.rank_percentile.assign(snapshots.size(), std::nullopt);
        s.journals.push_back(std::move(t));
    }

    for (std::size_t si = 0; si < snapshots.size(); ++si) {
        const auto& snap = snapshots[si];
        InflationYear y;
        y.year = snap.year;
        for (double t : thresholds) y.count_above[t] = 0;
        double sum = 0.0;
        std::vector<double> values;
        for (const auto& rep : snap.reports) {
            if (!rep.jif2) continue;
            const double v = *rep.jif2;
            values.push_back(v);
            sum += v;
            for (double t : thresholds) {
                if (v > t) ++y.count_above[t];
            }
            s.journals[slot[rep.journal_id]].jif[si] = v;
        }
        y.journal_count = values.size();
        y.mean_jif = values.empty() ? 0.0 : sum / static_cast<double>(values.size());
        std::sort(values.begin(), values.end());
        for (auto& traj : s.journals) {
            if (!traj.jif[si]) continue;
            const auto at_or_below = std::upper_bound(values.begin(), values.end(), *traj.jif[si]) - values.begin();
            traj.rank_percentile[si] = static_cast<double>(at_or_below) / static_cast<double>(values.size());
        }
        s.years.push_back(std::move(y));
    }

    std::size_t both = 0;
    std::size_t rose = 0;
    for (const auto& traj : s.journals) {
        if (!traj.jif.front() || !traj.jif.back()) continue;
        ++both;
        if (*traj.jif.back() > *traj.jif.front()) ++rose;
    }
    s.share_increased = both ? static_cast<double>(rose) / static_cast<double>(both) : 0.0;
    return s;
}

DisciplineProfile discipline_profile(const ResolvedCorpus& resolved, std::string_view discipline, Year census_year) {
    const auto& corpus = resolved.corpus();
    const auto mask = discipline_mask(corpus, discipline);
    if (std::none_of(mask.begin(), mask.end(), [](bool b) { return b; })) {
        throw Error(ErrorKind::EmptyDiscipline, "no journals in discipline '" + std::string(discipline) + "'");
    }

    DisciplineProfile prof;
    prof.discipline = std::string(discipline);
    prof.census_year = census_year;

    const auto tallies = tally_all(resolved, census_year, 2);
    double jif_sum = 0.0;
    std::size_t jif_n = 0;
    for (std::size_t j = 0; j < mask.size(); ++j) {
        if (!mask[j]) continue;
        ++prof.n_journals;
        if (tallies[j].n_citable_items == 0) continue;
        const double v = jif_wos_derived(tallies[j]);
        jif_sum += v;
        ++jif_n;
        prof.max_jif = prof.max_jif ? std::max(*prof.max_jif, v) : v;
    }
    if (jif_n > 0) prof.mean_jif = jif_sum / static_cast<double>(jif_n);

    const CitationWindow w{census_year, 2};
    const auto& papers = corpus.papers();
    const auto& classes = resolved.classifications();
    std::uint64_t refs = 0;
    std::uint64_t indexed = 0;
    std::uint64_t dated = 0;
    std::int64_t age_sum = 0;
    for (std::size_t j = 0; j < mask.size(); ++j) {
        if (!mask[j]) continue;
        for (PaperIndex p : resolved.papers_of(static_cast<JournalIndex>(j))) {
            if (!w.contains(papers[p].pub_year)) continue;
            ++prof.n_papers;
            for (auto r : resolved.references_of(p)) {
                ++refs;
                if (classes[r].has_target()) ++indexed;
                if (auto y = resolved.reference_year(r)) {
                    ++dated;
                    age_sum += papers[p].pub_year - *y;
                }
            }
        }
    }
    if (prof.n_papers > 0) {
        prof.mean_refs = static_cast<double>(refs) / static_cast<double>(prof.n_papers);
        prof.mean_refs_to_indexed = static_cast<double>(indexed) / static_cast<double>(prof.n_papers);
    }
    if (dated > 0) prof.mean_ref_age = static_cast<double>(age_sum) / static_cast<double>(dated);
    prof.ref_year_coverage = refs ? static_cast<double>(dated) / static_cast<double>(refs) : 0.0;
    return prof;
}

Correlation correlate(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size() || xs.size() < 3) {
        throw Error(ErrorKind::DegenerateInput, "need two equally long series of at least three values");
    }
    const double n = static_cast<double>(xs.size());
    const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
    const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
    double sxx = 0.0;
    double syy = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double dx = xs[i] - mx;
        const double dy = ys[i] - my;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if (sxx == 0.0 || syy == 0.0) throw Error(ErrorKind::DegenerateInput, "zero variance");
    Correlation c;
    c.pearson_r = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
    c.r_squared = c.pearson_r * c.pearson_r;
    return c;
}

void write_distribution_csv(const DistributionSummary& s, std::ostream& out) {
    out << "citations,paper_count\n";
    for (const auto& [c, n] : s.histogram) out << c << ',' << n << '\n';
}

void write_distribution_json(const DistributionSummary& s, std::ostream& out) {
    nlohmann::ordered_json o;
    o["journal_id"] = s.journal_id;
    o["census_year"] = s.census_year;
    nlohmann::ordered_json hist = nlohmann::ordered_json::object();
    for (const auto& [c, n] : s.histogram) hist[std::to_string(c)] = n;
    o["histogram"] = hist;
    o["mean"] = s.mean;
    o["median"] = s.median;
    o["jif_value"] = s.jif_value;
    o["share_at_or_above_jif"] = s.share_at_or_above_jif;
    o["n_papers"] = s.n_papers;
    out << o.dump(2) << '\n';
}

void write_share_histogram_csv(const ShareHistogram& h, std::ostream& out) {
    out << "bucket_lo_pct,bucket_hi_pct,journals,fraction\n";
    for (std::size_t k = 0; k < h.buckets.size(); ++k) {
        const int lo = static_cast<int>(k) * ShareHistogram::kBucketWidthPct;
        const double frac = h.n_journals ? static_cast<double>(h.buckets[k]) / static_cast<double>(h.n_journals) : 0.0;
        out << lo << ',' << lo + ShareHistogram::kBucketWidthPct << ',' << h.buckets[k] << ','
            << format_decimal(frac, 4) << '\n';
    }
}

void write_cohort_csv(const CohortCurve& c, std::ostream& out) {
    out << "years_since_publication,citations,cumulative_fraction,truncated\n";
    for (std::size_t k = 0; k < c.per_year_citations.size(); ++k) {
        out << k << ',' << c.per_year_citations[k] << ',' << format_decimal(c.cumulative_fraction[k], 6) << ','
            << (c.truncated ? "true" : "false") << '\n';
    }
}

void write_cohort_json(const CohortCurve& c, std::ostream& out) {
    nlohmann::ordered_json o;
    o["label"] = c.label;
    o["pub_year"] = c.pub_year;
    o["per_year_citations"] = c.per_year_citations;
    o["cumulative_fraction"] = c.cumulative_fraction;
    o["total_citations"] = c.total_citations;
    o["beyond_horizon"] = c.beyond_horizon;
    o["truncated"] = c.truncated;
    o["first_two_year_share"] = c.first_two_year_share;
    o["years_to_half"] = c.years_to_half ? nlohmann::ordered_json(*c.years_to_half) : nlohmann::ordered_json(nullptr);
    out << o.dump(2) << '\n';
}

void write_inflation_csv(const InflationSeries& s, std::ostream& out) {
    out << "year,mean_jif,journal_count";
    if (!s.years.empty()) {
        for (const auto& [t, n] : s.years.front().count_above) out << ",above_" << format_decimal(t, 3);
    }
    out << '\n';
    for (const auto& y : s.years) {
        out << y.year << ',' << format_decimal(y.mean_jif, 3) << ',' << y.journal_count;
        for (const auto& [t, n] : y.count_above) out << ',' << n;
        out << '\n';
    }
}

void write_discipline_profiles_csv(std::span<const DisciplineProfile> profiles, std::ostream& out) {
    out << "discipline,census_year,n_journals,n_papers,mean_jif,max_jif,mean_refs,mean_refs_to_indexed,mean_ref_age,"
           "ref_year_coverage\n";
    auto cell = [](const std::optional<double>& v, int d) { return v ? format_decimal(*v, d) : std::string(); };
    for (const auto& p : profiles) {
        out << p.discipline << ',' << p.census_year << ',' << p.n_journals << ',' << p.n_papers << ','
            << cell(p.mean_jif, 3) << ',' << cell(p.max_jif, 3) << ',' << format_decimal(p.mean_refs, 2) << ','
            << format_decimal(p.mean_refs_to_indexed, 2) << ',' << cell(p.mean_ref_age, 2) << ','
            << format_decimal(p.ref_year_coverage, 4) << '\n';
    }
}

}  // namespace citemetrics
